#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace bjortho {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Bad user-supplied data: shape mismatches, non-finite entries, unsupported
// norms, zero operators where a nonzero one is required. The CLI maps this
// to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical breakdown: iteration caps exceeded, non-coercive minimands,
// non-finite intermediate values. The CLI maps this to exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

inline void require_finite(const Matrix& m, const std::string& who) {
  if (!m.allFinite()) throw InvalidInput(who + ": matrix has a non-finite entry");
}

inline void require_finite(const Vector& v, const std::string& who) {
  if (!v.allFinite()) throw InvalidInput(who + ": vector has a non-finite entry");
}

}  // namespace bjortho
