#pragma once

#include "bjortho/types.hpp"

#include <limits>
#include <string>

namespace bjortho {

// Exponent of an l_p norm, p in [1, inf]. The sup norm is carried as
// +infinity; construction rejects anything below 1 rather than clamping.
class PNorm {
 public:
  explicit PNorm(double p) : p_(p) {
    require(p >= 1.0, "PNorm: p must satisfy p >= 1 (got " + std::to_string(p) + ")");
  }

  static PNorm one() { return PNorm(1.0); }
  static PNorm two() { return PNorm(2.0); }
  static PNorm inf() { return PNorm(std::numeric_limits<double>::infinity()); }

  // Accepts "1", "2", "1.5", "inf", "Inf", "infinity".
  static PNorm parse(const std::string& text);

  double value() const { return p_; }
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }
  bool is_inf() const { return std::isinf(p_); }

  // q with 1/p + 1/q = 1.
  double dual_exponent() const {
    if (is_one()) return std::numeric_limits<double>::infinity();
    if (is_inf()) return 1.0;
    return p_ / (p_ - 1.0);
  }

  std::string str() const;

 private:
  double p_;
};

// ||x||_p, computed with the max factored out so large exponents stay stable.
double p_norm(const Vector& x, const PNorm& p);

}  // namespace bjortho
