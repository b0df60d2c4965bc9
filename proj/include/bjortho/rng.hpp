#pragma once

#include "bjortho/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <random>

namespace bjortho {

// Deterministic random source. mt19937_64 has a portable output sequence,
// but the standard <random> distributions do not, so every mapping from raw
// 64-bit draws to doubles is spelled out here. Same seed => same stream of
// numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53 random bits, the full double mantissa.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on [-scale, scale).
  double symmetric(double scale) { return uniform(-scale, scale); }

  // Standard normal via Box-Muller; one draw consumed per call pair, cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, n); n must be positive. Rejection-free modulo is
  // fine here: n is tiny relative to 2^64, bias is < n / 2^64.
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Matrix with i.i.d. standard normal entries, filled row-major so the draw
// order is part of the determinism contract.
inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      M(i, j) = rng.gaussian();
    }
  }
  return M;
}

inline Vector random_vector(Rng& rng, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

// Uniform direction on the sphere (gaussian normalized; redrawn if the
// gaussian vector is pathologically short).
inline Vector random_unit_vector(Rng& rng, Eigen::Index n) {
  for (;;) {
    Vector v = random_vector(rng, n);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

// Haar-like random orthogonal matrix: QR of a gaussian matrix with the sign
// ambiguity fixed from R's diagonal.
inline Matrix random_orthogonal(Rng& rng, Eigen::Index n) {
  const Matrix G = random_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

// Matrix with prescribed singular values: U * diag(sigma) * V^T with random
// orthogonal factors. sigma entries must be nonnegative.
inline Matrix random_with_spectrum(Rng& rng, const Vector& sigma) {
  const Eigen::Index n = sigma.size();
  const Matrix U = random_orthogonal(rng, n);
  const Matrix V = random_orthogonal(rng, n);
  return U * sigma.asDiagonal() * V.transpose();
}

}  // namespace bjortho
