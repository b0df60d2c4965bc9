#include "bjortho/operator_bj.hpp"

#include "bjortho/linalg.hpp"
#include "bjortho/rng.hpp"

#include <Eigen/QR>

#include <cmath>

namespace bjortho {

std::string to_string(BjMethod method) {
  return method == BjMethod::SpectralTest ? "spectral-test" : "oracle";
}

NormAttainingSet norm_attaining_set(const Matrix& T, double tol) {
  require(T.rows() > 0 && T.cols() > 0, "norm_attaining_set: matrix must be non-empty");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0,
          "norm_attaining_set: tolerance must be in (0, 1)");
  require_finite(T, "norm_attaining_set");

  const SingularDecomposition svd = singular_values(T);
  const double sigma1 = svd.values(0);
  require(sigma1 > 0.0,
          "norm_attaining_set: zero operator attains its norm on the whole sphere");

  const Eigen::Index total = svd.values.size();
  Eigen::Index k = 1;
  while (k < total && svd.values(k) >= sigma1 * (1.0 - tol)) ++k;

  // Re-orthonormalize the selected columns (QR of near-orthonormal input is a
  // no-op up to rounding) and canonicalize the signs, which the QR's
  // reflector conventions would otherwise scramble.
  const Matrix top = svd.right_vectors.leftCols(k);
  Eigen::HouseholderQR<Matrix> qr(top);
  Matrix Q = qr.householderQ() * Matrix::Identity(T.cols(), k);
  canonicalize_column_signs(Q);

  NormAttainingSet out;
  out.basis = Q;
  out.sigma1 = sigma1;
  out.sigma_out = k < total ? svd.values(k) : 0.0;
  out.multiplicity = static_cast<int>(k);
  out.tol_used = tol;
  return out;
}

namespace {

// Minimizes lambda -> ||T + lambda*A||_p and fills the oracle fields.
ScalarMinimum minimize_norm_along(const Matrix& T, const Matrix& A,
                                  const PNorm& p, double tol) {
  const auto f = [&](double lambda) { return operator_norm(T + lambda * A, p); };
  return minimize_scalar_convex(f, 1.0, bracket_tol(tol));
}

// Unit vector in H0 on which the quadratic form x -> <Tx, Ax> vanishes,
// given the extreme eigenpairs of the compressed form S. The mixing angle
// solves lmax*cos^2(theta) + lmin*sin^2(theta) = 0; the clamps collapse the
// formula to the correct extreme eigenvector when one side already sits at
// zero (within tolerance).
Vector rotation_witness(const Matrix& Q, const Matrix& vectors, const Vector& values) {
  const Eigen::Index last = values.size() - 1;
  const double lmax = values(0);
  const double lmin = values(last);
  // Branches rather than max() so a degenerate 0 never arrives as -0.0:
  // atan2(+0, -0) is pi, which would silently rotate the witness by 180 degrees.
  const double up = lmax > 0.0 ? std::sqrt(lmax) : 0.0;
  const double down = lmin < 0.0 ? std::sqrt(-lmin) : 0.0;
  const double theta = std::atan2(up, down);
  const Vector v = std::cos(theta) * vectors.col(0) + std::sin(theta) * vectors.col(last);
  Vector w = Q * v;
  w /= w.norm();
  return w;
}

}  // namespace

BjVerdict bj_operator_spectral(const Matrix& T, const Matrix& A, double tol) {
  require(T.rows() == A.rows() && T.cols() == A.cols(),
          "bj_operator_spectral: shapes of T and A must match");
  require_finite(A, "bj_operator_spectral");

  const NormAttainingSet mt = norm_attaining_set(T, tol);  // validates T
  const Matrix& Q = mt.basis;

  // Quadratic form <Tx, Ax> = x^T sym(T^T A) x compressed to H0.
  Matrix sym = T.transpose() * A;
  sym = 0.5 * (sym + sym.transpose()).eval();
  Matrix S = Q.transpose() * sym * Q;
  S = 0.5 * (S + S.transpose()).eval();
  const EigenDecomposition eig = sym_eigen(S);

  const double lmax = eig.values(0);
  const double lmin = eig.values(eig.values.size() - 1);
  const double scale = mt.sigma1 * spectral_norm(A);

  BjVerdict out;
  out.method = BjMethod::SpectralTest;
  out.orthogonal = (lmin <= tol * scale) && (lmax >= -tol * scale);
  if (out.orthogonal) {
    out.witness = rotation_witness(Q, eig.vectors, eig.values);
    out.lambda_min = 0.0;
    out.norm_min = mt.sigma1;
  } else {
    const ScalarMinimum m = minimize_norm_along(T, A, PNorm::two(), tol);
    out.lambda_min = m.lambda;
    out.norm_min = m.value;
  }
  return out;
}

BjVerdict bj_operator_oracle(const Matrix& T, const Matrix& A, const PNorm& p,
                             double tol) {
  require(T.rows() == A.rows() && T.cols() == A.cols(),
          "bj_operator_oracle: shapes of T and A must match");
  require(std::isfinite(tol) && tol > 0.0, "bj_operator_oracle: tolerance must be positive");
  require_finite(T, "bj_operator_oracle");
  require_finite(A, "bj_operator_oracle");

  const double norm_t = operator_norm(T, p);
  const ScalarMinimum m = minimize_norm_along(T, A, p, tol);

  BjVerdict out;
  out.method = BjMethod::Oracle;
  out.orthogonal = m.value >= norm_t * (1.0 - tol);
  out.lambda_min = out.orthogonal ? 0.0 : m.lambda;
  out.norm_min = out.orthogonal ? norm_t : m.value;
  return out;
}

std::optional<DescentCertificate> descent_lambda(const Matrix& T, const Matrix& A,
                                                 double tol, std::uint64_t seed) {
  const BjVerdict verdict = bj_operator_spectral(T, A, tol);
  if (verdict.orthogonal) return std::nullopt;

  DescentCertificate cert;
  cert.lambda0 = verdict.lambda_min;
  cert.operator_norm_after = spectral_norm(T + cert.lambda0 * A);

  const NormAttainingSet mt = norm_attaining_set(T, tol);
  const Matrix shifted = T + cert.lambda0 * A;
  constexpr int kSamples = 128;
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Vector u = random_unit_vector(rng, mt.multiplicity);
    const Vector x = mt.basis * u;
    worst = std::max(worst, (shifted * x).norm());
  }
  cert.max_over_mt = worst;
  return cert;
}

std::pair<bool, bool> adjoint_invariance(const Matrix& T, const Matrix& A, double tol) {
  const bool direct = bj_operator_spectral(T, A, tol).orthogonal;
  const bool transposed =
      bj_operator_spectral(T.transpose(), A.transpose(), tol).orthogonal;
  return {direct, transposed};
}

}  // namespace bjortho
