#pragma once

#include "bjortho/pnorm.hpp"
#include "bjortho/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace bjortho {

// The set of unit vectors on which T attains its spectral norm is the unit
// sphere of H0, the span of the right singular vectors belonging to sigma1.
// This record carries an orthonormal basis Q of H0 together with the norm
// and the sup of ||Tx|| outside H0 (the next singular value).
struct NormAttainingSet {
  Matrix basis;       // n x k, orthonormal columns spanning H0
  double sigma1 = 0;  // ||T||_2
  double sigma_out = 0;  // sup of ||Ty|| over unit y orthogonal to H0; 0 if H0 is everything
  int multiplicity = 0;  // k = dim H0 at the tolerance used
  double tol_used = 0;
};

enum class BjMethod { SpectralTest, Oracle };

std::string to_string(BjMethod method);  // "spectral-test" / "oracle"

// Orthogonality decision for operators. "Orthogonal" means no real multiple
// of A lowers the operator norm of T. The spectral test decides via the
// quadratic form x -> <Tx, Ax> on H0; the oracle decides by minimizing
// lambda -> ||T + lambda*A|| directly. Either way the minimization data is
// reported: when not orthogonal, lambda_min is a strict descent multiple.
struct BjVerdict {
  bool orthogonal = false;
  std::optional<Vector> witness;  // unit x0 in H0 with <T x0, A x0> ~ 0
  double lambda_min = 0.0;        // argmin of ||T + lambda*A||, 0 when orthogonal
  double norm_min = 0.0;          // the minimum value, ||T|| when orthogonal
  BjMethod method = BjMethod::SpectralTest;
};

// Certificate that lambda0 uniformly shrinks T on its whole norm-attaining
// set — and, in finite dimension, shrinks the operator norm itself.
struct DescentCertificate {
  double lambda0 = 0.0;            // nonzero descent multiple
  double operator_norm_after = 0;  // ||T + lambda0*A||_2 < ||T||_2
  double max_over_mt = 0;          // max of ||Tx + lambda0*Ax|| over sampled x in M_T
};

// Extracts H0 at relative tolerance tol: k is the number of singular values
// >= sigma1*(1-tol), the basis is the corresponding right singular vectors
// re-orthonormalized. Throws InvalidInput for the zero operator, whose
// norm-attaining set would be the entire sphere.
NormAttainingSet norm_attaining_set(const Matrix& T, double tol = 1e-9);

// Spectral orthogonality test: with Q spanning H0 and
// S = Q^T * (T^T A + A^T T)/2 * Q, T is orthogonal to A exactly when the
// quadratic form has both signs (or vanishes) on H0, i.e. the extreme
// eigenvalues of S straddle zero at tolerance tol * ||T|| * ||A||. When
// orthogonal, a unit witness x0 with <T x0, A x0> ~ 0 is built from the
// extreme eigenvectors in closed form; when not, the reported lambda_min and
// norm_min come from the scalar minimization.
BjVerdict bj_operator_spectral(const Matrix& T, const Matrix& A, double tol = 1e-9);

// Definition-level oracle: minimizes lambda -> ||T + lambda*A||_p with the
// convex scalar minimizer and declares orthogonality when the minimum does
// not drop below ||T||_p by more than tol relatively. Works for p in
// {1, 2, inf} and accepts a zero T (zero is orthogonal to everything).
BjVerdict bj_operator_oracle(const Matrix& T, const Matrix& A, const PNorm& p,
                             double tol = 1e-9);

// When T is not orthogonal to A, produces the descent certificate for the
// oracle's minimizing lambda0: the new operator norm and the max of
// ||Tx + lambda0*Ax|| over >= 100 sampled unit vectors of H0, both strictly
// below sigma1. Returns nothing when T is orthogonal to A.
std::optional<DescentCertificate> descent_lambda(const Matrix& T, const Matrix& A,
                                                 double tol = 1e-9,
                                                 std::uint64_t seed = 0);

// Runs the spectral test on (T, A) and on the transposed pair; the two
// verdicts agree (transpose invariance of operator orthogonality).
std::pair<bool, bool> adjoint_invariance(const Matrix& T, const Matrix& A,
                                         double tol = 1e-9);

}  // namespace bjortho
