#pragma once

#include "bjortho/pnorm.hpp"
#include "bjortho/types.hpp"

#include <functional>

namespace bjortho {

// Flips column signs so the largest-magnitude entry of each column (lowest
// index winning ties) is positive. Makes vector bases reproducible: any
// routine returning direction vectors funnels them through this rule.
void canonicalize_column_signs(Matrix& V);

// Tolerance used where an eigen/singular decomposition is internal plumbing
// rather than a user-facing decision. Off-diagonal mass is driven below
// kSpectralTol * ||S||_F; decision tolerances sit on top of that. Chosen a
// decade above the n=64 rounding floor so sweeps cannot stall on noise.
inline constexpr double kSpectralTol = 1e-13;

struct EigenDecomposition {
  Vector values;   // sorted descending; ties keep original index order
  Matrix vectors;  // columns are unit eigenvectors, S * v_i = values[i] * v_i
  double residual; // ||S - V diag(values) V^T||_F
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps: rotations
// are applied until every off-diagonal magnitude is <= tol * ||S||_F, so the
// reconstruction residual is directly controlled by tol. Column signs are
// canonicalized (largest-magnitude entry positive) for reproducibility.
//
// Throws InvalidInput on non-square input, asymmetry beyond tol * ||S||_F,
// or non-finite entries; NumericalFailure if the sweep cap is hit.
EigenDecomposition sym_eigen(const Matrix& S, double tol = kSpectralTol);

struct SingularDecomposition {
  Vector values;        // descending, >= 0; one per column of T
  Matrix right_vectors; // columns: right singular vectors (eigenvectors of T^T T)
};

// Singular values of T through the Gram matrix T^T T: its eigenvalues map
// through the nonnegative square root and its eigenvectors are the right
// singular vectors. Squaring the condition number is acceptable at desk
// scale; see README for the caveat.
SingularDecomposition singular_values(const Matrix& T, double tol = kSpectralTol);

// sigma_1(T), the l2 -> l2 induced norm.
double spectral_norm(const Matrix& T);

// Induced operator norm for p in {1, 2, inf}: max absolute column sum,
// sigma_1, max absolute row sum. Other p values are rejected.
double operator_norm(const Matrix& T, const PNorm& p);

struct ScalarMinimum {
  double lambda;  // best argument seen
  double value;   // f(lambda); never exceeds f(0)
};

// Minimizes a convex real function of one variable. A bracket is grown by
// symmetric doubling from 0 until f at both endpoints is no smaller than the
// best interior value, then refined by golden section until the bracket
// width is <= tol (or the width collapses to machine precision). Expansion
// past |lambda| = 1e12 signals a non-coercive input and fails.
ScalarMinimum minimize_scalar_convex(const std::function<double(double)>& f,
                                     double seed_width, double tol);

// Bracket-width tolerance matched to a decision tolerance: fine enough that
// the minimizer's value error stays well below tol-scale margins.
inline double bracket_tol(double decision_tol) {
  return std::max(1e-12, 1e-3 * decision_tol);
}

}  // namespace bjortho
