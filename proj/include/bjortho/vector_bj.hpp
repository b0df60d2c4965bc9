#pragma once

#include "bjortho/pnorm.hpp"
#include "bjortho/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bjortho {

// A norm-one functional that attains the norm of a specific vector:
// coefficients . attained_at == ||attained_at||_p and the dual-norm
// (exponent q, 1/p + 1/q = 1) of coefficients is 1.
struct SupportFunctional {
  Vector coefficients;
  Vector attained_at;
  double norm_value = 0.0;  // ||attained_at||_p

  double apply(const Vector& v) const { return coefficients.dot(v); }
};

// Decision record for "can ||x|| be lowered by adding a multiple of y?".
// The verdict comes from the one-sided derivatives of t -> ||x^ + t*y^||_p
// at t = 0 computed on the p-normalized pair (x^, y^), which makes the
// decision invariant under positive rescaling of either argument. The oracle
// fields report the actual scalar minimization on the original scale.
struct VectorBjVerdict {
  bool orthogonal = false;  // d_minus <= tol and d_plus >= -tol
  double d_minus = 0.0;     // left derivative at 0 (normalized scale)
  double d_plus = 0.0;      // right derivative at 0; equals d_minus for 1<p<inf
  double lambda_min = 0.0;  // argmin of ||x + lambda*y||_p
  double norm_min = 0.0;    // min value; never exceeds ||x||_p
};

struct VectorSmoothness {
  bool smooth = false;
  // Exactly one functional when smooth; at least two extreme norming
  // functionals otherwise (sign/active-index enumerations, capped at 8).
  std::vector<SupportFunctional> functionals;
};

// A pair certifying that orthogonality fails to add on the right at x:
// x is orthogonal to y and to z separately but not to y + z.
struct AdditivityCounterexample {
  Vector y;
  Vector z;
  double sum_norm_min = 0.0;  // min over lambda of ||x + lambda*(y+z)||_p
};

// Birkhoff–James orthogonality test for vectors in l_p^n: x is orthogonal to
// y when no real multiple of y lowers the norm of x. Decided from one-sided
// derivative formulas (closed form per p) and cross-checked by a convex
// scalar minimization recorded in the verdict.
// Throws InvalidInput on zero x or mismatched dimensions.
VectorBjVerdict bj_vector(const Vector& x, const Vector& y, const PNorm& p,
                          double tol = 1e-9);

// Smoothness of x as a point of l_p^n: smooth when the norming functional is
// unique. 1<p<inf is always smooth; p=1 requires no zero coordinates
// (relative threshold tol*||x||_1); p=inf requires a unique max-magnitude
// coordinate (within tol relatively). Non-smooth points come with at least
// two extreme norming functionals.
VectorSmoothness vector_smooth(const Vector& x, const PNorm& p, double tol = 1e-9);

// Randomized search for a right-additivity violation at x: draws random
// vectors, projects each onto the orthogonal set of x along x using an
// extreme norming functional (y = y0 - (f(y0)/||x||_p) * x gives f(y) = 0,
// hence x orthogonal to y), and tests whether some pair sums to a
// non-orthogonal direction. A hit is only reported when the scalar
// minimization confirms a strict norm decrease. Returns nothing after the
// trial budget; smooth points are expected to exhaust it.
std::optional<AdditivityCounterexample> right_additivity_probe(
    const Vector& x, const PNorm& p, int trials, std::uint64_t seed,
    double tol = 1e-9);

}  // namespace bjortho
