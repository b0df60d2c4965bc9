#pragma once

#include "bjortho/pnorm.hpp"
#include "bjortho/types.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace bjortho {

// Two operators that sum back to T and are each orthogonal to T while their
// sum is not: a constructive violation of right-additivity at T.
struct WitnessPair {
  Matrix a1;  // (T x1) x1^T, rank one, built from the first top singular vector
  Matrix a2;  // T - a1, entrywise; reconstruction is exact by construction
};

// Classification of T as a point of the operator-norm space. T is smooth
// exactly when its top singular value is simple (at relative tolerance tol):
// then the norming vector x0 is unique up to sign and the norm of T off the
// x0 line stays strictly below sigma1.
struct SmoothnessReport {
  bool smooth = false;
  double sigma1 = 0.0;
  double sigma2 = 0.0;           // 0 when T has a single column
  double gap = 0.0;              // (sigma1 - sigma2) / sigma1, the relative gap
  std::optional<Vector> x0;      // unit top right singular vector; present when smooth
  double hyperplane_sup = 0.0;   // sup of ||Ty|| over unit y orthogonal to the top vector
  std::optional<WitnessPair> witness_pair;  // present when not smooth
};

// Verdict on the two sufficiency conditions for smoothness of a compact
// operator from Euclidean space into l_p^m: (a) the norming vector on the
// Euclidean sphere is unique up to sign, and (b) the image T x0 is a smooth
// point of l_p^m. The conjunction is the smoothness verdict.
struct CompactSmoothness {
  bool smooth = false;          // unique_norming && image_smooth
  bool unique_norming = false;  // condition (a)
  bool image_smooth = false;    // condition (b)
  Vector norming_vector;        // best maximizer of ||Tx||_p found
  double attained_norm = 0.0;   // ||T norming_vector||_p, the induced norm estimate
  int clusters = 0;             // sign-folded direction clusters among top finishers
};

// Classifies T at relative gap tolerance tol. When smooth, reports the
// norming vector and the hyperplane sup (= sigma2); when not smooth, attaches
// the constructive witness pair from nonsmooth_witness. Throws InvalidInput
// for the zero operator.
SmoothnessReport operator_smooth(const Matrix& T, double tol = 1e-9);

// For T whose top singular value has multiplicity >= 2 at tolerance tol
// (orthonormal top right singular vectors x1, x2): A1 = (T x1) x1^T and
// A2 = T - A1. T is orthogonal to A1 (witness x2) and to A2 (witness x1),
// yet not orthogonal to A1 + A2 = T itself. Throws InvalidInput when the
// top singular value is simple.
WitnessPair nonsmooth_witness(const Matrix& T, double tol = 1e-9);

// sup of ||Ty||_2 over unit y orthogonal to x0, computed exactly as the
// spectral norm of T restricted to the complement: ||T (I - x0 x0^T)||_2.
// x0 must be unit within 1e-8.
double hyperplane_sup(const Matrix& T, const Vector& x0);

// Evaluates the compact-operator smoothness conditions for T: l_2 -> l_p.
// For p = 2 uniqueness is read off the singular value gap; for other p the
// norming vector is searched by multi-start ascent on the Euclidean sphere
// (deterministic in seed; a heuristic probe, not a certificate).
CompactSmoothness compact_smooth_conditions(const Matrix& T, const PNorm& target_p,
                                            double tol = 1e-9,
                                            std::uint64_t seed = 0,
                                            int starts = 64);

}  // namespace bjortho
