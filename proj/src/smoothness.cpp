#include "bjortho/smoothness.hpp"

#include "bjortho/linalg.hpp"
#include "bjortho/rng.hpp"
#include "bjortho/vector_bj.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bjortho {

SmoothnessReport operator_smooth(const Matrix& T, double tol) {
  require(T.rows() > 0 && T.cols() > 0, "operator_smooth: matrix must be non-empty");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0,
          "operator_smooth: tolerance must be in (0, 1)");
  require_finite(T, "operator_smooth");

  const SingularDecomposition svd = singular_values(T);
  const double sigma1 = svd.values(0);
  require(sigma1 > 0.0, "operator_smooth: zero operator");
  const double sigma2 = svd.values.size() > 1 ? svd.values(1) : 0.0;

  SmoothnessReport out;
  out.sigma1 = sigma1;
  out.sigma2 = sigma2;
  out.gap = (sigma1 - sigma2) / sigma1;
  out.smooth = (sigma1 - sigma2) > tol * sigma1;
  // The sup off the top direction equals sigma2; computed independently from
  // the projector so the report is self-checking.
  const Vector v1 = svd.right_vectors.col(0);
  out.hyperplane_sup = hyperplane_sup(T, v1);
  if (out.smooth) {
    out.x0 = v1;
  } else {
    out.witness_pair = nonsmooth_witness(T, tol);
  }
  return out;
}

WitnessPair nonsmooth_witness(const Matrix& T, double tol) {
  require(T.rows() > 0 && T.cols() > 0, "nonsmooth_witness: matrix must be non-empty");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0,
          "nonsmooth_witness: tolerance must be in (0, 1)");
  require_finite(T, "nonsmooth_witness");

  const SingularDecomposition svd = singular_values(T);
  const double sigma1 = svd.values(0);
  require(sigma1 > 0.0, "nonsmooth_witness: zero operator");
  require(svd.values.size() > 1 && svd.values(1) >= sigma1 * (1.0 - tol),
          "nonsmooth_witness: top singular value is simple; no witness pair exists");

  // x1, x2 in index order for determinism. A1 kills every direction but x1
  // and reproduces T there; A2 is the remainder. Orthogonality of T to each
  // half is witnessed by the other's norming vector.
  const Vector x1 = svd.right_vectors.col(0);
  WitnessPair out;
  out.a1 = (T * x1) * x1.transpose();
  out.a2 = T - out.a1;
  return out;
}

double hyperplane_sup(const Matrix& T, const Vector& x0) {
  require(T.rows() > 0 && T.cols() > 0, "hyperplane_sup: matrix must be non-empty");
  require(x0.size() == T.cols(), "hyperplane_sup: x0 length must match columns of T");
  require_finite(T, "hyperplane_sup");
  require_finite(x0, "hyperplane_sup");
  require(std::abs(x0.norm() - 1.0) <= 1e-8, "hyperplane_sup: x0 must be a unit vector");

  const Eigen::Index n = T.cols();
  const Matrix projector = Matrix::Identity(n, n) - x0 * x0.transpose();
  return spectral_norm(T * projector);
}

namespace {

double sign_of(double v) { return (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// A norm-attaining dual vector of y in l_p: u with u . y = ||y||_p and dual
// norm 1. Used as the ascent direction for maximizing ||Tx||_p.
Vector dual_vector(const Vector& y, const PNorm& p) {
  const Eigen::Index m = y.size();
  Vector u = Vector::Zero(m);
  if (p.is_inf()) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < m; ++i) {
      if (std::abs(y(i)) > std::abs(y(best))) best = i;
    }
    u(best) = sign_of(y(best));
    return u;
  }
  if (p.is_one()) {
    for (Eigen::Index i = 0; i < m; ++i) u(i) = sign_of(y(i));
    return u;
  }
  const double ny = p_norm(y, p);
  const double pv = p.value();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (y(i) != 0.0) {
      u(i) = sign_of(y(i)) * std::pow(std::abs(y(i)) / ny, pv - 1.0);
    }
  }
  return u;
}

// One maximizer candidate: nonlinear power iteration x -> T^T u / ||T^T u||
// with u the dual vector of Tx. Each step cannot decrease ||Tx||_p, so the
// iteration climbs to a local maximum of the induced-norm objective.
Vector ascend(const Matrix& T, const PNorm& p, Vector x) {
  constexpr int kMaxIters = 200;
  double value = p_norm(T * x, p);
  for (int it = 0; it < kMaxIters; ++it) {
    const Vector y = T * x;
    if (p_norm(y, p) < 1e-300) break;  // landed in the kernel; keep x as-is
    const Vector g = T.transpose() * dual_vector(y, p);
    const double gn = g.norm();
    if (gn < 1e-300) break;
    const Vector next = g / gn;
    const double next_value = p_norm(T * next, p);
    if (next_value <= value * (1.0 + 1e-15) &&
        std::min((next - x).norm(), (next + x).norm()) < 1e-13) {
      x = next;
      break;
    }
    x = next;
    value = next_value;
  }
  return x;
}

// Canonical sign: largest-magnitude entry (lowest index on ties) positive.
Vector canonical_sign(Vector v) {
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
  }
  if (v(pivot) < 0.0) v = -v;
  return v;
}

}  // namespace

CompactSmoothness compact_smooth_conditions(const Matrix& T, const PNorm& target_p,
                                            double tol, std::uint64_t seed,
                                            int starts) {
  require(T.rows() > 0 && T.cols() > 0,
          "compact_smooth_conditions: matrix must be non-empty");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0,
          "compact_smooth_conditions: tolerance must be in (0, 1)");
  require(starts > 0, "compact_smooth_conditions: starts must be positive");
  require_finite(T, "compact_smooth_conditions");

  CompactSmoothness out;

  if (target_p.is_two()) {
    // Euclidean target: the norming vector is the top right singular vector,
    // unique up to sign exactly when sigma1 is simple.
    const SingularDecomposition svd = singular_values(T);
    const double sigma1 = svd.values(0);
    require(sigma1 > 0.0, "compact_smooth_conditions: zero operator");
    const double sigma2 = svd.values.size() > 1 ? svd.values(1) : 0.0;
    out.unique_norming = (sigma1 - sigma2) > tol * sigma1;
    out.norming_vector = svd.right_vectors.col(0);
    out.attained_norm = sigma1;
    out.clusters = out.unique_norming ? 1 : 2;
  } else {
    // General target: multi-start ascent over the Euclidean sphere. Finishers
    // within a near-best band are folded over sign and clustered by
    // direction; a single cluster is the uniqueness verdict.
    Rng rng(seed);
    std::vector<Vector> finishers;
    std::vector<double> values;
    finishers.reserve(static_cast<std::size_t>(starts));
    double best = 0.0;
    for (int s = 0; s < starts; ++s) {
      const Vector x = ascend(T, target_p, random_unit_vector(rng, T.cols()));
      const double value = p_norm(T * x, target_p);
      finishers.push_back(canonical_sign(x));
      values.push_back(value);
      best = std::max(best, value);
    }
    require(best > 0.0, "compact_smooth_conditions: zero operator");

    const double near_band = std::max(10.0 * tol, 1e-8) * best;
    std::vector<Vector> representatives;
    int best_rep = -1;
    for (std::size_t i = 0; i < finishers.size(); ++i) {
      if (values[i] < best - near_band) continue;
      bool merged = false;
      for (const Vector& rep : representatives) {
        if (std::abs(finishers[i].dot(rep)) > 1.0 - 1e-6) {
          merged = true;
          break;
        }
      }
      if (!merged) representatives.push_back(finishers[i]);
      if (best_rep < 0 && values[i] >= best) best_rep = static_cast<int>(i);
    }
    out.clusters = static_cast<int>(representatives.size());
    out.unique_norming = out.clusters == 1;
    out.norming_vector = finishers[static_cast<std::size_t>(best_rep)];
    out.attained_norm = best;
  }

  out.image_smooth =
      vector_smooth(T * out.norming_vector, target_p, tol).smooth;
  out.smooth = out.unique_norming && out.image_smooth;
  return out;
}

}  // namespace bjortho
