#include "bjortho/linalg.hpp"

#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace bjortho {

void canonicalize_column_signs(Matrix& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > best) {
        best = a;
        pivot = i;
      }
    }
    if (V(pivot, j) < 0.0) V.col(j) = -V.col(j);
  }
}

EigenDecomposition sym_eigen(const Matrix& S, double tol) {
  require(S.rows() > 0 && S.cols() > 0, "sym_eigen: matrix must be non-empty");
  require(S.rows() == S.cols(), "sym_eigen: matrix must be square");
  require(std::isfinite(tol) && tol > 0.0, "sym_eigen: tolerance must be positive");
  require_finite(S, "sym_eigen");

  const Eigen::Index n = S.rows();
  const double scale = S.norm();  // Frobenius
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  require(asym <= tol * std::max(scale, 1e-300) || asym == 0.0,
          "sym_eigen: matrix is not symmetric within tolerance");

  // Work on the symmetrized copy so rounding asymmetry cannot bias sweeps.
  Matrix A = 0.5 * (S + S.transpose());
  Matrix V = Matrix::Identity(n, n);

  if (scale > 0.0) {
    const double stop = tol * scale;
    // Entries below stop / (2n) can be left alone: n(n-1)/2 of them together
    // contribute less than stop to the off-diagonal Frobenius mass.
    const double skip = stop / (2.0 * static_cast<double>(n));
    constexpr int kMaxSweeps = 60;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      converged = true;
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          if (std::abs(A(p, q)) <= skip) continue;
          converged = false;
          Eigen::JacobiRotation<double> rot;
          rot.makeJacobi(A, p, q);
          A.applyOnTheLeft(p, q, rot.transpose());
          A.applyOnTheRight(p, q, rot);
          V.applyOnTheRight(p, q, rot);
          A(p, q) = 0.0;  // zeroed by construction; clear rounding residue
          A(q, p) = 0.0;
        }
      }
    }
    if (!converged) {
      throw NumericalFailure("sym_eigen: Jacobi sweeps did not converge within 60 sweeps");
    }
  }

  // Sort descending; stable so equal eigenvalues keep original index order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return A(a, a) > A(b, b); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = A(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = V.col(order[static_cast<std::size_t>(j)]);
  }
  canonicalize_column_signs(out.vectors);
  out.residual =
      (S - out.vectors * out.values.asDiagonal() * out.vectors.transpose()).norm();
  return out;
}

SingularDecomposition singular_values(const Matrix& T, double tol) {
  require(T.rows() > 0 && T.cols() > 0, "singular_values: matrix must be non-empty");
  require_finite(T, "singular_values");

  Matrix gram = T.transpose() * T;
  gram = 0.5 * (gram + gram.transpose()).eval();  // exact symmetry for the eigensolver
  const EigenDecomposition eig = sym_eigen(gram, tol);

  SingularDecomposition out;
  out.values.resize(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    out.values(i) = std::sqrt(std::max(eig.values(i), 0.0));
  }
  out.right_vectors = eig.vectors;
  return out;
}

double spectral_norm(const Matrix& T) {
  return singular_values(T).values(0);
}

double operator_norm(const Matrix& T, const PNorm& p) {
  require(T.rows() > 0 && T.cols() > 0, "operator_norm: matrix must be non-empty");
  require_finite(T, "operator_norm");
  if (p.is_one()) return T.cwiseAbs().colwise().sum().maxCoeff();
  if (p.is_inf()) return T.cwiseAbs().rowwise().sum().maxCoeff();
  if (p.is_two()) return spectral_norm(T);
  throw InvalidInput("operator_norm: only p in {1, 2, inf} is supported");
}

ScalarMinimum minimize_scalar_convex(const std::function<double(double)>& f,
                                     double seed_width, double tol) {
  require(std::isfinite(seed_width) && seed_width > 0.0,
          "minimize_scalar_convex: seed width must be positive");
  require(std::isfinite(tol) && tol > 0.0,
          "minimize_scalar_convex: tolerance must be positive");

  double best_x = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  const auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw NumericalFailure("minimize_scalar_convex: function value is not finite");
    }
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
    return v;
  };

  const double f0 = eval(0.0);
  constexpr double kLambdaCap = 1e12;

  // Grow [-w, w] by doubling until both endpoint values dominate the best
  // interior value; for a convex function that traps the minimizer inside.
  double w = seed_width;
  double interior_best = f0;
  double fm = eval(-w);
  double fp = eval(w);
  while (fm < interior_best || fp < interior_best) {
    interior_best = std::min({interior_best, fm, fp});
    w *= 2.0;
    if (w > kLambdaCap) {
      throw NumericalFailure(
          "minimize_scalar_convex: no minimizer within |lambda| <= 1e12");
    }
    fm = eval(-w);
    fp = eval(w);
  }

  // Golden-section refinement.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -w;
  double b = w;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  int iterations = 0;
  while (b - a > tol) {
    // The bracket cannot shrink below spacing representable around its
    // endpoints; treat that collapse as converged rather than spinning.
    const double floor_width =
        4.0 * kEps * std::max({std::abs(a), std::abs(b), 1.0});
    if (b - a <= floor_width) break;
    if (++iterations > 500) break;  // geometric shrink makes this unreachable
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  return {best_x, best_f};
}

}  // namespace bjortho
