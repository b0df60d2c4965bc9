#include "bjortho/harness.hpp"

#include "bjortho/linalg.hpp"
#include "bjortho/matrix_io.hpp"
#include "bjortho/operator_bj.hpp"
#include "bjortho/pnorm.hpp"
#include "bjortho/rng.hpp"
#include "bjortho/smoothness.hpp"
#include "bjortho/vector_bj.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

namespace bjortho {

namespace {

using nlohmann::ordered_json;

// Test operator: dense uniform [-1, 1) entries, or an engineered spectrum
// with the top singular value repeated (multiplicity two) so that degenerate
// branches are exercised on a fixed fraction of trials.
Matrix random_operator(Rng& rng, Eigen::Index n, bool degenerate) {
  if (!degenerate) {
    Matrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) M(i, j) = rng.symmetric(1.0);
    }
    return M;
  }
  Vector sigma(n);
  const double top = rng.uniform(0.5, 2.0);
  sigma(0) = top;
  if (n > 1) sigma(1) = top;
  for (Eigen::Index i = 2; i < n; ++i) sigma(i) = rng.uniform(0.0, 0.9 * top);
  return random_with_spectrum(rng, sigma);
}

// Rank-one correction that zeroes the quadratic form <Tw, (.)w> at a given
// unit w in the norm-attaining set: the resulting operator is orthogonal to
// T with witness w.
Matrix make_orthogonal_to(const Matrix& T, const Matrix& seed_op, const Vector& w,
                          double sigma1) {
  const Vector tw = T * w;
  const double coeff = tw.dot(seed_op * w) / (sigma1 * sigma1);
  return seed_op - coeff * tw * w.transpose();
}

struct TrialOutcome {
  bool agree = true;
  ordered_json record;  // filled only when !agree
};

ordered_json base_record(const std::string& suite, int trial, double tol) {
  ordered_json r;
  r["suite"] = suite;
  r["trial"] = trial;
  r["tol"] = tol;
  return r;
}

// ---- per-suite evaluations on explicit inputs (reused by replay) ----

std::pair<bool, bool> eval_oracle_equivalence(const Matrix& T, const Matrix& A,
                                              double tol) {
  const bool spectral = bj_operator_spectral(T, A, tol).orthogonal;
  const bool oracle = bj_operator_oracle(T, A, PNorm::two(), tol).orthogonal;
  return {spectral, oracle};
}

std::pair<bool, bool> eval_vector_derivative(const Vector& x, const Vector& y,
                                             const PNorm& p, double tol) {
  const VectorBjVerdict v = bj_vector(x, y, p, tol);
  const bool oracle = v.norm_min >= p_norm(x, p) * (1.0 - tol);
  return {v.orthogonal, oracle};
}

bool eval_witness_validity(const Matrix& T, const Matrix& A, double tol,
                           ordered_json* details) {
  const BjVerdict v = bj_operator_spectral(T, A, tol);
  const double sigma1 = norm_attaining_set(T, tol).sigma1;
  bool ok = v.orthogonal && v.witness.has_value();
  double norm_dev = 0.0;
  double attain_dev = 0.0;
  double form_residual = 0.0;
  if (ok) {
    const Vector& w = *v.witness;
    norm_dev = std::abs(w.norm() - 1.0);
    attain_dev = std::abs((T * w).norm() - sigma1) / sigma1;
    form_residual = std::abs((T * w).dot(A * w)) / (sigma1 * spectral_norm(A));
    ok = norm_dev <= 1e-9 && attain_dev <= 1e-7 && form_residual <= 1e-7;
  }
  if (details) {
    (*details)["orthogonal"] = v.orthogonal;
    (*details)["witness_norm_dev"] = norm_dev;
    (*details)["norm_attain_dev"] = attain_dev;
    (*details)["form_residual"] = form_residual;
  }
  return ok;
}

bool eval_smooth_additivity(const Matrix& T, const Matrix& A1, const Matrix& A2,
                            double tol) {
  if (!bj_operator_spectral(T, A1, tol).orthogonal) return false;
  if (!bj_operator_spectral(T, A2, tol).orthogonal) return false;
  return bj_operator_spectral(T, A1 + A2, tol).orthogonal;
}

bool eval_nonsmooth_violation(const Matrix& T, double tol) {
  const SmoothnessReport rep = operator_smooth(T, tol);
  if (rep.smooth || !rep.witness_pair.has_value()) return false;
  const WitnessPair& wp = *rep.witness_pair;
  if (!bj_operator_oracle(T, wp.a1, PNorm::two(), tol).orthogonal) return false;
  if (!bj_operator_oracle(T, wp.a2, PNorm::two(), tol).orthogonal) return false;
  // The sum is T itself: a full multiple of it erases the norm, so the
  // orthogonality of the parts cannot extend to the sum.
  return !bj_operator_oracle(T, wp.a1 + wp.a2, PNorm::two(), tol).orthogonal;
}

bool eval_descent(const Matrix& T, const Matrix& A, double tol,
                  std::uint64_t sample_seed, ordered_json* details) {
  const BjVerdict v = bj_operator_spectral(T, A, tol);
  const auto cert = descent_lambda(T, A, tol, sample_seed);
  bool ok;
  if (v.orthogonal) {
    ok = !cert.has_value();
  } else {
    const double sigma1 = norm_attaining_set(T, tol).sigma1;
    ok = cert.has_value() && cert->lambda0 != 0.0 &&
         cert->operator_norm_after < sigma1 && cert->max_over_mt < sigma1;
    if (details && cert.has_value()) {
      (*details)["lambda0"] = cert->lambda0;
      (*details)["operator_norm_after"] = cert->operator_norm_after;
      (*details)["max_over_mt"] = cert->max_over_mt;
      (*details)["sigma1"] = sigma1;
    }
  }
  if (details) (*details)["orthogonal"] = v.orthogonal;
  return ok;
}

bool eval_mt_correctness(const Matrix& T, const Vector& probe, double tol,
                         ordered_json* details) {
  const NormAttainingSet mt = norm_attaining_set(T, tol);
  const Eigen::Index k = mt.basis.cols();
  const double defect =
      (mt.basis.transpose() * mt.basis - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  double col_dev = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    col_dev = std::max(col_dev,
                       std::abs((T * mt.basis.col(j)).norm() - mt.sigma1) / mt.sigma1);
  }
  double out_excess = 0.0;
  if (k < T.cols()) {
    // Fold the probe into the orthogonal complement of H0 and compare
    // against the advertised sup outside the norm-attaining set.
    Vector y = probe - mt.basis * (mt.basis.transpose() * probe);
    y /= y.norm();
    out_excess = (T * y).norm() - mt.sigma_out;
  }
  if (details) {
    (*details)["orthonormality_defect"] = defect;
    (*details)["column_norm_dev"] = col_dev;
    (*details)["outside_excess"] = out_excess;
  }
  return defect <= 1e-9 && col_dev <= 1e-9 && out_excess <= 1e-9;
}

const std::array<const char*, 5> kVectorPs = {"1", "1.5", "2", "3", "inf"};

}  // namespace

Example25 example_2_5(int n, double tol) {
  require(n >= 2, "example_2_5: n must be at least 2");
  require(std::isfinite(tol) && tol > 0.0, "example_2_5: tolerance must be positive");

  Example25 out;
  out.T = Matrix::Zero(n, n);
  out.T(0, 0) = -1.0;
  for (int k = 2; k <= n; ++k) {
    out.T(k - 1, k - 1) = 1.0 - 1.0 / static_cast<double>(k);
  }
  out.A = Matrix::Identity(n, n);

  const BjVerdict v = bj_operator_oracle(out.T, out.A, PNorm::two(), tol);
  out.orthogonal = v.orthogonal;
  out.lambda_star = v.lambda_min;
  out.norm_min = v.norm_min;
  out.gap = spectral_norm(out.T) - v.norm_min;
  return out;
}

std::vector<std::string> suite_names() {
  return {"oracle-equivalence", "adjoint",  "witness-validity",
          "smoothness-additivity", "vector-derivative", "descent",
          "mt-correctness"};
}

ordered_json to_json(const VerificationReport& report) {
  ordered_json j;
  j["schema"] = "bjortho.report/1";
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["agreements"] = report.agreements;
  ordered_json records = ordered_json::array();
  for (const auto& r : report.disagreements) records.push_back(r);
  j["disagreements"] = std::move(records);
  j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed,
                             int trials, int max_dim, double tol) {
  const auto names = suite_names();
  require(std::find(names.begin(), names.end(), name) != names.end(),
          "run_suite: unknown suite '" + name + "'");
  require(trials > 0, "run_suite: trials must be positive");
  require(max_dim >= 2 && max_dim <= 64, "run_suite: max dimension must be in [2, 64]");
  require(std::isfinite(tol) && tol > 0.0 && tol < 1.0,
          "run_suite: tolerance must be in (0, 1)");

  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);
  VerificationReport report;
  report.suite = name;
  report.seed = seed;
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    const Eigen::Index n = 2 + t % (max_dim - 1);
    const bool degenerate = (t % 5) == 0;
    TrialOutcome outcome;

    if (name == "oracle-equivalence") {
      const Matrix T = random_operator(rng, n, degenerate);
      const Matrix A = random_operator(rng, n, false);
      const auto [spectral, oracle] = eval_oracle_equivalence(T, A, tol);
      outcome.agree = spectral == oracle;
      if (!outcome.agree) {
        outcome.record = base_record(name, t, tol);
        outcome.record["T"] = matrix_to_json(T);
        outcome.record["A"] = matrix_to_json(A);
        outcome.record["spectral"] = spectral;
        outcome.record["oracle"] = oracle;
      }
    } else if (name == "adjoint") {
      const Matrix T = random_operator(rng, n, degenerate);
      const Matrix A = random_operator(rng, n, false);
      const auto [direct, transposed] = adjoint_invariance(T, A, tol);
      outcome.agree = direct == transposed;
      if (!outcome.agree) {
        outcome.record = base_record(name, t, tol);
        outcome.record["T"] = matrix_to_json(T);
        outcome.record["A"] = matrix_to_json(A);
        outcome.record["direct"] = direct;
        outcome.record["transposed"] = transposed;
      }
    } else if (name == "witness-validity") {
      const Matrix T = random_operator(rng, n, degenerate);
      const NormAttainingSet mt = norm_attaining_set(T, tol);
      const Vector w = mt.basis * random_unit_vector(rng, mt.multiplicity);
      const Matrix A =
          make_orthogonal_to(T, random_operator(rng, n, false), w, mt.sigma1);
      ordered_json details = base_record(name, t, tol);
      outcome.agree = eval_witness_validity(T, A, tol, &details);
      if (!outcome.agree) {
        details["T"] = matrix_to_json(T);
        details["A"] = matrix_to_json(A);
        outcome.record = std::move(details);
      }
    } else if (name == "smoothness-additivity") {
      if (t % 2 == 0) {
        // Smooth branch: enforce a clear top gap, then build two operators
        // orthogonal to T through the same witness direction.
        Vector sigma(n);
        sigma(0) = rng.uniform(1.2, 2.0);
        for (Eigen::Index i = 1; i < n; ++i) sigma(i) = rng.uniform(0.0, 0.9 * sigma(0));
        const Matrix T = random_with_spectrum(rng, sigma);
        const SmoothnessReport rep = operator_smooth(T, tol);
        const Matrix seed1 = random_operator(rng, n, false);
        const Matrix seed2 = random_operator(rng, n, false);
        if (!rep.smooth || !rep.x0.has_value()) {
          outcome.agree = false;
          outcome.record = base_record(name, t, tol);
          outcome.record["branch"] = "smooth";
          outcome.record["T"] = matrix_to_json(T);
          outcome.record["classified_smooth"] = rep.smooth;
        } else {
          const Matrix A1 = make_orthogonal_to(T, seed1, *rep.x0, rep.sigma1);
          const Matrix A2 = make_orthogonal_to(T, seed2, *rep.x0, rep.sigma1);
          outcome.agree = eval_smooth_additivity(T, A1, A2, tol);
          if (!outcome.agree) {
            outcome.record = base_record(name, t, tol);
            outcome.record["branch"] = "smooth";
            outcome.record["T"] = matrix_to_json(T);
            outcome.record["A1"] = matrix_to_json(A1);
            outcome.record["A2"] = matrix_to_json(A2);
          }
        }
      } else {
        const Matrix T = random_operator(rng, n, true);
        outcome.agree = eval_nonsmooth_violation(T, tol);
        if (!outcome.agree) {
          outcome.record = base_record(name, t, tol);
          outcome.record["branch"] = "degenerate";
          outcome.record["T"] = matrix_to_json(T);
        }
      }
    } else if (name == "vector-derivative") {
      const PNorm p = PNorm::parse(kVectorPs[static_cast<std::size_t>(t % 5)]);
      Vector x = random_vector(rng, n);
      const Vector y = random_vector(rng, n);
      if (degenerate) {
        // Engineered kink: a zero coordinate for p=1-style tests, a tied
        // maximum for the sup norm, so the one-sided branches get exercised.
        if (p.is_inf() && n > 1) {
          Eigen::Index top = 0;
          for (Eigen::Index i = 1; i < n; ++i) {
            if (std::abs(x(i)) > std::abs(x(top))) top = i;
          }
          const Eigen::Index other = top == 0 ? 1 : 0;
          x(other) = x(other) >= 0.0 ? std::abs(x(top)) : -std::abs(x(top));
        } else {
          x(static_cast<Eigen::Index>(t) % n) = 0.0;
        }
      }
      if (p_norm(x, p) == 0.0) x(0) = 1.0;  // keep the trial well-posed
      const auto [derivative, oracle] = eval_vector_derivative(x, y, p, tol);
      outcome.agree = derivative == oracle;
      if (!outcome.agree) {
        outcome.record = base_record(name, t, tol);
        outcome.record["x"] = vector_to_json(x);
        outcome.record["y"] = vector_to_json(y);
        outcome.record["p"] = p.str();
        outcome.record["derivative"] = derivative;
        outcome.record["oracle"] = oracle;
      }
    } else if (name == "descent") {
      const Matrix T = random_operator(rng, n, degenerate);
      const Matrix A = random_operator(rng, n, false);
      const std::uint64_t sample_seed = seed * 1000003u + static_cast<std::uint64_t>(t);
      ordered_json details = base_record(name, t, tol);
      outcome.agree = eval_descent(T, A, tol, sample_seed, &details);
      if (!outcome.agree) {
        details["T"] = matrix_to_json(T);
        details["A"] = matrix_to_json(A);
        details["sample_seed"] = sample_seed;
        outcome.record = std::move(details);
      }
    } else {  // mt-correctness
      const Matrix T = random_operator(rng, n, degenerate);
      const Vector probe = random_unit_vector(rng, n);
      ordered_json details = base_record(name, t, tol);
      outcome.agree = eval_mt_correctness(T, probe, tol, &details);
      if (!outcome.agree) {
        details["T"] = matrix_to_json(T);
        details["probe"] = vector_to_json(probe);
        outcome.record = std::move(details);
      }
    }

    if (outcome.agree) {
      ++report.agreements;
    } else {
      report.disagreements.push_back(std::move(outcome.record));
    }
  }

  const auto finish = std::chrono::steady_clock::now();
  report.runtime_seconds = std::chrono::duration<double>(finish - start).count();
  return report;
}

bool replay_disagreement(const nlohmann::json& record) {
  require(record.is_object() && record.contains("suite") && record.contains("tol"),
          "replay_disagreement: record must carry \"suite\" and \"tol\"");
  const std::string suite = record.at("suite").get<std::string>();
  const double tol = record.at("tol").get<double>();

  if (suite == "oracle-equivalence") {
    const Matrix T = matrix_from_json(record.at("T"));
    const Matrix A = matrix_from_json(record.at("A"));
    const auto [spectral, oracle] = eval_oracle_equivalence(T, A, tol);
    return spectral == record.at("spectral").get<bool>() &&
           oracle == record.at("oracle").get<bool>() && spectral != oracle;
  }
  if (suite == "adjoint") {
    const Matrix T = matrix_from_json(record.at("T"));
    const Matrix A = matrix_from_json(record.at("A"));
    const auto [direct, transposed] = adjoint_invariance(T, A, tol);
    return direct == record.at("direct").get<bool>() &&
           transposed == record.at("transposed").get<bool>() && direct != transposed;
  }
  if (suite == "vector-derivative") {
    const Vector x = vector_from_json(record.at("x"));
    const Vector y = vector_from_json(record.at("y"));
    const PNorm p = PNorm::parse(record.at("p").get<std::string>());
    const auto [derivative, oracle] = eval_vector_derivative(x, y, p, tol);
    return derivative == record.at("derivative").get<bool>() &&
           oracle == record.at("oracle").get<bool>() && derivative != oracle;
  }
  if (suite == "witness-validity") {
    return !eval_witness_validity(matrix_from_json(record.at("T")),
                                  matrix_from_json(record.at("A")), tol, nullptr);
  }
  if (suite == "smoothness-additivity") {
    const Matrix T = matrix_from_json(record.at("T"));
    if (record.at("branch").get<std::string>() == "degenerate") {
      return !eval_nonsmooth_violation(T, tol);
    }
    if (!record.contains("A1")) {
      return !operator_smooth(T, tol).smooth;  // misclassification record
    }
    return !eval_smooth_additivity(T, matrix_from_json(record.at("A1")),
                                   matrix_from_json(record.at("A2")), tol);
  }
  if (suite == "descent") {
    return !eval_descent(matrix_from_json(record.at("T")),
                         matrix_from_json(record.at("A")), tol,
                         record.at("sample_seed").get<std::uint64_t>(), nullptr);
  }
  if (suite == "mt-correctness") {
    return !eval_mt_correctness(matrix_from_json(record.at("T")),
                                vector_from_json(record.at("probe")), tol, nullptr);
  }
  throw InvalidInput("replay_disagreement: unknown suite '" + suite + "'");
}

}  // namespace bjortho
