#pragma once

#include "bjortho/types.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bjortho {

// Truncated diagonal family T = diag(-1, 1/2, 2/3, ..., 1 - 1/n) against
// A = I: the norm of T + lambda*A dips to 1 - 1/(2n) at lambda = 1/(2n), so
// T is never orthogonal to A at finite n even though the gap vanishes as n
// grows. The struct carries the measured gap and minimizer.
struct Example25 {
  Matrix T;
  Matrix A;
  double gap = 0.0;          // ||T|| - min over lambda of ||T + lambda*A||
  double lambda_star = 0.0;  // the minimizing lambda
  double norm_min = 0.0;     // the minimum norm value
  bool orthogonal = false;   // oracle verdict; false for every finite n
};

Example25 example_2_5(int n, double tol = 1e-9);

// Result of one randomized verification suite. Disagreement records are
// self-contained JSON objects: they embed the inputs, the tolerance, and
// both computed outcomes, so replay_disagreement can reproduce them without
// the original RNG state.
struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int agreements = 0;
  std::vector<nlohmann::ordered_json> disagreements;
  double runtime_seconds = 0.0;
};

// Serialized form: {"schema": "bjortho.report/1", suite, seed, trials,
// agreements, disagreements, runtime_seconds}.
nlohmann::ordered_json to_json(const VerificationReport& report);

// The available suites:
//   oracle-equivalence    spectral test vs direct minimization, same verdict
//   adjoint               verdict invariance under transposing both operators
//   witness-validity      spectral witnesses attain the norm and kill the form
//   smoothness-additivity constructed orthogonal pairs stay orthogonal in sum
//                         at smooth points; witness pairs violate at non-smooth
//   vector-derivative     vector derivative test vs direct minimization
//   descent               non-orthogonal pairs admit a norm-decreasing multiple
//   mt-correctness        norm-attaining basis attains sigma1; complement stays
//                         below sigma_out
std::vector<std::string> suite_names();

// Runs `trials` independent randomized trials of the named suite with matrix
// dimensions cycling over 2..max_dim. Deterministic in seed; every fifth
// trial uses an engineered degenerate spectrum (repeated top singular value)
// so the multiplicity > 1 code paths are exercised.
VerificationReport run_suite(const std::string& name, std::uint64_t seed,
                             int trials, int max_dim, double tol);

// Recomputes a disagreement record's trial from its embedded inputs.
// Returns true when the recomputation reproduces the recorded outcomes and
// they still disagree.
bool replay_disagreement(const nlohmann::json& record);

}  // namespace bjortho
