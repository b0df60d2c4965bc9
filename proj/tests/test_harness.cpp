#include "doctest.h"

#include "bjortho/harness.hpp"
#include "bjortho/matrix_io.hpp"
#include "bjortho/types.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace {

using bjortho::Matrix;

nlohmann::ordered_json canonical_report(bjortho::VerificationReport report) {
  report.runtime_seconds = 0.0;
  return bjortho::to_json(report);
}

}  // namespace

TEST_CASE("diagonal shift family reproduces its closed form") {
  SUBCASE("n = 2") {
    const auto ex = bjortho::example_2_5(2);
    CHECK(ex.gap == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(ex.lambda_star == doctest::Approx(0.25).epsilon(1e-4));
    CHECK(ex.norm_min == doctest::Approx(0.75).epsilon(1e-6));
    CHECK_FALSE(ex.orthogonal);
    CHECK(ex.T(0, 0) == -1.0);
    CHECK(ex.T(1, 1) == 0.5);
    CHECK((ex.A - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("n = 5") {
    const auto ex = bjortho::example_2_5(5);
    CHECK(ex.gap == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(ex.lambda_star == doctest::Approx(0.1).epsilon(1e-3));
    CHECK_FALSE(ex.orthogonal);
    CHECK(ex.T(4, 4) == doctest::Approx(0.8));
  }

  SUBCASE("n = 50") {
    const auto ex = bjortho::example_2_5(50);
    CHECK(ex.gap == doctest::Approx(0.01).epsilon(1e-4));
    CHECK_FALSE(ex.orthogonal);
  }

  SUBCASE("gap decreases towards orthogonality in the limit") {
    double last = 1.0;
    for (const int n : {2, 4, 8, 16, 32}) {
      const double gap = bjortho::example_2_5(n).gap;
      CHECK(gap < last);
      last = gap;
    }
  }

  SUBCASE("n below 2 is rejected") {
    CHECK_THROWS_AS(bjortho::example_2_5(1), bjortho::InvalidInput);
    CHECK_THROWS_AS(bjortho::example_2_5(0), bjortho::InvalidInput);
  }
}

TEST_CASE("verification suites run clean on random inputs") {
  for (const auto& name : bjortho::suite_names()) {
    CAPTURE(name);
    const auto report = bjortho::run_suite(name, 20260813, 40, 6, 1e-7);
    CHECK(report.suite == name);
    CHECK(report.trials == 40);
    CHECK(report.agreements == 40);
    CHECK(report.disagreements.empty());
    CHECK(report.agreements + static_cast<int>(report.disagreements.size()) ==
          report.trials);
    CHECK(report.runtime_seconds >= 0.0);
  }
}

TEST_CASE("reports are deterministic given the seed") {
  const auto a = bjortho::run_suite("oracle-equivalence", 42, 25, 6, 1e-7);
  const auto b = bjortho::run_suite("oracle-equivalence", 42, 25, 6, 1e-7);
  CHECK(bjortho::dump_json(canonical_report(a)) == bjortho::dump_json(canonical_report(b)));
}

TEST_CASE("report serialization follows the versioned schema") {
  const auto report = bjortho::run_suite("adjoint", 7, 10, 5, 1e-7);
  const auto j = bjortho::to_json(report);
  CHECK(j.at("schema") == "bjortho.report/1");
  CHECK(j.at("suite") == "adjoint");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("trials") == 10);
  CHECK(j.at("agreements") == 10);
  CHECK(j.at("disagreements").is_array());
  CHECK(j.at("runtime_seconds").is_number());
}

TEST_CASE("suite argument validation") {
  CHECK_THROWS_AS(bjortho::run_suite("no-such-suite", 1, 10, 6, 1e-7),
                  bjortho::InvalidInput);
  CHECK_THROWS_AS(bjortho::run_suite("adjoint", 1, 0, 6, 1e-7), bjortho::InvalidInput);
  CHECK_THROWS_AS(bjortho::run_suite("adjoint", 1, 10, 1, 1e-7), bjortho::InvalidInput);
  CHECK_THROWS_AS(bjortho::run_suite("adjoint", 1, 10, 6, 0.0), bjortho::InvalidInput);
}

TEST_CASE("disagreement records replay from their embedded inputs") {
  // An engineered genuine disagreement between the two deciders: the
  // quadratic form on H0 is slightly negative (fails the spectral sign test
  // at tol = 1e-6) while the achievable norm decrease is only ~7.5e-7
  // relatively, inside the oracle's tolerance band.
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = 0.5;
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = -1.5e-6;
  a(1, 1) = 1.0;

  nlohmann::ordered_json record;
  record["suite"] = "oracle-equivalence";
  record["trial"] = 0;
  record["tol"] = 1e-6;
  record["T"] = bjortho::matrix_to_json(t);
  record["A"] = bjortho::matrix_to_json(a);
  record["spectral"] = false;
  record["oracle"] = true;

  SUBCASE("faithful record replays") {
    CHECK(bjortho::replay_disagreement(record));
  }

  SUBCASE("tampered outcome fails to replay") {
    record["oracle"] = false;
    CHECK_FALSE(bjortho::replay_disagreement(record));
  }

  SUBCASE("agreeing inputs fail to replay") {
    record["A"] = bjortho::matrix_to_json(Matrix::Identity(2, 2));
    record["spectral"] = false;
    record["oracle"] = false;
    CHECK_FALSE(bjortho::replay_disagreement(record));
  }

  SUBCASE("unknown suite is rejected") {
    record["suite"] = "bogus";
    CHECK_THROWS_AS(bjortho::replay_disagreement(record), bjortho::InvalidInput);
  }
}
