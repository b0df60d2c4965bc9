#include "doctest.h"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed binary through the shell, capturing stdout. A non-empty
// env prefix (e.g. "BJORTHO_TOL=0.5") is prepended as a shell assignment.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd;
  if (!env_prefix.empty()) cmd += env_prefix + " ";
  cmd += std::string(BJORTHO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  RunResult result;
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Fixture files live in a per-process temp directory, created on first use.
const std::string& fixture_dir() {
  static const std::string dir = [] {
    const auto path = std::filesystem::temp_directory_path() /
                      ("bjortho_cli_fixtures_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
    return path.string();
  }();
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& content) {
  const std::string path = fixture_dir() + "/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

const std::string& diag_1_half() {
  static const std::string path =
      write_fixture("t_diag_1_half.json", R"({"rows": 2, "cols": 2, "data": [[1, 0], [0, 0.5]]})");
  return path;
}

const std::string& diag_0_1() {
  static const std::string path =
      write_fixture("a_diag_0_1.json", R"({"rows": 2, "cols": 2, "data": [[0, 0], [0, 1]]})");
  return path;
}

}  // namespace

TEST_CASE("cli: operator norms across the three exponents") {
  const std::string t = write_fixture("norm_input.csv", "1, -2\n3, 4\n");
  const auto def = run_cli("norm --input " + t);
  REQUIRE(def.exit_code == 0);
  const auto j = nlohmann::json::parse(def.output);
  CHECK(j.at("p") == "2");
  // sigma1^2 of [[1,-2],[3,4]] solves s^4 - 30 s^2 + 100 = 0.
  CHECK(j.at("norm").get<double>() ==
        doctest::Approx(std::sqrt(15.0 + std::sqrt(125.0))).epsilon(1e-12));

  const auto inf = run_cli("norm --input " + t + " --p inf");
  REQUIRE(inf.exit_code == 0);
  CHECK(nlohmann::json::parse(inf.output).at("norm").get<double>() == doctest::Approx(7.0));

  const auto one = run_cli("norm --input " + t + " --p 1");
  REQUIRE(one.exit_code == 0);
  CHECK(nlohmann::json::parse(one.output).at("norm").get<double>() == doctest::Approx(6.0));
}

TEST_CASE("cli: norm-attaining set and tolerance precedence") {
  const std::string t =
      write_fixture("mt_input.json", R"({"rows": 2, "cols": 2, "data": [[2, 0], [0, 1.5]]})");

  const auto strict = run_cli("mt --input " + t);
  REQUIRE(strict.exit_code == 0);
  CHECK(nlohmann::json::parse(strict.output).at("multiplicity") == 1);

  // The environment default widens the band enough to merge both values...
  const auto env = run_cli("mt --input " + t, "BJORTHO_TOL=0.5");
  REQUIRE(env.exit_code == 0);
  CHECK(nlohmann::json::parse(env.output).at("multiplicity") == 2);

  // ...but an explicit flag always wins over the environment.
  const auto flag = run_cli("mt --input " + t + " --tol 1e-9", "BJORTHO_TOL=0.5");
  REQUIRE(flag.exit_code == 0);
  CHECK(nlohmann::json::parse(flag.output).at("multiplicity") == 1);

  const auto bad_env = run_cli("mt --input " + t, "BJORTHO_TOL=banana");
  CHECK(bad_env.exit_code == 2);
}

TEST_CASE("cli: operator orthogonality verdicts") {
  const auto res = run_cli("bj --left " + diag_1_half() + " --right " + diag_0_1());
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("orthogonal") == true);
  CHECK(j.at("method") == "spectral-test");
  REQUIRE(j.at("witness").is_array());
  CHECK(j.at("witness")[0].get<double>() == doctest::Approx(1.0));
  CHECK(j.at("witness")[1].get<double>() == doctest::Approx(0.0).scale(1.0));

  const auto forced = run_cli("bj --oracle --left " + diag_1_half() + " --right " + diag_0_1());
  REQUIRE(forced.exit_code == 0);
  const auto jf = nlohmann::json::parse(forced.output);
  CHECK(jf.at("orthogonal") == true);
  CHECK(jf.at("method") == "oracle");

  // A non-orthogonal pair is still a successful computation: exit 0.
  const auto self = run_cli("bj --left " + diag_1_half() + " --right " + diag_1_half());
  REQUIRE(self.exit_code == 0);
  const auto js = nlohmann::json::parse(self.output);
  CHECK(js.at("orthogonal") == false);
  CHECK(js.at("lambda_min").get<double>() == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(js.at("witness").is_null());
}

TEST_CASE("cli: vector orthogonality") {
  const std::string x = write_fixture("x.json", "[1, 0]");
  const std::string y = write_fixture("y.json", "[0, 1]");
  const auto res = run_cli("bj-vector --x " + x + " --y " + y + " --p 2");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("orthogonal") == true);
  CHECK(j.at("norm_min").get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  const std::string ones = write_fixture("ones.csv", "1, 1\n");
  const auto par = run_cli("bj-vector --x " + ones + " --y " + ones + " --p inf");
  REQUIRE(par.exit_code == 0);
  CHECK(nlohmann::json::parse(par.output).at("orthogonal") == false);
}

TEST_CASE("cli: smoothness classification") {
  const std::string t =
      write_fixture("smooth_t.json", R"({"rows": 2, "cols": 2, "data": [[2, 0], [0, 1]]})");
  const auto res = run_cli("smooth --input " + t);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("smooth") == true);
  CHECK(j.at("sigma1").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("hyperplane_sup").get<double>() == doctest::Approx(1.0));
  CHECK_FALSE(j.contains("witness_a1"));

  const std::string eye =
      write_fixture("smooth_eye.json", R"({"rows": 2, "cols": 2, "data": [[1, 0], [0, 1]]})");
  const auto flat = run_cli("smooth --input " + eye);
  REQUIRE(flat.exit_code == 0);
  const auto jf = nlohmann::json::parse(flat.output);
  CHECK(jf.at("smooth") == false);
  CHECK(jf.at("x0").is_null());
  CHECK(jf.contains("witness_a1"));
  CHECK(jf.contains("witness_a2"));

  const auto compact = run_cli("smooth --input " + t + " --target-p inf");
  REQUIRE(compact.exit_code == 0);
  const auto jc = nlohmann::json::parse(compact.output);
  CHECK(jc.at("smooth") == true);
  CHECK(jc.at("clusters") == 1);
  CHECK(jc.at("attained_norm").get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("cli: witness pairs") {
  const std::string eye =
      write_fixture("witness_eye.json", R"({"rows": 2, "cols": 2, "data": [[1, 0], [0, 1]]})");
  const auto res = run_cli("witness --input " + eye);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("a1").at("data")[0][0].get<double>() == doctest::Approx(1.0));
  CHECK(j.at("a2").at("data")[1][1].get<double>() == doctest::Approx(1.0));

  // A simple top singular value has no witness pair: input error.
  const auto simple = run_cli("witness --input " +
                              write_fixture("witness_simple.csv", "2, 0\n0, 1\n"));
  CHECK(simple.exit_code == 2);
}

TEST_CASE("cli: descent certificates") {
  const std::string t =
      write_fixture("descent_t.json", R"({"rows": 2, "cols": 2, "data": [[-1, 0], [0, 0.5]]})");
  const std::string eye =
      write_fixture("descent_eye.json", R"({"rows": 2, "cols": 2, "data": [[1, 0], [0, 1]]})");
  const auto res = run_cli("descent --left " + t + " --right " + eye);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("found") == true);
  CHECK(j.at("lambda0").get<double>() == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(j.at("operator_norm_after").get<double>() == doctest::Approx(0.75).epsilon(1e-9));

  const auto ortho = run_cli("descent --left " + diag_1_half() + " --right " + diag_0_1());
  REQUIRE(ortho.exit_code == 0);
  CHECK(nlohmann::json::parse(ortho.output).at("found") == false);
}

TEST_CASE("cli: hyperplane supremum") {
  const std::string t =
      write_fixture("hs_t.json", R"({"rows": 2, "cols": 2, "data": [[2, 0], [0, 1]]})");
  const std::string e1 = write_fixture("hs_e1.json", "[1, 0]");
  const auto res = run_cli("hyperplane-sup --input " + t + " --x0 " + e1);
  REQUIRE(res.exit_code == 0);
  CHECK(nlohmann::json::parse(res.output).at("hyperplane_sup").get<double>() ==
        doctest::Approx(1.0));

  const std::string off = write_fixture("hs_bad.json", "[0.5, 0]");
  CHECK(run_cli("hyperplane-sup --input " + t + " --x0 " + off).exit_code == 2);
}

TEST_CASE("cli: bundled example family") {
  const auto res = run_cli("example --name 2.5 --n 5");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.output);
  CHECK(j.at("gap").get<double>() == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(j.at("lambda_star").get<double>() == doctest::Approx(0.1).epsilon(1e-3));
  CHECK(j.at("orthogonal") == false);

  CHECK(run_cli("example --name nope").exit_code == 2);
  CHECK(run_cli("example --name 2.5 --n 1").exit_code == 2);
}

TEST_CASE("cli: verification suites are reproducible end to end") {
  const std::string invocation = "verify --suite oracle-equivalence --seed 42 --trials 25 --max-dim 6";
  const auto first = run_cli(invocation);
  const auto second = run_cli(invocation);
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);

  auto ja = nlohmann::json::parse(first.output);
  auto jb = nlohmann::json::parse(second.output);
  CHECK(ja.at("schema") == "bjortho.report/1");
  CHECK(ja.at("agreements") == 25);
  CHECK(ja.at("disagreements").empty());
  // Identical up to the wall-clock field.
  ja["runtime_seconds"] = 0.0;
  jb["runtime_seconds"] = 0.0;
  CHECK(ja.dump() == jb.dump());

  CHECK(run_cli("verify --suite no-such-suite").exit_code == 2);
}

TEST_CASE("cli: output formats and argument errors") {
  const std::string t = write_fixture("fmt_t.csv", "2, 0\n0, 1\n");
  const auto csv = run_cli("norm --input " + t + " --format csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.output.find("norm,2\n") != std::string::npos);
  CHECK(csv.output.find("p,2\n") != std::string::npos);

  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);                       // missing subcommand
  CHECK(run_cli("norm").exit_code == 2);                   // missing --input
  CHECK(run_cli("norm --input /does/not/exist").exit_code == 2);
  CHECK(run_cli("norm --input " + t + " --format yaml").exit_code == 2);
  CHECK(run_cli("norm --input " + t + " --p 0.5").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);

  const std::string bad = write_fixture("fmt_bad.csv", "1, x\n");
  CHECK(run_cli("norm --input " + bad).exit_code == 2);
}
