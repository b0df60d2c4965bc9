#include "CLI11.hpp"

#include "bjortho/harness.hpp"
#include "bjortho/linalg.hpp"
#include "bjortho/matrix_io.hpp"
#include "bjortho/operator_bj.hpp"
#include "bjortho/pnorm.hpp"
#include "bjortho/smoothness.hpp"
#include "bjortho/types.hpp"
#include "bjortho/vector_bj.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using bjortho::InvalidInput;
using bjortho::Matrix;
using bjortho::NumericalFailure;
using bjortho::PNorm;
using bjortho::Vector;
using nlohmann::ordered_json;

// Tolerance default: BJORTHO_TOL from the environment when set, else 1e-9.
// An explicit --tol always wins because CLI11 only overwrites on a match.
double default_tol() {
  const char* env = std::getenv("BJORTHO_TOL");
  if (env == nullptr) return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
    throw InvalidInput("BJORTHO_TOL must be a positive number, got '" +
                       std::string(env) + "'");
  }
  return v;
}

std::string scalar_to_csv(const ordered_json& j) {
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    return buf;
  }
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  if (j.is_string()) return j.get<std::string>();
  return "null";
}

void flatten_csv(const ordered_json& j, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
      flatten_csv(it.value(), path, rows);
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& e : j) {
      flatten_csv(e, prefix + "." + std::to_string(i), rows);
      ++i;
    }
  } else {
    rows.emplace_back(prefix, scalar_to_csv(j));
  }
}

void emit(const ordered_json& j, const std::string& format) {
  if (format == "csv") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten_csv(j, "", rows);
    for (const auto& [key, value] : rows) std::cout << key << "," << value << "\n";
  } else {
    std::cout << bjortho::dump_json(j);
  }
}

ordered_json verdict_to_json(const bjortho::BjVerdict& v) {
  ordered_json j;
  j["orthogonal"] = v.orthogonal;
  j["method"] = bjortho::to_string(v.method);
  j["lambda_min"] = v.lambda_min;
  j["norm_min"] = v.norm_min;
  j["witness"] = v.witness.has_value() ? bjortho::vector_to_json(*v.witness)
                                       : ordered_json(nullptr);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality and operator smoothness toolkit"};
  app.require_subcommand(1);

  try {
    const double tol_default = default_tol();
    std::string format = "json";
    double tol = tol_default;
    std::string p_str = "2";
    std::uint64_t seed = 0;
    int trials = 100;
    int max_dim = 8;
    int starts = 64;
    std::string input_path, left_path, right_path, x_path, y_path, x0_path;
    std::string suite, example_name, target_p_str;
    int example_n = 5;
    bool force_oracle = false;
    ordered_json out;

    const auto add_common = [&](CLI::App* sub) {
      sub->add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
      sub->add_option("--tol", tol, "Decision tolerance (env BJORTHO_TOL overrides the default)")
          ->capture_default_str();
    };

    // norm: induced operator norm of one matrix.
    auto* norm_cmd = app.add_subcommand("norm", "Operator norm of a matrix (p in {1, 2, inf})");
    norm_cmd->add_option("--input", input_path, "Matrix file (JSON or CSV)")->required();
    norm_cmd->add_option("--p", p_str, "Norm selector")->capture_default_str();
    add_common(norm_cmd);
    norm_cmd->callback([&] {
      const Matrix T = bjortho::load_matrix(input_path);
      const PNorm p = PNorm::parse(p_str);
      out["p"] = p.str();
      out["norm"] = bjortho::operator_norm(T, p);
    });

    // mt: norm-attaining set.
    auto* mt_cmd = app.add_subcommand("mt", "Norm-attaining set of a matrix");
    mt_cmd->add_option("--input", input_path, "Matrix file")->required();
    add_common(mt_cmd);
    mt_cmd->callback([&] {
      const auto mt = bjortho::norm_attaining_set(bjortho::load_matrix(input_path), tol);
      out["sigma1"] = mt.sigma1;
      out["sigma_out"] = mt.sigma_out;
      out["multiplicity"] = mt.multiplicity;
      out["tol_used"] = mt.tol_used;
      out["basis"] = bjortho::matrix_to_json(mt.basis);
    });

    // bj: operator orthogonality.
    auto* bj_cmd = app.add_subcommand("bj", "Is T Birkhoff-James orthogonal to A?");
    bj_cmd->add_option("--left", left_path, "Matrix file for T")->required();
    bj_cmd->add_option("--right", right_path, "Matrix file for A")->required();
    bj_cmd->add_option("--p", p_str, "Operator norm selector")->capture_default_str();
    bj_cmd->add_flag("--oracle", force_oracle, "Force the minimization oracle");
    add_common(bj_cmd);
    bj_cmd->callback([&] {
      const Matrix T = bjortho::load_matrix(left_path);
      const Matrix A = bjortho::load_matrix(right_path);
      const PNorm p = PNorm::parse(p_str);
      const bjortho::BjVerdict v = (!force_oracle && p.is_two())
                                       ? bjortho::bj_operator_spectral(T, A, tol)
                                       : bjortho::bj_operator_oracle(T, A, p, tol);
      out = verdict_to_json(v);
    });

    // bj-vector: vector orthogonality.
    auto* bjv_cmd = app.add_subcommand("bj-vector", "Is x Birkhoff-James orthogonal to y in l_p?");
    bjv_cmd->add_option("--x", x_path, "Vector file for x")->required();
    bjv_cmd->add_option("--y", y_path, "Vector file for y")->required();
    bjv_cmd->add_option("--p", p_str, "Vector norm exponent (1 <= p <= inf)")->capture_default_str();
    add_common(bjv_cmd);
    bjv_cmd->callback([&] {
      const auto v = bjortho::bj_vector(bjortho::load_vector(x_path),
                                        bjortho::load_vector(y_path),
                                        PNorm::parse(p_str), tol);
      out["orthogonal"] = v.orthogonal;
      out["d_minus"] = v.d_minus;
      out["d_plus"] = v.d_plus;
      out["lambda_min"] = v.lambda_min;
      out["norm_min"] = v.norm_min;
    });

    // smooth: smoothness classification.
    auto* smooth_cmd = app.add_subcommand(
        "smooth", "Smooth-point classification of an operator");
    smooth_cmd->add_option("--input", input_path, "Matrix file")->required();
    smooth_cmd->add_option("--target-p", target_p_str,
                           "Classify as a map into l_p instead (compact-operator conditions)");
    smooth_cmd->add_option("--starts", starts, "Multi-start count for the norming search")
        ->capture_default_str();
    smooth_cmd->add_option("--seed", seed, "Seed for the norming search")->capture_default_str();
    add_common(smooth_cmd);
    smooth_cmd->callback([&] {
      const Matrix T = bjortho::load_matrix(input_path);
      if (!target_p_str.empty()) {
        const auto rep = bjortho::compact_smooth_conditions(
            T, PNorm::parse(target_p_str), tol, seed, starts);
        out["smooth"] = rep.smooth;
        out["unique_norming"] = rep.unique_norming;
        out["image_smooth"] = rep.image_smooth;
        out["attained_norm"] = rep.attained_norm;
        out["clusters"] = rep.clusters;
        out["norming_vector"] = bjortho::vector_to_json(rep.norming_vector);
        return;
      }
      const auto rep = bjortho::operator_smooth(T, tol);
      out["smooth"] = rep.smooth;
      out["sigma1"] = rep.sigma1;
      out["sigma2"] = rep.sigma2;
      out["gap"] = rep.gap;
      out["hyperplane_sup"] = rep.hyperplane_sup;
      out["x0"] = rep.x0.has_value() ? bjortho::vector_to_json(*rep.x0)
                                     : ordered_json(nullptr);
      if (rep.witness_pair.has_value()) {
        out["witness_a1"] = bjortho::matrix_to_json(rep.witness_pair->a1);
        out["witness_a2"] = bjortho::matrix_to_json(rep.witness_pair->a2);
      }
    });

    // witness: constructive right-additivity violation.
    auto* witness_cmd = app.add_subcommand(
        "witness", "Witness pair (A1, A2) for an operator with a repeated top singular value");
    witness_cmd->add_option("--input", input_path, "Matrix file")->required();
    add_common(witness_cmd);
    witness_cmd->callback([&] {
      const auto wp = bjortho::nonsmooth_witness(bjortho::load_matrix(input_path), tol);
      out["a1"] = bjortho::matrix_to_json(wp.a1);
      out["a2"] = bjortho::matrix_to_json(wp.a2);
    });

    // descent: norm-decreasing multiple.
    auto* descent_cmd = app.add_subcommand(
        "descent", "Descent certificate: a lambda0 with ||T + lambda0*A|| < ||T||");
    descent_cmd->add_option("--left", left_path, "Matrix file for T")->required();
    descent_cmd->add_option("--right", right_path, "Matrix file for A")->required();
    descent_cmd->add_option("--seed", seed, "Seed for norm-attaining-set sampling")
        ->capture_default_str();
    add_common(descent_cmd);
    descent_cmd->callback([&] {
      const auto cert = bjortho::descent_lambda(bjortho::load_matrix(left_path),
                                                bjortho::load_matrix(right_path), tol, seed);
      out["found"] = cert.has_value();
      if (cert.has_value()) {
        out["lambda0"] = cert->lambda0;
        out["operator_norm_after"] = cert->operator_norm_after;
        out["max_over_mt"] = cert->max_over_mt;
      }
    });

    // hyperplane-sup: norm off a given direction.
    auto* hs_cmd = app.add_subcommand(
        "hyperplane-sup", "Sup of ||Ty|| over unit y orthogonal to x0");
    hs_cmd->add_option("--input", input_path, "Matrix file for T")->required();
    hs_cmd->add_option("--x0", x0_path, "Vector file for the unit direction x0")->required();
    add_common(hs_cmd);
    hs_cmd->callback([&] {
      out["hyperplane_sup"] = bjortho::hyperplane_sup(bjortho::load_matrix(input_path),
                                                      bjortho::load_vector(x0_path));
    });

    // example: built-in closed-form families.
    auto* example_cmd = app.add_subcommand("example", "Built-in example families");
    example_cmd->add_option("--name", example_name, "Example name (supported: 2.5)")->required();
    example_cmd->add_option("--n", example_n, "Truncation dimension")->capture_default_str();
    add_common(example_cmd);
    example_cmd->callback([&] {
      if (example_name != "2.5") {
        throw InvalidInput("unknown example '" + example_name + "' (supported: 2.5)");
      }
      const auto ex = bjortho::example_2_5(example_n, tol);
      out["name"] = example_name;
      out["n"] = example_n;
      out["gap"] = ex.gap;
      out["lambda_star"] = ex.lambda_star;
      out["norm_min"] = ex.norm_min;
      out["orthogonal"] = ex.orthogonal;
    });

    // verify: randomized suites.
    auto* verify_cmd = app.add_subcommand("verify", "Run a randomized verification suite");
    std::string suites_help = "Suite name (";
    for (const auto& name : bjortho::suite_names()) suites_help += name + ", ";
    suites_help.replace(suites_help.size() - 2, 2, ")");
    verify_cmd->add_option("--suite", suite, suites_help)->required();
    verify_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--trials", trials, "Trial count")->capture_default_str();
    verify_cmd->add_option("--max-dim", max_dim, "Largest matrix dimension")
        ->capture_default_str();
    add_common(verify_cmd);
    verify_cmd->callback([&] {
      out = bjortho::to_json(bjortho::run_suite(suite, seed, trials, max_dim, tol));
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }

    emit(out, format);
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
