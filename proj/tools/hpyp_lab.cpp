// hpyp-lab: exact coefficients, asymptotic variances, and seeded Monte Carlo
// experiments for hierarchical Pitman-Yor homozygosity.
//
// Exit codes: 0 pass, 1 experiment fail, 2 usage/config error,
// 3 internal-consistency error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpyp/selftest.hpp"
#include "hpyp/serialize.hpp"

namespace {

using nlohmann::json;

int emit(const json& j, const std::string& csv, const std::string& format) {
  if (format == "csv") {
    std::cout << csv;
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_coeffs(int m, int L, double alpha, double beta, double c,
               const std::string& format, bool override_caps) {
  hpyp::CoeffLimits limits;
  if (override_caps) {
    std::cerr << "warning: coefficient caps overridden; the A~ sum costs "
                 "~C(m+L-1,L-1)^2 C(j+L-1,L-1) per j\n";
    limits.max_m = 12;
    limits.max_L = 8;
  }
  const auto table = hpyp::coeff_table(m, L, alpha, beta, c, limits);
  return emit(json(table), hpyp::coeffs_csv(table), format);
}

int cmd_variance(int m, int L, double alpha, double beta, double c,
                 const std::string& format) {
  const auto vb = hpyp::sigma2_total(m, L, alpha, beta, c);
  return emit(json(vb), hpyp::variance_csv(vb), format);
}

int cmd_mean(int m, int L, double alpha, double beta, double theta, double c,
             const std::string& format) {
  const hpyp::Params params{alpha, c * theta, beta, theta};
  const auto mr = hpyp::ev_homozygosity_hpyp(m, L, params);
  return emit(json(mr), hpyp::mean_csv(mr), format);
}

int cmd_experiment(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config file: " << config_path << '\n';
    return 2;
  }
  hpyp::ExperimentConfig config;
  try {
    json j = json::parse(in);
    config = j.get<hpyp::ExperimentConfig>();
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: bad experiment config: " << e.what() << '\n';
    return 2;
  }

  hpyp::RunManifest manifest;
  manifest.tool_version = HPYP_LAB_VERSION;
  manifest.started_at = hpyp::iso8601_utc_now();
  manifest.master_seed = config.master_seed;
  manifest.command = "experiment " + config_path;
  manifest.output_path = out_path;

  const hpyp::ExperimentReport report = hpyp::run_experiment(config);
  manifest.finished_at = hpyp::iso8601_utc_now();

  json out{{"schema_version", hpyp::kSchemaVersion},
           {"manifest", manifest},
           {"report", report}};
  std::ofstream os(out_path);
  if (!os) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return 2;
  }
  os << out.dump(2) << '\n';
  std::cout << (report.pass ? "PASS" : "FAIL") << " " << to_string(config.kind)
            << ": estimate=" << report.estimate
            << " target=" << report.exact_target << " z=" << report.z_score
            << " (report: " << out_path << ")\n";
  return report.pass ? 0 : 1;
}

int cmd_selftest(bool verbose, bool inject_corruption) {
  if (inject_corruption) hpyp::detail::gfc_test_perturbation = 1.0 + 1e-6;
  const int failures =
      hpyp::run_selftest(verbose, [](const std::string& line) {
        std::cout << line << '\n';
      });
  hpyp::detail::gfc_test_perturbation = 1.0;
  std::cout << (failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchical Pitman-Yor homozygosity laboratory"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  int m = 2, L = 1;
  double alpha = 0.5, beta = 0.5, c = 1.0, theta = 20.0;
  std::string format = "json";
  bool override_caps = false, verbose = false, inject_corruption = false;
  std::string config_path, out_path = "report.json";

  auto add_point = [&](CLI::App* sub, bool with_theta) {
    sub->add_option("--m", m, "power-sum order (>= 2)")->required();
    sub->add_option("--L", L, "number of groups (>= 1)")->required();
    sub->add_option("--alpha", alpha, "level-1 discount in [0,1)")->required();
    sub->add_option("--beta", beta, "level-2 discount in (0,1)")->required();
    sub->add_option("--c", c, "concentration ratio theta0/theta (> 0)")
        ->required();
    if (with_theta)
      sub->add_option("--theta", theta, "level-2 concentration")->required();
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* coeffs = app.add_subcommand(
      "coeffs", "print the coefficient families A, A~, C, B");
  add_point(coeffs, false);
  coeffs->add_flag("--override-caps", override_caps,
                   "lift the composition-sum cost caps");

  auto* variance = app.add_subcommand(
      "variance", "print the asymptotic variance breakdown");
  add_point(variance, false);

  auto* mean_cmd = app.add_subcommand(
      "mean", "print the exact homozygosity mean with per-j terms");
  add_point(mean_cmd, true);

  auto* experiment = app.add_subcommand(
      "experiment", "run a seeded Monte Carlo experiment from a JSON config");
  experiment->add_option("config", config_path, "experiment config JSON")
      ->required();
  experiment->add_option("out", out_path, "output report path");

  auto* selftest =
      app.add_subcommand("selftest", "run the fast invariant suite");
  selftest->add_flag("--verbose", verbose, "list each check");
  selftest
      ->add_flag("--inject-corruption", inject_corruption,
                 "test hook: perturb the gfc table to verify detection")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (coeffs->parsed())
      return cmd_coeffs(m, L, alpha, beta, c, format, override_caps);
    if (variance->parsed()) return cmd_variance(m, L, alpha, beta, c, format);
    if (mean_cmd->parsed())
      return cmd_mean(m, L, alpha, beta, theta, c, format);
    if (experiment->parsed()) return cmd_experiment(config_path, out_path);
    if (selftest->parsed()) return cmd_selftest(verbose, inject_corruption);
  } catch (const hpyp::internal_error& e) {
    std::cerr << "internal consistency error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
