#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpyp/subordinator.hpp"
#include "hpyp/weights.hpp"

namespace hpyp {

enum class ExperimentKind { mean_check, lln, clt, tilted_stable_check };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::mean_check;
  int m = 2;
  int L = 1;
  double alpha = 0.5;
  double beta = 0.5;
  double theta = 20.0;
  double c = 1.0;  // theta0 = c * theta
  std::int64_t replicates = 1000;
  TruncationPolicy truncation;
  std::uint64_t master_seed = 1;
  // tilted-stable-check only: the scale mass s = gamma * V of the increment law
  std::optional<double> scale_mass;

  Params params() const {
    return Params{alpha, c * theta, beta, theta};
  }
  void validate() const;  // throws std::invalid_argument
};

struct ExperimentReport {
  ExperimentConfig config;
  double estimate = 0.0;
  double exact_target = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  std::optional<double> empirical_variance;  // clt only
  std::optional<double> predicted_variance;  // clt only
  std::optional<double> ks_statistic;        // clt only, informational
  std::optional<double> ks_p;                // clt only, informational
  std::optional<double> acceptance_rate;     // tilted-stable only
  std::int64_t capped_draws = 0;
  bool pass = false;
};

// Number of worker threads: HPYP_LAB_THREADS if set, else hardware concurrency.
int harness_threads();

ExperimentReport run_mean_check(const ExperimentConfig& config);
ExperimentReport run_lln(const ExperimentConfig& config);
ExperimentReport run_clt(const ExperimentConfig& config);
ExperimentReport run_tilted_stable_check(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config);

// Sup distance to the Normal(0, sigma2) CDF and the asymptotic Kolmogorov
// p-value (first 100 series terms).
std::pair<double, double> ks_one_sample(const std::vector<double>& samples,
                                        double sigma2);

}  // namespace hpyp
