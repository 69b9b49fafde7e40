#include "hpyp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "hpyp/asymptotics.hpp"
#include "hpyp/numeric.hpp"

namespace hpyp {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::mean_check: return "mean-check";
    case ExperimentKind::lln: return "lln";
    case ExperimentKind::clt: return "clt";
    case ExperimentKind::tilted_stable_check: return "tilted-stable-check";
  }
  throw std::invalid_argument("unknown ExperimentKind");
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "mean-check") return ExperimentKind::mean_check;
  if (s == "lln") return ExperimentKind::lln;
  if (s == "clt") return ExperimentKind::clt;
  if (s == "tilted-stable-check") return ExperimentKind::tilted_stable_check;
  throw std::invalid_argument("unknown experiment kind: " + s);
}

void ExperimentConfig::validate() const {
  if (replicates < 100)
    throw std::invalid_argument("ExperimentConfig: replicates >= 100");
  truncation.validate();
  if (kind == ExperimentKind::tilted_stable_check) {
    if (m < 1) throw std::invalid_argument("ExperimentConfig: m >= 1");
    if (!(beta > 0.0 && beta < 1.0))
      throw std::invalid_argument("ExperimentConfig: beta in (0,1)");
    if (!scale_mass || !(*scale_mass > 0.0))
      throw std::invalid_argument(
          "ExperimentConfig: tilted-stable-check needs scale_mass > 0");
    return;
  }
  if (m < 2) throw std::invalid_argument("ExperimentConfig: m >= 2");
  if (L < 1) throw std::invalid_argument("ExperimentConfig: L >= 1");
  if (!(theta > 0.0)) throw std::invalid_argument("ExperimentConfig: theta > 0");
  if (!(c > 0.0)) throw std::invalid_argument("ExperimentConfig: c > 0");
  params().validate();
}

int harness_threads() {
  if (const char* env = std::getenv("HPYP_LAB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1 && n <= 256) return static_cast<int>(n);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

// Runs fn(replicate, rng) for replicate = 0..N-1 over a small worker pool.
// Values land in a per-replicate slot, so the reduction is independent of
// scheduling; replicate r always draws from Rng(master_seed, r).
template <typename Fn>
std::vector<double> run_replicates(const ExperimentConfig& config, Fn&& fn,
                                   std::atomic<std::int64_t>& capped) {
  const std::int64_t n = config.replicates;
  std::vector<double> values(static_cast<size_t>(n));
  std::atomic<std::int64_t> next{0};
  const int threads = std::min<std::int64_t>(harness_threads(), n);
  auto worker = [&] {
    for (;;) {
      const std::int64_t r = next.fetch_add(1);
      if (r >= n) break;
      Rng rng(config.master_seed, static_cast<std::uint64_t>(r));
      values[static_cast<size_t>(r)] = fn(rng, capped);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return values;
}

void fill_moment_stats(ExperimentReport& rep, const std::vector<double>& values,
                       double exact) {
  rep.estimate = mean(values);
  rep.exact_target = exact;
  rep.std_error = sample_std(values) / std::sqrt(static_cast<double>(values.size()));
  rep.z_score = (rep.estimate - exact) / rep.std_error;
}

}  // namespace

ExperimentReport run_mean_check(const ExperimentConfig& config) {
  config.validate();
  if (config.kind != ExperimentKind::mean_check)
    throw std::invalid_argument("run_mean_check: wrong kind");
  const Params params = config.params();
  const double exact = ev_homozygosity_hpyp(config.m, config.L, params).value;

  ExperimentReport rep;
  rep.config = config;
  std::atomic<std::int64_t> capped{0};
  const auto values = run_replicates(
      config,
      [&](Rng& rng, std::atomic<std::int64_t>& capped_ctr) {
        const HpypSample s = sample_hpyp(params, config.L, config.truncation, rng);
        if (s.capped) ++capped_ctr;
        return homozygosity_hpyp(s, config.m);
      },
      capped);
  fill_moment_stats(rep, values, exact);
  rep.capped_draws = capped.load();
  rep.pass = std::fabs(rep.z_score) <= 4.0 && rep.capped_draws == 0;
  return rep;
}

ExperimentReport run_lln(const ExperimentConfig& config) {
  config.validate();
  if (config.kind != ExperimentKind::lln)
    throw std::invalid_argument("run_lln: wrong kind");
  const Params params = config.params();
  const double f = f_scale(config.m, config.L, params);

  ExperimentReport rep;
  rep.config = config;
  std::atomic<std::int64_t> capped{0};
  const auto values = run_replicates(
      config,
      [&](Rng& rng, std::atomic<std::int64_t>& capped_ctr) {
        const HpypSample s = sample_hpyp(params, config.L, config.truncation, rng);
        if (s.capped) ++capped_ctr;
        return homozygosity_hpyp(s, config.m) / f;
      },
      capped);
  fill_moment_stats(rep, values, 1.0);
  rep.capped_draws = capped.load();
  rep.pass = std::fabs(rep.estimate - 1.0) <=
                 std::max(0.05, 4.0 * rep.std_error) &&
             rep.capped_draws == 0;
  return rep;
}

ExperimentReport run_clt(const ExperimentConfig& config) {
  config.validate();
  if (config.kind != ExperimentKind::clt)
    throw std::invalid_argument("run_clt: wrong kind");
  const Params params = config.params();
  const VarianceBreakdown vb =
      sigma2_total(config.m, config.L, config.alpha, config.beta, config.c);
  if (!(vb.total > 0.0))
    throw internal_error("run_clt: predicted variance must be > 0");
  const double f = f_scale(config.m, config.L, params);
  const double center = clt_centering(config.m, config.L, params);
  const double scale = std::sqrt(params.theta) / f;

  ExperimentReport rep;
  rep.config = config;
  std::atomic<std::int64_t> capped{0};
  const auto values = run_replicates(
      config,
      [&](Rng& rng, std::atomic<std::int64_t>& capped_ctr) {
        const HpypSample s = sample_hpyp(params, config.L, config.truncation, rng);
        if (s.capped) ++capped_ctr;
        return scale * (homozygosity_hpyp(s, config.m) - center);
      },
      capped);
  fill_moment_stats(rep, values, 0.0);
  rep.capped_draws = capped.load();
  rep.empirical_variance = sample_variance(values);
  rep.predicted_variance = vb.total;
  const auto [ks_stat, ks_p] = ks_one_sample(values, vb.total);
  rep.ks_statistic = ks_stat;
  rep.ks_p = ks_p;
  const double ratio = *rep.empirical_variance / vb.total;
  rep.pass = std::fabs(rep.z_score) <= 4.0 && ratio >= 0.75 && ratio <= 1.25 &&
             rep.capped_draws == 0;
  return rep;
}

ExperimentReport run_tilted_stable_check(const ExperimentConfig& config) {
  config.validate();
  if (config.kind != ExperimentKind::tilted_stable_check)
    throw std::invalid_argument("run_tilted_stable_check: wrong kind");
  TiltedStableSpec spec;
  spec.beta = config.beta;
  spec.scale_mass = *config.scale_mass;
  spec.validate();

  ExperimentReport rep;
  rep.config = config;
  std::atomic<std::int64_t> capped{0};
  std::atomic<std::uint64_t> proposals{0};
  const auto values = run_replicates(
      config,
      [&](Rng& rng, std::atomic<std::int64_t>&) {
        TiltedStableStats stats;
        const double w = sample_tilted_stable(spec, rng, &stats);
        proposals.fetch_add(stats.proposals);
        return w;
      },
      capped);
  rep.acceptance_rate = static_cast<double>(values.size()) /
                        static_cast<double>(proposals.load());

  // all moment orders m' = 1..m from the same draws; report the worst z
  double worst_z = 0.0;
  bool all_ok = true;
  std::vector<double> powers(values.size());
  for (int order = 1; order <= config.m; ++order) {
    for (size_t i = 0; i < values.size(); ++i)
      powers[i] = pow_int(values[i], order);
    const double exact =
        conditional_moment_w(order, config.beta, 1.0, spec.scale_mass);
    const double est = mean(powers);
    const double se =
        sample_std(powers) / std::sqrt(static_cast<double>(powers.size()));
    const double z = (est - exact) / se;
    all_ok = all_ok && std::fabs(z) <= 4.0;
    if (std::fabs(z) >= std::fabs(worst_z)) {
      worst_z = z;
      rep.estimate = est;
      rep.exact_target = exact;
      rep.std_error = se;
      rep.z_score = z;
    }
  }
  rep.capped_draws = 0;
  rep.pass = all_ok;
  return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::mean_check: return run_mean_check(config);
    case ExperimentKind::lln: return run_lln(config);
    case ExperimentKind::clt: return run_clt(config);
    case ExperimentKind::tilted_stable_check:
      return run_tilted_stable_check(config);
  }
  throw std::invalid_argument("run_experiment: unknown kind");
}

std::pair<double, double> ks_one_sample(const std::vector<double>& samples,
                                        double sigma2) {
  if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty input");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("ks_one_sample: sigma2 > 0");
  std::vector<double> xs(samples);
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  const double sigma = std::sqrt(sigma2);
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double cdf = normal_cdf(xs[i] / sigma);
    d = std::max(d, cdf - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - cdf);
  }
  const double x = std::sqrt(n) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * x * x);
    p += (k % 2 == 1) ? term : -term;
  }
  p = std::clamp(p, 0.0, 1.0);
  return {d, p};
}

}  // namespace hpyp
