#include "hpyp/subordinator.hpp"

#include <cmath>

#include "hpyp/combinatorics.hpp"
#include "hpyp/numeric.hpp"

namespace hpyp {

void TiltedStableSpec::validate() const {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("TiltedStableSpec: beta in (0,1)");
  if (!(scale_mass > 0.0))
    throw std::invalid_argument("TiltedStableSpec: scale_mass > 0");
  if (scale_mass > max_scale_mass)
    throw budget_error("tilted-stable rejection budget exceeded: scale_mass " +
                       std::to_string(scale_mass) + " > " +
                       std::to_string(max_scale_mass) +
                       " (expected cost e^scale_mass proposals)");
}

double sample_gamma_total(double theta, double beta, Rng& rng) {
  if (!(theta > 0.0)) throw std::invalid_argument("sample_gamma_total: theta > 0");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("sample_gamma_total: beta in (0,1)");
  return rng.gamma(theta / beta);
}

double sample_positive_stable(double beta, double scale, Rng& rng) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("sample_positive_stable: beta in (0,1)");
  if (!(scale > 0.0))
    throw std::invalid_argument("sample_positive_stable: scale > 0");
  // S = scale^{1/beta} (A(pi U)/E)^{(1-beta)/beta},
  // A(u) = [sin(beta u)/sin u]^{beta/(1-beta)} sin((1-beta)u)/sin u.
  const double u = M_PI * rng.uniform_open();
  const double e = rng.exponential();
  const double log_a = (beta / (1.0 - beta)) *
                           (std::log(std::sin(beta * u)) - std::log(std::sin(u))) +
                       std::log(std::sin((1.0 - beta) * u)) - std::log(std::sin(u));
  return std::exp(std::log(scale) / beta +
                  ((1.0 - beta) / beta) * (log_a - std::log(e)));
}

double sample_tilted_stable(const TiltedStableSpec& spec, Rng& rng,
                            TiltedStableStats* stats) {
  spec.validate();
  for (;;) {
    const double s = sample_positive_stable(spec.beta, spec.scale_mass, rng);
    if (stats) ++stats->proposals;
    if (rng.uniform() < std::exp(-s)) {
      if (stats) ++stats->accepts;
      return s;
    }
  }
}

double conditional_moment_w(int m, double beta, double gamma_value, double v) {
  if (m < 1) throw std::invalid_argument("conditional_moment_w: m >= 1");
  if (gamma_value < 0.0 || v < 0.0)
    throw std::invalid_argument("conditional_moment_w: gamma, v >= 0");
  GfcTable table(m, beta);
  const double s = gamma_value * v;
  double acc = 0.0;
  for (int j = m; j >= 1; --j) acc = (acc + table(m, j)) * s;
  return acc;
}

double unconditional_moment_w(int m, double beta, double theta, double v) {
  if (m < 1) throw std::invalid_argument("unconditional_moment_w: m >= 1");
  if (!(theta > 0.0)) throw std::invalid_argument("unconditional_moment_w: theta > 0");
  if (v < 0.0) throw std::invalid_argument("unconditional_moment_w: v >= 0");
  GfcTable table(m, beta);
  double acc = 0.0;
  double gamma_moment = 1.0;  // E[gamma^j] = prod_{s=0}^{j-1} (theta + s beta) / beta^j
  for (int j = 1; j <= m; ++j) {
    gamma_moment *= (theta + (j - 1) * beta) / beta;
    acc += table(m, j) * gamma_moment * pow_int(v, j);
  }
  return acc;
}

}  // namespace hpyp
