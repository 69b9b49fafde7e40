#include "hpyp/moments.hpp"

#include <cmath>

#include "hpyp/numeric.hpp"

namespace hpyp {

bool Params::valid() const {
  return alpha >= 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0 &&
         theta0 > -alpha && theta > -beta;
}

void Params::validate() const {
  if (!valid())
    throw std::invalid_argument(
        "Params: need alpha in [0,1), beta in (0,1), theta0 > -alpha, "
        "theta > -beta");
}

namespace {

void check_pd_params(double alpha, double theta) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("need alpha in [0,1)");
  if (!(theta > -alpha)) throw std::invalid_argument("need theta > -alpha");
}

// log of prod_{s=1}^{k-1} (theta + s alpha) / (theta + s alpha + j)
double log_stick_ratio_product(std::int64_t k, int j, double alpha,
                               double theta) {
  double acc = 0.0;
  for (std::int64_t s = 1; s < k; ++s) {
    acc += std::log(theta + s * alpha) - std::log(theta + s * alpha + j);
  }
  return acc;
}

}  // namespace

double ev_vk_power(std::int64_t k, int j, double alpha, double theta0) {
  check_pd_params(alpha, theta0);
  if (k < 1) throw std::invalid_argument("ev_vk_power: k >= 1");
  if (j < 0) throw std::invalid_argument("ev_vk_power: j >= 0");
  if (j == 0) return 1.0;
  const double lg = rising_factorial(1.0 - alpha, j).log_abs -
                    rising_factorial(1.0 + theta0, j).log_abs +
                    log_stick_ratio_product(k, j, alpha, theta0);
  return std::exp(lg);
}

double ev_partial_sum(std::int64_t N, int j, double alpha, double theta0) {
  check_pd_params(alpha, theta0);
  if (N < 1) throw std::invalid_argument("ev_partial_sum: N >= 1");
  if (j < 1) throw std::invalid_argument("ev_partial_sum: j >= 1");
  const double log_p = log_stick_ratio_product(N, j, alpha, theta0);
  const double bracket = theta0 + j - (theta0 + N * alpha) * std::exp(log_p);
  return std::exp(rising_factorial(1.0 - alpha, j - 1).log_abs -
                  rising_factorial(1.0 + theta0, j).log_abs) *
         bracket;
}

double ev_power_sum_pd(int j, double alpha, double theta) {
  check_pd_params(alpha, theta);
  if (j < 1) throw std::invalid_argument("ev_power_sum_pd: j >= 1");
  return std::exp(rising_factorial(1.0 - alpha, j - 1).log_abs -
                  rising_factorial(1.0 + theta, j - 1).log_abs);
}

double ev_homozygosity_pd(int m, double alpha, double theta) {
  if (m < 2) throw std::invalid_argument("ev_homozygosity_pd: m >= 2");
  return ev_power_sum_pd(m, alpha, theta);
}

MomentResult ev_homozygosity_hpyp(int m, int L, const Params& params,
                                  const MomentLimits& limits) {
  params.validate();
  if (m < 2) throw std::invalid_argument("ev_homozygosity_hpyp: m >= 2");
  if (L < 1) throw std::invalid_argument("ev_homozygosity_hpyp: L >= 1");
  if (m > limits.max_m || L > limits.max_L)
    throw std::out_of_range("ev_homozygosity_hpyp: composition sum capped at m <= " +
                            std::to_string(limits.max_m) +
                            ", L <= " + std::to_string(limits.max_L));
  const double alpha = params.alpha, beta = params.beta;
  const double theta = params.theta, theta0 = params.theta0;

  GfcTable table(m, beta);

  // log of the j-dependent factor
  //   prod_{s=0}^{j-1}(theta + s beta) (1-alpha)_(j-1) / (beta^j (1+theta0)_(j-1))
  std::vector<double> log_gj(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) {
    double lg = 0.0;
    for (int s = 0; s < j; ++s) lg += std::log(theta + s * beta);
    lg += rising_factorial(1.0 - alpha, j - 1).log_abs;
    lg -= j * std::log(beta);
    lg -= rising_factorial(1.0 + theta0, j - 1).log_abs;
    log_gj[j] = lg;
  }

  MomentResult out;
  out.terms.assign(m, 0.0);
  const double log_Lm = m * std::log(static_cast<double>(L));
  for (const auto& comp : compositions(m, L)) {
    double log_denom = 0.0;
    for (int ml : comp.parts)
      log_denom += rising_factorial(theta, ml).log_abs;
    // D_j(comp): coefficient of x^j in the per-group gfc polynomial product
    std::vector<double> poly{1.0};
    for (int ml : comp.parts) {
      std::vector<double> next(poly.size() + ml, 0.0);
      for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0.0) continue;
        for (int j = (ml >= 1 ? 1 : 0); j <= ml; ++j)
          next[i + j] += poly[i] * table(ml, j);
      }
      poly = std::move(next);
    }
    for (int j = 1; j <= m && j < static_cast<int>(poly.size()); ++j) {
      if (poly[j] == 0.0) continue;
      out.terms[j - 1] +=
          std::exp(std::log(poly[j]) + log_gj[j] - log_denom - log_Lm);
    }
  }
  out.value = pairwise_sum(out.terms);
  out.log_value = std::log(out.value);
  return out;
}

double f_tilde(int m, int L, double alpha, double beta, double c) {
  if (m < 2) throw std::invalid_argument("f_tilde: m >= 2");
  if (!(c > 0.0)) throw std::invalid_argument("f_tilde: c > 0");
  const auto A = a_coeffs(m, L, beta);
  double acc = 0.0;
  for (int j = 1; j <= m; ++j) {
    acc += A[j - 1] * rising_factorial_d(1.0 - alpha, j - 1) /
           (pow_int(beta, j) * pow_int(c, j - 1));
  }
  return acc;
}

double f_scale(int m, int L, const Params& params) {
  params.validate();
  return f_tilde(m, L, params.alpha, params.beta, params.c()) /
         (pow_int(static_cast<double>(L), m) *
          pow_int(params.theta, m - 1));
}

double clt_centering(int m, int L, const Params& params) {
  params.validate();
  if (m < 2) throw std::invalid_argument("clt_centering: m >= 2");
  const auto A = a_coeffs(m, L, params.beta);
  double acc = 0.0;
  for (int j = 1; j <= m; ++j) {
    double lg = std::log(A[j - 1]);
    for (int s = 1; s < j; ++s) lg += std::log(params.theta + s * params.beta);
    lg += rising_factorial(1.0 - params.alpha, j - 1).log_abs;
    lg -= j * std::log(params.beta);
    lg -= (j - 1) * std::log(params.theta0);
    acc += std::exp(lg);
  }
  return acc / (pow_int(static_cast<double>(L), m) *
                pow_int(params.theta, m - 1));
}

}  // namespace hpyp
