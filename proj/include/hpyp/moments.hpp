#pragma once

#include <cstdint>
#include <vector>

#include "hpyp/asymptotics.hpp"

namespace hpyp {

// The four HPYP process parameters. alpha = 0 (Dirichlet level 1) is
// admitted; beta stays strictly inside (0,1).
struct Params {
  double alpha = 0.5;
  double theta0 = 1.0;
  double beta = 0.5;
  double theta = 1.0;

  double c() const { return theta0 / theta; }
  bool valid() const;
  void validate() const;  // throws std::invalid_argument

  bool operator==(const Params&) const = default;
};

struct MomentResult {
  double value = 0.0;
  double log_value = 0.0;
  std::vector<double> terms;  // per-j contributions, index 0 <-> j = 1
};

// Caps for the exact-mean composition sum.
struct MomentLimits {
  int max_m = 8;
  int max_L = 6;
};

// E[V_k^j] for PD(alpha, theta0) sticks in stick-breaking order.
double ev_vk_power(std::int64_t k, int j, double alpha, double theta0);

// Closed form of sum_{k<=N} E[V_k^j], j >= 1.
double ev_partial_sum(std::int64_t N, int j, double alpha, double theta0);

// E[H_m] = (1-alpha)_(m-1) / (1+theta)_(m-1), m >= 2.
double ev_homozygosity_pd(int m, double alpha, double theta);

// Same expression for any power-sum order j >= 1 (j = 1 gives 1).
double ev_power_sum_pd(int j, double alpha, double theta);

// Exact E[H_{m,L}]: the double composition sum over M_{m,L} and M_{j,L}.
MomentResult ev_homozygosity_hpyp(int m, int L, const Params& params,
                                  const MomentLimits& limits = {});

// Asymptotic mean scale f and its theta-free normalization f~.
double f_tilde(int m, int L, double alpha, double beta, double c);
double f_scale(int m, int L, const Params& params);  // c = theta0/theta

// The Theorem-1 centering constant (the subtracted term of the scaled
// homozygosity), evaluated at finite theta with c = theta0/theta.
double clt_centering(int m, int L, const Params& params);

}  // namespace hpyp
