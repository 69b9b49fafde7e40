#pragma once

#include <cstddef>
#include <vector>

#include "hpyp/moments.hpp"
#include "hpyp/rng.hpp"

namespace hpyp {

struct TruncationPolicy {
  double epsilon = 1e-10;   // stop once residual mass <= epsilon
  std::size_t k_max = 1000000;  // hard cap; hitting it flags the draw

  void validate() const;
  bool operator==(const TruncationPolicy&) const = default;
};

// Stick-breaking weights in stick-breaking (size-biased) order. Never sorted:
// every statistic downstream is permutation-invariant.
struct StickWeights {
  std::vector<double> weights;
  double residual = 1.0;
  bool capped = false;
};

// One HPYP draw with L groups. Columns of group_weights are aligned to the
// level-1 atoms; row l sums to 1 - group_residuals[l].
struct HpypSample {
  StickWeights level1;
  std::vector<std::vector<double>> group_weights;  // L x K
  std::vector<double> group_residuals;
  bool capped = false;
};

// GEM(alpha, theta) stick weights: V_n = prod_{k<n}(1-U_k) U_n with
// U_k ~ Beta(1-alpha, theta + k alpha), stopped per policy.
StickWeights sample_gem(double alpha, double theta,
                        const TruncationPolicy& policy, Rng& rng);

// Nested stick-breaking HPYP draw: level-2 GEM(beta, theta) sticks routed to
// level-1 atoms by a categorical on the truncated, renormalized level-1
// weights. Groups are conditionally iid given level1.
HpypSample sample_hpyp(const Params& params, int L,
                       const TruncationPolicy& policy, Rng& rng);

// sum_i w_i^m over retained sticks; truncation error <= residual^m.
double homozygosity_pd(const StickWeights& w, int m);

// sum_i sum_{m in M_{m,L}} L^{-m} prod_l Z_{l,i}^{m_l}, by composition
// enumeration (the formula carries no multinomial coefficients).
double homozygosity_hpyp(const HpypSample& s, int m);

// sqrt(theta)/f * (H_{m,L} - centering), with f and the centering evaluated
// at finite theta and c = theta0/theta.
double scaled_homozygosity(const HpypSample& s, int m, const Params& params,
                           int L);

}  // namespace hpyp
