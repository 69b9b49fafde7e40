#include "hpyp/weights.hpp"

#include <cmath>

#include "hpyp/numeric.hpp"

namespace hpyp {

void TruncationPolicy::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("TruncationPolicy: epsilon in (0,1)");
  if (k_max < 1) throw std::invalid_argument("TruncationPolicy: k_max >= 1");
}

StickWeights sample_gem(double alpha, double theta,
                        const TruncationPolicy& policy, Rng& rng) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("sample_gem: alpha in [0,1)");
  if (!(theta > -alpha)) throw std::invalid_argument("sample_gem: theta > -alpha");
  policy.validate();

  StickWeights out;
  double residual = 1.0;
  for (std::size_t k = 1;; ++k) {
    const double u = rng.beta(1.0 - alpha, theta + k * alpha);
    out.weights.push_back(residual * u);
    residual *= (1.0 - u);
    if (residual <= policy.epsilon) break;
    if (k == policy.k_max) {
      out.capped = true;
      break;
    }
  }
  out.residual = residual;
  return out;
}

namespace {

// Walker alias sampler over unnormalized weights.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& w) {
    const std::size_t n = w.size();
    prob_.resize(n);
    alias_.resize(n);
    double total = pairwise_sum(w);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = w[i] * n / total;
    std::vector<std::size_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      small.pop_back();
      const std::size_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i : small) prob_[i] = 1.0;
  }

  std::size_t sample(Rng& rng) const {
    const std::size_t n = prob_.size();
    const std::size_t j =
        std::min(static_cast<std::size_t>(rng.uniform() * n), n - 1);
    return rng.uniform() < prob_[j] ? j : alias_[j];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace

HpypSample sample_hpyp(const Params& params, int L,
                       const TruncationPolicy& policy, Rng& rng) {
  params.validate();
  if (L < 1) throw std::invalid_argument("sample_hpyp: L >= 1");
  policy.validate();

  HpypSample s;
  s.level1 = sample_gem(params.alpha, params.theta0, policy, rng);
  s.capped = s.level1.capped;
  const std::size_t K = s.level1.weights.size();
  AliasTable alias(s.level1.weights);

  s.group_weights.assign(L, std::vector<double>(K, 0.0));
  s.group_residuals.assign(L, 0.0);
  for (int l = 0; l < L; ++l) {
    auto& row = s.group_weights[l];
    double residual = 1.0;
    for (std::size_t k = 1;; ++k) {
      const double u = rng.beta(1.0 - params.beta, params.theta + k * params.beta);
      const double p = residual * u;
      residual *= (1.0 - u);
      row[alias.sample(rng)] += p;
      if (residual <= policy.epsilon) break;
      if (k == policy.k_max) {
        s.capped = true;
        break;
      }
    }
    s.group_residuals[l] = residual;
  }
  return s;
}

double homozygosity_pd(const StickWeights& w, int m) {
  if (m < 2) throw std::invalid_argument("homozygosity_pd: m >= 2");
  double acc = 0.0, comp = 0.0;
  for (double v : w.weights) {
    const double d = pow_int(v, m) - comp;
    const double t = acc + d;
    comp = (t - acc) - d;
    acc = t;
  }
  return acc;
}

double homozygosity_hpyp(const HpypSample& s, int m) {
  if (m < 2) throw std::invalid_argument("homozygosity_hpyp: m >= 2");
  const int L = static_cast<int>(s.group_weights.size());
  if (L < 1) throw std::invalid_argument("homozygosity_hpyp: empty sample");
  const auto comps = compositions(m, L);
  const std::size_t K = s.group_weights[0].size();
  const double scale = pow_int(1.0 / static_cast<double>(L), m);

  double acc = 0.0, kcomp = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    double atom = 0.0;
    for (const auto& comp : comps) {
      double prod = 1.0;
      for (int l = 0; l < L && prod != 0.0; ++l) {
        const int ml = comp.parts[l];
        if (ml > 0) prod *= pow_int(s.group_weights[l][i], ml);
      }
      atom += prod;
    }
    const double d = atom - kcomp;
    const double t = acc + d;
    kcomp = (t - acc) - d;
    acc = t;
  }
  return scale * acc;
}

double scaled_homozygosity(const HpypSample& s, int m, const Params& params,
                           int L) {
  if (static_cast<int>(s.group_weights.size()) != L)
    throw std::invalid_argument("scaled_homozygosity: L mismatch");
  const double h = homozygosity_hpyp(s, m);
  const double f = f_scale(m, L, params);
  const double center = clt_centering(m, L, params);
  return std::sqrt(params.theta) * (h - center) / f;
}

}  // namespace hpyp
