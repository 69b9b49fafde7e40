#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace hpyp {

// Pairwise summation: O(eps log n) rounding growth and order-stable, which the
// harness relies on for reduction determinism across thread counts.
inline double pairwise_sum(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty input");
  return pairwise_sum(xs) / static_cast<double>(xs.size());
}

// Unbiased sample variance (two-pass, pairwise).
inline double sample_variance(std::span<const double> xs) {
  const size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("sample_variance: need n >= 2");
  const double mu = mean(xs);
  double acc = 0.0;
  double comp = 0.0;  // Kahan on the squared deviations
  for (double x : xs) {
    const double d = (x - mu) * (x - mu) - comp;
    const double t = acc + d;
    comp = (t - acc) - d;
    acc = t;
  }
  return acc / static_cast<double>(n - 1);
}

inline double sample_std(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs));
}

inline double pow_int(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace hpyp
