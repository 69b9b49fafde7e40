#include "hpyp/combinatorics.hpp"

#include <cmath>
#include <limits>

namespace hpyp {

namespace detail {
double gfc_test_perturbation = 1.0;
}

double LogValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogValue rising_factorial(double x, int n) {
  if (n < 0) throw std::invalid_argument("rising_factorial: n must be >= 0");
  LogValue out{0.0, 1};
  for (int i = 0; i < n; ++i) {
    const double factor = x + i;
    if (factor == 0.0) {
      return LogValue{-std::numeric_limits<double>::infinity(), 0};
    }
    if (factor < 0.0) out.sign = -out.sign;
    out.log_abs += std::log(std::fabs(factor));
  }
  return out;
}

LogValue falling_factorial(double x, int n) {
  LogValue r = rising_factorial(-x, n);
  if (n % 2 != 0) r.sign = -r.sign;
  return r;
}

double rising_factorial_d(double x, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= (x + i);
  return p;
}

namespace {

constexpr int kStirlingCap = 30;

struct StirlingTriangles {
  // row n holds k = 0..n
  std::vector<std::vector<uint128>> first, second;

  StirlingTriangles() {
    first.resize(kStirlingCap + 1);
    second.resize(kStirlingCap + 1);
    first[0] = {uint128{1}};
    second[0] = {uint128{1}};
    for (int n = 1; n <= kStirlingCap; ++n) {
      first[n].assign(n + 1, uint128{0});
      second[n].assign(n + 1, uint128{0});
      for (int k = 1; k <= n; ++k) {
        first[n][k] = first[n - 1][k - 1] +
                      uint128{static_cast<unsigned>(n - 1)} *
                          (k <= n - 1 ? first[n - 1][k] : uint128{0});
        second[n][k] = second[n - 1][k - 1] +
                       uint128{static_cast<unsigned>(k)} *
                           (k <= n - 1 ? second[n - 1][k] : uint128{0});
      }
    }
  }
};

const StirlingTriangles& triangles() {
  static const StirlingTriangles t;
  return t;
}

void check_stirling_range(int n, int k) {
  if (n < 0 || n > kStirlingCap)
    throw std::out_of_range("stirling: n must be in [0, 30]");
  if (k < 0 || k > n) throw std::out_of_range("stirling: need 0 <= k <= n");
}

}  // namespace

uint128 stirling_first_unsigned(int n, int k) {
  check_stirling_range(n, k);
  return triangles().first[n][k];
}

uint128 stirling_second(int n, int k) {
  check_stirling_range(n, k);
  return triangles().second[n][k];
}

std::string to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

GfcTable::GfcTable(int max_m, double beta) : max_m_(max_m), beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("GfcTable: beta must be in (0,1)");
  if (max_m < 0) throw std::invalid_argument("GfcTable: max_m must be >= 0");
  values_.assign(static_cast<size_t>(max_m + 1) * (max_m + 2) / 2, 0.0);
  auto at = [this](int m, int j) -> double& {
    return values_[static_cast<size_t>(m) * (m + 1) / 2 + j];
  };
  at(0, 0) = 1.0;
  for (int m = 0; m < max_m; ++m) {
    for (int j = 1; j <= m + 1; ++j) {
      const double keep = (j <= m) ? (m - beta * j) * at(m, j) : 0.0;
      at(m + 1, j) = keep + beta * at(m, j - 1);
    }
  }
  if (detail::gfc_test_perturbation != 1.0) {
    for (double& v : values_) v *= detail::gfc_test_perturbation;
    at(0, 0) = 1.0;
  }
}

double GfcTable::operator()(int m, int j) const {
  if (m < 0 || j < 0) throw std::out_of_range("GfcTable: negative index");
  if (m > max_m_) throw std::out_of_range("GfcTable: m exceeds max_m");
  if (j > m) return 0.0;
  return values_[static_cast<size_t>(m) * (m + 1) / 2 + j];
}

double gfc(int m, int j, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("gfc: beta must be in (0,1)");
  if (m < 0 || j < 0) throw std::invalid_argument("gfc: m, j must be >= 0");
  if (j > m) return 0.0;
  if (m == 0) return 1.0;
  if (j == 0) return 0.0;
  GfcTable table(m, beta);
  return table(m, j);
}

// Both oracle formulas cancel heavily (the direct sum loses ~m orders of
// magnitude at small beta), so they run in quad precision internally; the
// m <= 20 cap keeps even the worst cancellation inside quad headroom.
double gfc_direct(int m, int j, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("gfc_direct: beta must be in (0,1)");
  if (m > 20) throw std::out_of_range("gfc_direct: m <= 20 (oracle range)");
  if (j > m) return 0.0;
  if (m == 0) return 1.0;
  if (j == 0) return 0.0;
  __float128 sum = 0;
  __float128 sign = 1;
  for (int k = 0; k <= j; ++k) {
    __float128 rf = 1;  // (-k beta)_(m)
    for (int i = 0; i < m; ++i)
      rf *= (-static_cast<__float128>(k) * static_cast<__float128>(beta) + i);
    sum += sign * static_cast<__float128>(binomial(j, k)) * rf;
    sign = -sign;
  }
  __float128 jfact = 1;
  for (int i = 2; i <= j; ++i) jfact *= i;
  return static_cast<double>(sum / jfact);
}

double gfc_stirling_expansion(int m, int j, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("gfc_stirling_expansion: beta must be in (0,1)");
  if (m > 20) throw std::out_of_range("gfc_stirling_expansion: m <= 20");
  if (j > m) return 0.0;
  if (m == 0) return 1.0;
  if (j == 0) return 0.0;
  __float128 sum = 0;
  __float128 bl = 1;
  for (int i = 0; i < j; ++i) bl *= static_cast<__float128>(beta);
  for (int l = j; l <= m; ++l) {
    const __float128 term =
        static_cast<__float128>(stirling_first_unsigned(m, l)) *
        static_cast<__float128>(stirling_second(l, j)) * bl;
    sum += ((l - j) % 2 == 0) ? term : -term;
    bl *= static_cast<__float128>(beta);
  }
  return static_cast<double>(sum);
}

std::vector<Composition> compositions(int n, int L) {
  if (L < 1) throw std::invalid_argument("compositions: L must be >= 1");
  if (n < 0) throw std::invalid_argument("compositions: n must be >= 0");
  std::vector<Composition> out;
  std::vector<int> parts(L, 0);
  // lexicographic: recurse on the first coordinate from 0 upward
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == L - 1) {
      parts[pos] = remaining;
      out.push_back(Composition{parts, n});
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      parts[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return r;
}

}  // namespace hpyp
