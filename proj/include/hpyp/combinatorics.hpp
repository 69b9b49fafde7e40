#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpyp {

// Signed log-magnitude value. Survives magnitudes like (1e6)_(12) that a
// plain double product would handle but downstream ratios compose better in
// log space, and keeps an exact sign through negative factors.
struct LogValue {
  double log_abs = 0.0;  // natural log of |value|; -inf when sign == 0
  int sign = 1;          // +1, 0, -1

  double value() const;
};

// Rising factorial (x)_(n) = x(x+1)...(x+n-1); n = 0 gives 1.
LogValue rising_factorial(double x, int n);

// Falling factorial x(x-1)...(x-n+1) via (x)_n = (-1)^n (-x)_(n).
LogValue falling_factorial(double x, int n);

// Plain-double rising factorial for small arguments.
double rising_factorial_d(double x, int n);

// Exact Stirling numbers, hard-capped at n <= 30 so values stay inside
// unsigned 128-bit range (all entries are <= 30! < 2^128).
using uint128 = unsigned __int128;

uint128 stirling_first_unsigned(int n, int k);  // permutations of n with k cycles
uint128 stirling_second(int n, int k);          // partitions of n-set into k blocks

std::string to_string(uint128 v);

// Generalized factorial coefficients C(m, j, beta).
//
// Canonical evaluation is the all-positive recurrence
//   C(m+1, j, b) = (m - b j) C(m, j, b) + b C(m, j-1, b),
// with C(0,0,b) = 1, C(m,0,b) = 0 for m >= 1, C(m,j,b) = 0 for j > m.
// The alternating direct sum and the Stirling-pair expansion are retained as
// independent oracles; they cancel catastrophically for large m and are
// range-capped accordingly.
class GfcTable {
 public:
  GfcTable(int max_m, double beta);

  double operator()(int m, int j) const;
  int max_m() const { return max_m_; }
  double beta() const { return beta_; }

 private:
  int max_m_;
  double beta_;
  std::vector<double> values_;  // triangular, row m holds j = 0..m
};

double gfc(int m, int j, double beta);

// Oracle: (1/j!) sum_k (-1)^k binom(j,k) (-k beta)_(m). Capped at m <= 20.
double gfc_direct(int m, int j, double beta);

// Oracle: sum_l (-1)^(l-j) [m l] {l j} beta^l. Capped at m <= 20.
double gfc_stirling_expansion(int m, int j, double beta);

// Hook for the CLI selftest's corruption-injection check: multiplies every
// GfcTable entry. Leave at 1.0 everywhere except that test path.
namespace detail {
extern double gfc_test_perturbation;
}

// A composition of `total` into a fixed number of nonnegative parts.
struct Composition {
  std::vector<int> parts;
  int total = 0;

  bool operator==(const Composition&) const = default;
};

// All L-part compositions of n in lexicographic order; C(n+L-1, L-1) of them.
std::vector<Composition> compositions(int n, int L);

std::uint64_t binomial(int n, int k);

}  // namespace hpyp
