#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "hpyp/combinatorics.hpp"
#include "hpyp/numeric.hpp"

using namespace hpyp;

namespace {

// Brute-force oracle: number of permutations of {0..n-1} with exactly k cycles.
std::uint64_t count_permutations_with_cycles(int n, int k) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    if (cycles == k) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Brute-force oracle: number of partitions of an n-set into k nonempty blocks,
// by enumerating restricted growth strings.
std::uint64_t count_set_partitions(int n, int k) {
  std::uint64_t count = 0;
  std::vector<int> label(n, 0);
  auto rec = [&](auto&& self, int pos, int max_used) -> void {
    if (pos == n) {
      if (max_used + 1 == k) ++count;
      return;
    }
    for (int v = 0; v <= std::min(max_used + 1, k - 1); ++v) {
      label[pos] = v;
      self(self, pos + 1, std::max(max_used, v));
    }
  };
  rec(rec, 0, -1);
  return count;
}

}  // namespace

TEST_CASE("rising factorial") {
  CHECK(rising_factorial(2.0, 0).value() == 1.0);
  CHECK(rising_factorial(2.0, 3).value() == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(rising_factorial(0.5, 2).value() == doctest::Approx(0.75).epsilon(1e-14));

  SUBCASE("sign bookkeeping") {
    const auto pos = rising_factorial(3.2, 5);
    CHECK(pos.sign == 1);
    CHECK(std::isfinite(pos.log_abs));

    // (-2.5)(-1.5)(-0.5) = -1.875
    const auto neg = rising_factorial(-2.5, 3);
    CHECK(neg.sign == -1);
    CHECK(neg.value() == doctest::Approx(-1.875).epsilon(1e-14));

    const auto zero = rising_factorial(-2.0, 3);  // hits the factor 0
    CHECK(zero.sign == 0);
    CHECK(zero.value() == 0.0);
  }

  SUBCASE("falling factorial via reflection") {
    CHECK(falling_factorial(0.5, 2).value() ==
          doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(falling_factorial(5.0, 3).value() ==
          doctest::Approx(60.0).epsilon(1e-14));
  }

  SUBCASE("log form survives theta ~ 1e6, n = 12") {
    const auto big = rising_factorial(1e6, 12);
    CHECK(big.sign == 1);
    CHECK(big.log_abs == doctest::Approx(12 * std::log(1e6)).epsilon(1e-6));
  }
}

TEST_CASE("Stirling numbers against brute-force enumeration") {
  CHECK(stirling_first_unsigned(0, 0) == 1);
  CHECK(stirling_second(3, 3) == 1);
  // frozen values confirmed by the enumeration oracles below
  CHECK(stirling_first_unsigned(3, 2) == 3);
  CHECK(stirling_first_unsigned(4, 1) == 6);
  CHECK(stirling_second(3, 2) == 3);
  CHECK(stirling_second(4, 2) == 7);

  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(stirling_first_unsigned(n, k) ==
            uint128{count_permutations_with_cycles(n, k)});
      CHECK(stirling_second(n, k) == uint128{count_set_partitions(n, k)});
    }
  }

  SUBCASE("range errors") {
    CHECK_THROWS_AS(stirling_first_unsigned(31, 2), std::out_of_range);
    CHECK_THROWS_AS(stirling_second(-1, 0), std::out_of_range);
    CHECK_THROWS_AS(stirling_first_unsigned(4, 5), std::out_of_range);
  }

  SUBCASE("n = 30 stays exact in 128 bits") {
    // sum_k [30 k] = 30!
    uint128 total = 0;
    for (int k = 0; k <= 30; ++k) total += stirling_first_unsigned(30, k);
    uint128 fact = 1;
    for (int i = 2; i <= 30; ++i) fact *= i;
    CHECK(total == fact);
    CHECK(to_string(fact) == "265252859812191058636308480000000");
  }
}

TEST_CASE("generalized factorial coefficients") {
  CHECK(gfc(1, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // C(m,1,b) = b (1-b)_(m-1)
  CHECK(gfc(3, 1, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(gfc(4, 4, 0.3) == doctest::Approx(0.0081).epsilon(1e-13));

  SUBCASE("boundary conventions") {
    CHECK(gfc(0, 0, 0.4) == 1.0);
    CHECK(gfc(3, 0, 0.4) == 0.0);
    CHECK(gfc(2, 5, 0.4) == 0.0);
    GfcTable table(5, 0.4);
    CHECK(table(0, 0) == 1.0);
    CHECK(table(4, 7) == 0.0);
    for (int m = 1; m <= 5; ++m)
      for (int j = 1; j <= m; ++j) CHECK(table(m, j) > 0.0);
  }

  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(gfc(2, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gfc(2, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gfc(2, 1, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(gfc_direct(21, 1, 0.5), std::out_of_range);
    CHECK_THROWS_AS(gfc_stirling_expansion(21, 1, 0.5), std::out_of_range);
  }

  SUBCASE("direct-sum oracle examples") {
    CHECK(gfc_direct(1, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(gfc_direct(2, 1, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gfc_direct(2, 2, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("stirling-expansion oracle examples") {
    CHECK(gfc_stirling_expansion(2, 2, 0.5) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gfc_stirling_expansion(3, 1, 0.25) ==
          doctest::Approx(0.328125).epsilon(1e-14));
    for (double beta : {0.2, 0.6, 0.9}) {
      for (int m = 1; m <= 6; ++m) {
        CHECK(gfc_stirling_expansion(m, m, beta) ==
              doctest::Approx(pow_int(beta, m)).epsilon(1e-13));
      }
    }
  }

  SUBCASE("three formulas agree to 1e-9 on the full grid") {
    for (int m = 1; m <= 12; ++m) {
      for (int j = 1; j <= m; ++j) {
        for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          const double a = gfc(m, j, beta);
          CHECK(std::fabs(gfc_direct(m, j, beta) - a) / a <= 1e-9);
          CHECK(std::fabs(gfc_stirling_expansion(m, j, beta) - a) / a <= 1e-9);
        }
      }
    }
  }

  SUBCASE("first-column anchor to 1e-12") {
    for (int m = 1; m <= 12; ++m) {
      for (double beta : {0.1, 0.35, 0.65, 0.9}) {
        const double anchor = beta * rising_factorial_d(1.0 - beta, m - 1);
        CHECK(gfc(m, 1, beta) == doctest::Approx(anchor).epsilon(1e-12));
      }
    }
  }

  SUBCASE("beta -> 0 recovers unsigned Stirling numbers") {
    const double beta = 1e-6;
    for (int m = 1; m <= 8; ++m) {
      for (int j = 1; j <= m; ++j) {
        const double scaled = gfc(m, j, beta) / pow_int(beta, j);
        const double target =
            static_cast<double>(stirling_first_unsigned(m, j));
        CHECK(std::fabs(scaled - target) / target <= 1e-4);
      }
    }
  }
}

TEST_CASE("compositions") {
  const auto c22 = compositions(2, 2);
  REQUIRE(c22.size() == 3);
  CHECK(c22[0].parts == std::vector<int>{0, 2});
  CHECK(c22[1].parts == std::vector<int>{1, 1});
  CHECK(c22[2].parts == std::vector<int>{2, 0});

  const auto c03 = compositions(0, 3);
  REQUIRE(c03.size() == 1);
  CHECK(c03[0].parts == std::vector<int>{0, 0, 0});

  CHECK(compositions(3, 2).size() == 4);  // stars and bars C(4,1)

  CHECK_THROWS_AS(compositions(2, 0), std::invalid_argument);

  SUBCASE("count, distinctness, totals, order") {
    for (int n = 0; n <= 6; ++n) {
      for (int L = 1; L <= 4; ++L) {
        const auto cs = compositions(n, L);
        CHECK(cs.size() == binomial(n + L - 1, L - 1));
        std::set<std::vector<int>> seen;
        for (const auto& comp : cs) {
          CHECK(static_cast<int>(comp.parts.size()) == L);
          CHECK(std::accumulate(comp.parts.begin(), comp.parts.end(), 0) == n);
          CHECK(comp.total == n);
          for (int p : comp.parts) CHECK(p >= 0);
          seen.insert(comp.parts);
        }
        CHECK(seen.size() == cs.size());
        for (size_t i = 1; i < cs.size(); ++i) {
          CHECK(cs[i - 1].parts < cs[i].parts);  // strict lexicographic
        }
      }
    }
  }
}
