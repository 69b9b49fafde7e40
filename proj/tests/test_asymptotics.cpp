#include <doctest.h>

#include <cmath>

#include "hpyp/asymptotics.hpp"
#include "hpyp/numeric.hpp"

using namespace hpyp;

namespace {

double w_of(int j, double alpha, double beta, double c) {
  return rising_factorial_d(1.0 - alpha, j - 1) /
         (pow_int(beta, j) * pow_int(c, j - 1));
}

// Brute-force A_j: enumerate every (m-composition, j-composition) pair and
// multiply gfc values, with no polynomial shortcut.
double a_coeff_brute(int m, int L, int j, double beta) {
  double acc = 0.0;
  for (const auto& mc : compositions(m, L)) {
    for (const auto& jc : compositions(j, L)) {
      double prod = 1.0;
      for (int l = 0; l < L && prod != 0.0; ++l) {
        const int ml = mc.parts[l], jl = jc.parts[l];
        if (jl > ml || (ml >= 1 && jl == 0)) {
          prod = 0.0;
        } else if (ml >= 1) {
          prod *= gfc(ml, jl, beta);
        }
      }
      acc += prod;
    }
  }
  return acc;
}

double a_tilde_brute(int m, int L, int j, double beta) {
  double acc = 0.0;
  for (const auto& m1 : compositions(m, L)) {
    for (const auto& m2 : compositions(m, L)) {
      for (const auto& jc : compositions(j, L)) {
        double prod = 1.0;
        for (int l = 0; l < L && prod != 0.0; ++l) {
          const int ml = m1.parts[l] + m2.parts[l], jl = jc.parts[l];
          if (jl > ml || (ml >= 1 && jl == 0)) {
            prod = 0.0;
          } else if (ml >= 1) {
            prod *= gfc(ml, jl, beta);
          }
        }
        acc += prod;
      }
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("coefficient table: L = 1 collapse") {
  for (int m : {2, 3}) {
    for (double beta : {0.3, 0.5, 0.8}) {
      const auto t = coeff_table(m, 1, 0.4, beta, 1.5);
      for (int j = 1; j <= m; ++j)
        CHECK(t.A[j - 1] == doctest::Approx(gfc(m, j, beta)).epsilon(1e-12));
      for (int j = 1; j <= 2 * m; ++j)
        CHECK(t.A_tilde[j - 1] ==
              doctest::Approx(gfc(2 * m, j, beta)).epsilon(1e-12));
      REQUIRE(t.C.size() == 1);
      CHECK(t.C[0] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(t.g[0] == doctest::Approx(m).epsilon(1e-14));
    }
  }
}

TEST_CASE("coefficient table vs brute-force composition enumeration") {
  for (int m : {2, 3, 4}) {
    for (int L : {1, 2, 3}) {
      const double beta = 0.45;
      const auto A = a_coeffs(m, L, beta);
      for (int j = 1; j <= m; ++j) {
        CHECK(A[j - 1] ==
              doctest::Approx(a_coeff_brute(m, L, j, beta)).epsilon(1e-12));
      }
      const auto At = a_tilde_coeffs(m, L, beta);
      for (int j = 1; j <= 2 * m; ++j) {
        CHECK(At[j - 1] ==
              doctest::Approx(a_tilde_brute(m, L, j, beta)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("coefficient table: A_2 at m=2, L=2 includes the cross product") {
  // compositions (2,0),(0,2) each give C(2,2,b); (1,1) gives C(1,1,b)^2 = b^2
  const double beta = 0.37;
  const auto A = a_coeffs(2, 2, beta);
  CHECK(A[1] == doctest::Approx(2.0 * gfc(2, 2, beta) + beta * beta)
                    .epsilon(1e-13));
  CHECK(A[0] == doctest::Approx(2.0 * gfc(2, 1, beta)).epsilon(1e-13));
}

TEST_CASE("coefficient table: C_m normalization, B_k/g_k exchangeability") {
  for (int m : {2, 3}) {
    for (int L : {2, 3}) {
      const auto t = coeff_table(m, L, 0.3, 0.55, 0.8);
      CHECK(pairwise_sum(t.C) == doctest::Approx(1.0).epsilon(1e-12));
      double gsum = 0.0;
      for (int k = 0; k < L; ++k) {
        CHECK(t.B[k] == doctest::Approx(t.B[0]).epsilon(1e-12));
        CHECK(t.g[k] == doctest::Approx(t.g[0]).epsilon(1e-12));
        gsum += t.g[k];
      }
      // sum_k sum_m C_m m_k = m * sum_m C_m
      CHECK(gsum == doctest::Approx(static_cast<double>(m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("B_k single-group reduction") {
  // B_1 = sum_j (m - b j) C(m,j,b) w_j / sum_j C(m,j,b) w_j at L = 1
  const int m = 3;
  const double alpha = 0.35, beta = 0.6, c = 1.4;
  const auto t = coeff_table(m, 1, alpha, beta, c);
  double num = 0.0, den = 0.0;
  for (int j = 1; j <= m; ++j) {
    num += (m - beta * j) * gfc(m, j, beta) * w_of(j, alpha, beta, c);
    den += gfc(m, j, beta) * w_of(j, alpha, beta, c);
  }
  CHECK(t.B[0] == doctest::Approx(num / den).epsilon(1e-12));
  // and B_1 + beta * J = m
  CHECK(t.B[0] + beta * t.J == doctest::Approx(m).epsilon(1e-12));
}

TEST_CASE("sigma2_1") {
  SUBCASE("hand oracle at m = 2, L = 1: 2(1-a) / (c^3 f~^2)") {
    // the (1,1) and (1,2) brackets vanish identically; only (2,2) survives
    // with bracket 2(1-a) after expansion.
    for (double alpha : {0.2, 0.5, 0.7}) {
      for (double beta : {0.3, 0.6}) {
        for (double c : {0.5, 1.0, 2.0}) {
          const double ft = (1.0 - beta) + (1.0 - alpha) / c;
          const double expect = 2.0 * (1.0 - alpha) / (c * c * c * ft * ft);
          CHECK(sigma2_level1(2, 1, alpha, beta, c) ==
                doctest::Approx(expect).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("i = j = 1 bracket cancels exactly") {
    // (1-a)_(1) + (a-1)(1)(1) = 0 forces the j=1 diagonal out
    for (double alpha : {0.0, 0.4, 0.9}) {
      const double bracket =
          rising_factorial_d(1.0 - alpha, 1) + (alpha - 1.0);
      CHECK(bracket == 0.0);
    }
  }

  SUBCASE("c -> infinity kills the level-1 piece") {
    CHECK(sigma2_level1(2, 1, 0.3, 0.5, 1e6) <= 1e-5);
    CHECK(sigma2_level1(3, 2, 0.6, 0.4, 1e6) <= 1e-5);
  }
}

TEST_CASE("sigma2_T") {
  SUBCASE("factorizes as beta (sum_j j A_j w_j / f~)^2") {
    for (int m : {2, 3}) {
      for (int L : {1, 2}) {
        const double alpha = 0.25, beta = 0.65, c = 1.8;
        const auto t = coeff_table(m, L, alpha, beta, c);
        const double expect = beta * t.J * t.J;
        CHECK(sigma2_gamma(m, L, alpha, beta, c) ==
              doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }

  SUBCASE("hand oracle at m = 2, L = 1") {
    const double alpha = 0.5, beta = 0.5, c = 1.0;
    // A_1 w_1 = (1-b), A_2 w_2 = (1-a)/c; J-weighted sum doubles the j=2 term
    const double ft = (1.0 - beta) + (1.0 - alpha) / c;
    const double expect =
        beta * pow_int(((1.0 - beta) + 2.0 * (1.0 - alpha) / c) / ft, 2);
    CHECK(sigma2_gamma(2, 1, alpha, beta, c) ==
          doctest::Approx(expect).epsilon(1e-13));
    CHECK(sigma2_gamma(2, 1, alpha, beta, c) ==
          doctest::Approx(1.125).epsilon(1e-13));
  }

  SUBCASE("beta -> 0 stability (HDP direction)") {
    const double a = sigma2_gamma(2, 1, 0.0, 1e-6, 1.0);
    const double b = sigma2_gamma(2, 1, 0.0, 1e-7, 1.0);
    CHECK(std::fabs(a - b) / b <= 1e-3);
  }
}

TEST_CASE("sigma2_X") {
  SUBCASE("hand oracle at m = 2, L = 1, c = 1, alpha = beta = 0.5") {
    // assembled from gfc_direct values and explicit w_j arithmetic
    const double beta = 0.5, alpha = 0.5, c = 1.0;
    double num = 0.0;
    for (int j = 1; j <= 4; ++j)
      num += gfc_direct(4, j, beta) * w_of(j, alpha, beta, c);
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        num -= gfc_direct(2, i, beta) * gfc_direct(2, j, beta) *
               rising_factorial_d(1.0 - alpha, i + j - 1) /
               (pow_int(beta, i + j) * pow_int(c, i + j - 1));
      }
    }
    const double ft = (1.0 - beta) + (1.0 - alpha) / c;
    CHECK(sigma2_stable(2, 1, alpha, beta, c) ==
          doctest::Approx(num / (ft * ft)).epsilon(1e-12));
    CHECK(sigma2_stable(2, 1, alpha, beta, c) ==
          doctest::Approx(5.125).epsilon(1e-13));
  }

  SUBCASE("L = 1, c -> infinity: (1-b)_(2m-1)/(1-b)_(m-1)^2 - 1") {
    for (int m : {2, 3}) {
      for (double beta : {0.3, 0.6}) {
        const double expect =
            rising_factorial_d(1.0 - beta, 2 * m - 1) /
                pow_int(rising_factorial_d(1.0 - beta, m - 1), 2) -
            1.0;
        CHECK(sigma2_stable(m, 1, 0.4, beta, 1e6) ==
              doctest::Approx(expect).epsilon(1e-3));
      }
    }
  }

  SUBCASE("nonnegative on the grid") {
    for (int m : {2, 3}) {
      for (int L : {1, 2, 3}) {
        for (double ab : {0.25, 0.5, 0.75}) {
          CHECK(sigma2_stable(m, L, ab, ab, 1.0) >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("delta and cross terms") {
  SUBCASE("L = 1: delta = m^2, cross = 2 m^2") {
    for (int m : {2, 3}) {
      CHECK(delta_method_term(m, 1, 0.4, 0.55, 1.2) ==
            doctest::Approx(m * m).epsilon(1e-12));
      CHECK(cross_term(m, 1, 0.4, 0.55, 1.2) ==
            doctest::Approx(2.0 * m * m).epsilon(1e-12));
    }
  }

  SUBCASE("exchangeable groups: delta = (1-b) L (m/L)^2 + b m^2") {
    const int m = 3, L = 3;
    const double beta = 0.55;
    const double inner = static_cast<double>(m) / L;
    CHECK(delta_method_term(m, L, 0.3, beta, 0.9) ==
          doctest::Approx((1.0 - beta) * L * inner * inner + beta * m * m)
              .epsilon(1e-12));
  }

  SUBCASE("cross term is positive on the grid") {
    for (int m : {2, 3}) {
      for (int L : {1, 2, 3}) {
        CHECK(cross_term(m, L, 0.5, 0.5, 1.0) > 0.0);
      }
    }
  }
}

TEST_CASE("sigma2_total") {
  SUBCASE("frozen hand-assembled values at the CLT configs") {
    // m=2, alpha=beta=0.5, c=1. L=1: X=5.125 T=1.125 Y=1 delta=4 cross=8.
    // L=2: X=2.5 T=1.28 Y=1.44 delta=3 cross=5.6 (all hand-derived).
    const auto v1 = sigma2_total(2, 1, 0.5, 0.5, 1.0);
    CHECK(v1.sigma2_X == doctest::Approx(5.125).epsilon(1e-12));
    CHECK(v1.sigma2_T == doctest::Approx(1.125).epsilon(1e-12));
    CHECK(v1.sigma2_1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v1.delta_term == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(v1.cross_term == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(v1.total == doctest::Approx(3.25).epsilon(1e-12));

    const auto v2 = sigma2_total(2, 2, 0.5, 0.5, 1.0);
    CHECK(v2.sigma2_X == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(v2.sigma2_T == doctest::Approx(1.28).epsilon(1e-12));
    CHECK(v2.sigma2_1 == doctest::Approx(1.44).epsilon(1e-12));
    CHECK(v2.delta_term == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(v2.cross_term == doctest::Approx(5.6).epsilon(1e-12));
    CHECK(v2.total == doctest::Approx(2.62).epsilon(1e-12));
  }

  SUBCASE("components sum per the printed signs") {
    const auto v = sigma2_total(3, 2, 0.3, 0.6, 1.7);
    CHECK(v.total == doctest::Approx(v.sigma2_X + v.sigma2_T + v.sigma2_1 +
                                     v.delta_term - v.cross_term)
                         .epsilon(1e-13));
  }

  SUBCASE("Handa limit at c = 1e6 (m in {2,3}, alpha, beta in {0.3, 0.6})") {
    for (int m : {2, 3}) {
      for (double alpha : {0.3, 0.6}) {
        for (double beta : {0.3, 0.6}) {
          const double expect =
              rising_factorial_d(1.0 - beta, 2 * m - 1) /
                  pow_int(rising_factorial_d(1.0 - beta, m - 1), 2) +
              beta - static_cast<double>(m) * m;
          const auto v = sigma2_total(m, 1, alpha, beta, 1e6);
          CHECK(std::fabs(v.total - expect) / std::fabs(expect) <= 1e-3);
        }
      }
    }
    // spot value m=2, beta=0.5: 7.5 + 0.5 - 4 = 4
    CHECK(sigma2_total(2, 1, 0.3, 0.5, 1e6).total ==
          doctest::Approx(4.0).epsilon(1e-3));
  }

  SUBCASE("Handa limit equals handa_covariance diagonal") {
    for (int m : {2, 3}) {
      for (double alpha : {0.3, 0.6}) {
        const auto v = sigma2_total(m, 1, alpha, 0.45, 1e6);
        CHECK(std::fabs(v.total - handa_covariance(0.45, m, m)) /
                  handa_covariance(0.45, m, m) <=
              1e-3);
      }
    }
  }

  SUBCASE("HDP limit stability: alpha = 0, beta = 1e-5 vs 1e-6") {
    for (int m : {2, 3}) {
      for (int L : {1, 2}) {
        for (double c : {0.5, 1.0, 2.0}) {
          const double a = sigma2_total(m, L, 0.0, 1e-5, c).total;
          const double b = sigma2_total(m, L, 0.0, 1e-6, c).total;
          CHECK(std::fabs(a - b) / std::fabs(b) <= 1e-3);
        }
      }
    }
  }

  SUBCASE("nonnegativity across the validation grid") {
    for (int m : {2, 3}) {
      for (int L : {1, 2, 3}) {
        for (double alpha : {0.25, 0.5, 0.75}) {
          for (double beta : {0.25, 0.5, 0.75}) {
            for (double c : {0.25, 1.0, 4.0}) {
              const auto v = sigma2_total(m, L, alpha, beta, c);
              CHECK(v.sigma2_X >= 0.0);
              CHECK(v.sigma2_T >= 0.0);
              CHECK(v.sigma2_1 >= 0.0);
              CHECK(v.total >= 0.0);
            }
          }
        }
      }
    }
  }

  SUBCASE("parameter errors") {
    CHECK_THROWS_AS(sigma2_total(1, 1, 0.3, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma2_total(2, 0, 0.3, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma2_total(2, 1, 0.3, 0.5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(sigma2_total(8, 1, 0.3, 0.5, 1.0), std::out_of_range);
  }
}

TEST_CASE("handa covariance") {
  // alpha = 0, i = j = 2: 3!/1 + 0 - 4 = 2
  CHECK(handa_covariance(0.0, 2, 2) == doctest::Approx(2.0).epsilon(1e-14));
  // vanishes when either index is 1 (H_1 is constant)
  for (int j : {1, 2, 3, 5}) {
    CHECK(handa_covariance(0.37, 1, j) == doctest::Approx(0.0).epsilon(1e-13));
  }
  for (double alpha : {0.2, 0.6}) {
    for (int i : {2, 3, 4}) {
      for (int j : {2, 3, 4}) {
        CHECK(handa_covariance(alpha, i, j) ==
              doctest::Approx(handa_covariance(alpha, j, i)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("gamma covariance matrix") {
  const double beta = 0.4;
  const int m = 5;
  const auto cov = gamma_cov_matrix(beta, m);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      CHECK(cov[i - 1][j - 1] == doctest::Approx(beta * i * j).epsilon(1e-14));
    }
  }
  // rank one: every 2x2 minor vanishes
  for (int i = 0; i < m - 1; ++i) {
    for (int j = 0; j < m - 1; ++j) {
      const double minor = cov[i][j] * cov[i + 1][j + 1] -
                           cov[i][j + 1] * cov[i + 1][j];
      CHECK(minor == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
  // trace = beta m(m+1)(2m+1)/6
  double tr = 0.0;
  for (int i = 0; i < m; ++i) tr += cov[i][i];
  CHECK(tr == doctest::Approx(beta * m * (m + 1) * (2 * m + 1) / 6.0)
                  .epsilon(1e-13));
}
