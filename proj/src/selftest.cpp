#include "hpyp/selftest.hpp"

#include <cmath>
#include <cstdio>

#include "hpyp/asymptotics.hpp"
#include "hpyp/moments.hpp"
#include "hpyp/numeric.hpp"

namespace hpyp {

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

}  // namespace

int run_selftest(bool verbose,
                 const std::function<void(const std::string&)>& sink) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    if (!ok) ++failures;
    if (verbose || !ok) sink(std::string(ok ? "ok   " : "FAIL ") + name);
  };

  // gfc: three formulas agree
  {
    double worst = 0.0;
    for (int m = 1; m <= 10; ++m) {
      for (int j = 1; j <= m; ++j) {
        for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          const double a = gfc(m, j, beta);
          worst = std::max(worst, rel_err(gfc_direct(m, j, beta), a));
          worst = std::max(worst, rel_err(gfc_stirling_expansion(m, j, beta), a));
        }
      }
    }
    check("gfc triple agreement (m <= 10) <= 1e-9, worst " + sci(worst),
          worst <= 1e-9);
  }

  // gfc(m,1,beta) = beta (1-beta)_(m-1)
  {
    double worst = 0.0;
    for (int m = 1; m <= 10; ++m) {
      for (double beta : {0.2, 0.5, 0.8}) {
        worst = std::max(worst, rel_err(gfc(m, 1, beta),
                                        beta * rising_factorial_d(1 - beta, m - 1)));
      }
    }
    check("gfc(m,1,beta) anchor <= 1e-12", worst <= 1e-12);
  }

  // gfc(m,j,b)/b^j -> unsigned Stirling first as b -> 0
  {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
      for (int j = 1; j <= m; ++j) {
        const double b = 1e-6;
        const double got = gfc(m, j, b) / pow_int(b, j);
        worst = std::max(
            worst,
            rel_err(got, static_cast<double>(stirling_first_unsigned(m, j))));
      }
    }
    check("gfc Stirling limit (m <= 6) <= 1e-4", worst <= 1e-4);
  }

  // sum_k [n k] x^k = (x)_(n)
  {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      for (double x : {1.0, 2.0, 0.5}) {
        double lhs = 0.0;
        for (int k = 0; k <= n; ++k) {
          lhs += static_cast<double>(stirling_first_unsigned(n, k)) *
                 pow_int(x, k);
        }
        worst = std::max(worst, rel_err(lhs, rising_factorial(x, n).value()));
      }
    }
    check("Stirling/rising-factorial identity <= 1e-10", worst <= 1e-10);
  }

  // partial-sum closed form vs direct summation
  {
    double worst = 0.0;
    for (double alpha : {0.2, 0.5, 0.8}) {
      for (double theta0 : {0.5, 5.0, 50.0}) {
        for (int j : {1, 2, 3}) {
          double direct = 0.0;
          for (int k = 1; k <= 1000; ++k)
            direct += ev_vk_power(k, j, alpha, theta0);
          worst = std::max(
              worst, rel_err(ev_partial_sum(1000, j, alpha, theta0), direct));
        }
      }
    }
    check("partial-sum telescoping <= 1e-10", worst <= 1e-10);
  }

  // L = 1 collapses
  {
    double worst = 0.0;
    const int m = 3;
    for (double beta : {0.3, 0.6}) {
      const auto A = a_coeffs(m, 1, beta);
      const auto At = a_tilde_coeffs(m, 1, beta);
      for (int j = 1; j <= m; ++j)
        worst = std::max(worst, rel_err(A[j - 1], gfc(m, j, beta)));
      for (int j = 1; j <= 2 * m; ++j)
        worst = std::max(worst, rel_err(At[j - 1], gfc(2 * m, j, beta)));
      const auto t = coeff_table(m, 1, 0.4, beta, 1.3);
      worst = std::max(worst, rel_err(t.C.at(0), 1.0));
      worst = std::max(
          worst, rel_err(delta_method_term(m, 1, 0.4, beta, 1.3), 9.0));
      worst = std::max(worst, rel_err(cross_term(m, 1, 0.4, beta, 1.3), 18.0));
    }
    check("L=1 collapses (A, A~, C, delta, cross) <= 1e-12", worst <= 1e-12);
  }

  // Handa limit at c = 1e6, spot value 4.0 at m=2, beta=0.5
  {
    const double tot = sigma2_total(2, 1, 0.3, 0.5, 1e6).total;
    const double target =
        rising_factorial_d(0.5, 3) / pow_int(rising_factorial_d(0.5, 1), 2) +
        0.5 - 4.0;
    check("Handa limit spot (m=2, beta=0.5) -> 4.0 within 1e-3",
          rel_err(tot, target) <= 1e-3 && rel_err(target, 4.0) <= 1e-15);
  }

  // sigma2_1 re-derivation through handa_covariance
  {
    double worst = 0.0;
    for (int m : {2, 3}) {
      for (double alpha : {0.3, 0.6}) {
        const double beta = 0.45, c = 1.7;
        const int L = 2;
        const auto t = coeff_table(m, L, alpha, beta, c);
        double acc = 0.0;
        for (int i = 1; i <= m; ++i) {
          for (int j = 1; j <= m; ++j) {
            acc += t.A[i - 1] * t.A[j - 1] * t.w(i) * t.w(j) *
                   handa_covariance(alpha, i, j);
          }
        }
        acc /= c * t.f_tilde * t.f_tilde;
        worst = std::max(worst,
                         rel_err(sigma2_level1(m, L, alpha, beta, c), acc));
      }
    }
    check("sigma2_1 == handa-covariance form <= 1e-12", worst <= 1e-12);
  }

  // f_scale * L^m theta^(m-1) = f_tilde, and the centering product identity
  {
    Params p{0.4, 35.0, 0.6, 50.0};
    double worst = 0.0;
    for (int m : {2, 3}) {
      for (int L : {1, 2}) {
        worst = std::max(
            worst,
            rel_err(f_scale(m, L, p) * pow_int(static_cast<double>(L), m) *
                        pow_int(p.theta, m - 1),
                    f_tilde(m, L, p.alpha, p.beta, p.c())));
      }
    }
    for (int j = 1; j <= 4; ++j) {
      double from0 = 1.0, from1 = 1.0;
      for (int s = 0; s < j; ++s) from0 *= (p.theta + s * p.beta);
      for (int s = 1; s < j; ++s) from1 *= (p.theta + s * p.beta);
      worst = std::max(worst, rel_err(from0, p.theta * from1));
    }
    check("scale identities <= 1e-12", worst <= 1e-12);
  }

  // sum of C_m is 1; B_k and g_k flat across groups
  {
    double worst = 0.0;
    const auto t = coeff_table(3, 3, 0.25, 0.55, 0.8);
    worst = std::max(worst, rel_err(pairwise_sum(t.C), 1.0));
    for (int k = 1; k < 3; ++k) {
      worst = std::max(worst, rel_err(t.B[k], t.B[0]));
      worst = std::max(worst, rel_err(t.g[k], t.g[0]));
    }
    check("C_m normalization and group exchangeability <= 1e-12",
          worst <= 1e-12);
  }

  return failures;
}

}  // namespace hpyp
