#include "hpyp/asymptotics.hpp"

#include <cmath>

#include "hpyp/numeric.hpp"

namespace hpyp {

namespace {

void check_point(int m, int L, double alpha, double beta, double c) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  if (L < 1) throw std::invalid_argument("need L >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("need alpha in [0,1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("need beta in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("need c > 0");
}

void check_limits(int m, int L, const CoeffLimits& limits) {
  if (m > limits.max_m || L > limits.max_L)
    throw std::out_of_range(
        "coefficient sums capped at m <= " + std::to_string(limits.max_m) +
        ", L <= " + std::to_string(limits.max_L) +
        " (raise CoeffLimits to override)");
}

// Coefficient of x^j in prod_l sum_{j_l} C(parts[l], j_l, beta) x^{j_l};
// equals sum over j-compositions of prod_l C(parts[l], j_l, beta) with the
// boundary conventions baked into the table.
std::vector<double> gfc_poly_product(const std::vector<int>& parts,
                                     const GfcTable& table) {
  std::vector<double> poly{1.0};
  for (int ml : parts) {
    std::vector<double> next(poly.size() + ml, 0.0);
    for (size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] == 0.0) continue;
      for (int j = (ml >= 1 ? 1 : 0); j <= ml; ++j) {
        next[i + j] += poly[i] * table(ml, j);
      }
    }
    poly = std::move(next);
  }
  return poly;
}

double w_factor(int j, double alpha, double beta, double c) {
  return rising_factorial_d(1.0 - alpha, j - 1) /
         (pow_int(beta, j) * pow_int(c, j - 1));
}

}  // namespace

double CoefficientTable::w(int j) const { return w_factor(j, alpha, beta, c); }

std::vector<double> a_coeffs(int m, int L, double beta) {
  if (m < 1 || L < 1) throw std::invalid_argument("a_coeffs: need m, L >= 1");
  GfcTable table(m, beta);
  std::vector<double> A(m, 0.0);
  for (const auto& comp : compositions(m, L)) {
    const auto poly = gfc_poly_product(comp.parts, table);
    for (int j = 1; j <= m && j < static_cast<int>(poly.size()); ++j) {
      A[j - 1] += poly[j];
    }
  }
  return A;
}

std::vector<double> a_tilde_coeffs(int m, int L, double beta,
                                   const CoeffLimits& limits) {
  if (m < 1 || L < 1)
    throw std::invalid_argument("a_tilde_coeffs: need m, L >= 1");
  check_limits(m, L, limits);
  GfcTable table(2 * m, beta);
  std::vector<double> At(2 * m, 0.0);
  const auto comps = compositions(m, L);
  std::vector<int> merged(L);
  for (const auto& c1 : comps) {
    for (const auto& c2 : comps) {
      for (int l = 0; l < L; ++l) merged[l] = c1.parts[l] + c2.parts[l];
      const auto poly = gfc_poly_product(merged, table);
      for (int j = 1; j <= 2 * m && j < static_cast<int>(poly.size()); ++j) {
        At[j - 1] += poly[j];
      }
    }
  }
  return At;
}

CoefficientTable coeff_table(int m, int L, double alpha, double beta, double c,
                             const CoeffLimits& limits) {
  check_point(m, L, alpha, beta, c);
  check_limits(m, L, limits);

  CoefficientTable t;
  t.m = m;
  t.L = L;
  t.alpha = alpha;
  t.beta = beta;
  t.c = c;
  t.A = a_coeffs(m, L, beta);
  t.A_tilde = a_tilde_coeffs(m, L, beta, limits);
  t.comps = compositions(m, L);

  t.f_tilde = 0.0;
  double j_weighted = 0.0;
  for (int j = 1; j <= m; ++j) {
    t.f_tilde += t.A[j - 1] * t.w(j);
    j_weighted += j * t.A[j - 1] * t.w(j);
  }
  t.J = j_weighted / t.f_tilde;

  GfcTable table(m, beta);

  // C_m: per-composition share of f_tilde.
  t.C.reserve(t.comps.size());
  for (const auto& comp : t.comps) {
    const auto poly = gfc_poly_product(comp.parts, table);
    double num = 0.0;
    for (int j = 1; j <= m && j < static_cast<int>(poly.size()); ++j) {
      num += poly[j] * t.w(j);
    }
    t.C.push_back(num / t.f_tilde);
  }

  // g_k = sum_m C_m m_k.
  t.g.assign(L, 0.0);
  for (size_t i = 0; i < t.comps.size(); ++i) {
    for (int k = 0; k < L; ++k) t.g[k] += t.C[i] * t.comps[i].parts[k];
  }

  // B_k: numerators sum_j [sum_{m,j} (m_k - beta j_k) prod C] w_j.
  t.B.assign(L, 0.0);
  for (int k = 0; k < L; ++k) {
    double acc = 0.0;
    for (const auto& comp : t.comps) {
      // weighted slot k: Q(x) = sum_j (m_k - beta j) C(m_k, j, beta) x^j,
      // plain slots elsewhere.
      std::vector<double> poly{1.0};
      for (int l = 0; l < L; ++l) {
        const int ml = comp.parts[l];
        std::vector<double> next(poly.size() + ml, 0.0);
        for (size_t i = 0; i < poly.size(); ++i) {
          if (poly[i] == 0.0) continue;
          for (int j = (ml >= 1 ? 1 : 0); j <= ml; ++j) {
            const double coef =
                (l == k) ? (ml - beta * j) * table(ml, j) : table(ml, j);
            next[i + j] += poly[i] * coef;
          }
        }
        poly = std::move(next);
      }
      for (int j = 1; j <= m && j < static_cast<int>(poly.size()); ++j) {
        acc += poly[j] * t.w(j);
      }
    }
    t.B[k] = acc / t.f_tilde;
  }

  return t;
}

double sigma2_level1(int m, int L, double alpha, double beta, double c) {
  check_point(m, L, alpha, beta, c);
  const auto A = a_coeffs(m, L, beta);
  double num = 0.0;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const double bracket =
          rising_factorial_d(1.0 - alpha, i + j - 1) +
          (alpha - static_cast<double>(i) * j) *
              rising_factorial_d(1.0 - alpha, i - 1) *
              rising_factorial_d(1.0 - alpha, j - 1);
      num += A[i - 1] * A[j - 1] * bracket /
             (pow_int(beta, i + j) * pow_int(c, i + j - 1));
    }
  }
  double ft = 0.0;
  for (int j = 1; j <= m; ++j) ft += A[j - 1] * w_factor(j, alpha, beta, c);
  return num / (ft * ft);
}

double sigma2_gamma(int m, int L, double alpha, double beta, double c) {
  check_point(m, L, alpha, beta, c);
  const auto A = a_coeffs(m, L, beta);
  double num = 0.0;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      num += A[i - 1] * A[j - 1] * rising_factorial_d(1.0 - alpha, i - 1) *
             rising_factorial_d(1.0 - alpha, j - 1) * i * j /
             (pow_int(beta, i + j) * pow_int(c, i + j - 2));
    }
  }
  double ft = 0.0;
  for (int j = 1; j <= m; ++j) ft += A[j - 1] * w_factor(j, alpha, beta, c);
  return beta * num / (ft * ft);
}

double sigma2_stable(int m, int L, double alpha, double beta, double c,
                     const CoeffLimits& limits) {
  check_point(m, L, alpha, beta, c);
  const auto A = a_coeffs(m, L, beta);
  const auto At = a_tilde_coeffs(m, L, beta, limits);
  double num = 0.0;
  for (int j = 1; j <= 2 * m; ++j) {
    num += At[j - 1] * w_factor(j, alpha, beta, c);
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      num -= A[i - 1] * A[j - 1] * rising_factorial_d(1.0 - alpha, i + j - 1) /
             (pow_int(beta, i + j) * pow_int(c, i + j - 1));
    }
  }
  double ft = 0.0;
  for (int j = 1; j <= m; ++j) ft += A[j - 1] * w_factor(j, alpha, beta, c);
  return num / (ft * ft);
}

double delta_method_term(int m, int L, double alpha, double beta, double c,
                         const CoeffLimits& limits) {
  const auto t = coeff_table(m, L, alpha, beta, c, limits);
  double sum_g2 = 0.0;
  for (double gk : t.g) sum_g2 += gk * gk;
  return (1.0 - beta) * sum_g2 + beta * static_cast<double>(m) * m;
}

double cross_term(int m, int L, double alpha, double beta, double c,
                  const CoeffLimits& limits) {
  const auto t = coeff_table(m, L, alpha, beta, c, limits);
  double gb = 0.0;
  for (int k = 0; k < L; ++k) gb += t.g[k] * t.B[k];
  return 2.0 * gb + 2.0 * beta * m * t.J;
}

VarianceBreakdown sigma2_total(int m, int L, double alpha, double beta,
                               double c, const CoeffLimits& limits) {
  check_point(m, L, alpha, beta, c);
  check_limits(m, L, limits);
  VarianceBreakdown vb;
  vb.sigma2_X = sigma2_stable(m, L, alpha, beta, c, limits);
  vb.sigma2_T = sigma2_gamma(m, L, alpha, beta, c);
  vb.sigma2_1 = sigma2_level1(m, L, alpha, beta, c);
  vb.delta_term = delta_method_term(m, L, alpha, beta, c, limits);
  vb.cross_term = cross_term(m, L, alpha, beta, c, limits);
  vb.total =
      vb.sigma2_X + vb.sigma2_T + vb.sigma2_1 + vb.delta_term - vb.cross_term;
  if (vb.total < 0.0) {
    throw internal_error(
        "sigma2_total: negative asymptotic variance (" +
        std::to_string(vb.total) + ") at m=" + std::to_string(m) +
        " L=" + std::to_string(L) + " alpha=" + std::to_string(alpha) +
        " beta=" + std::to_string(beta) + " c=" + std::to_string(c));
  }
  return vb;
}

double handa_covariance(double alpha, int i, int j) {
  if (i < 1 || j < 1) throw std::invalid_argument("handa_covariance: i, j >= 1");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("handa_covariance: alpha in [0,1)");
  return rising_factorial_d(1.0 - alpha, i + j - 1) /
             (rising_factorial_d(1.0 - alpha, i - 1) *
              rising_factorial_d(1.0 - alpha, j - 1)) +
         alpha - static_cast<double>(i) * j;
}

std::vector<std::vector<double>> gamma_cov_matrix(double beta, int m) {
  if (m < 1) throw std::invalid_argument("gamma_cov_matrix: m >= 1");
  std::vector<std::vector<double>> out(m, std::vector<double>(m, 0.0));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) out[i - 1][j - 1] = beta * i * j;
  }
  return out;
}

}  // namespace hpyp
