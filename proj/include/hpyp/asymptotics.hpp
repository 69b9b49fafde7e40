#pragma once

#include <vector>

#include "hpyp/combinatorics.hpp"

namespace hpyp {

// Thrown when an internal identity fails (e.g. an assembled asymptotic
// variance comes out negative); maps to CLI exit code 3.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cost caps for the composition sums. A_tilde is a triple composition sum
// whose cost grows like C(m+L-1, L-1)^2 * C(j+L-1, L-1); beyond the defaults
// you get minutes, not seconds, so overrides pass through a deliberate knob.
struct CoeffLimits {
  int max_m = 6;
  int max_L = 4;
};

// Coefficient families of the L-group CLT, all at fixed (m, L, beta) with the
// (alpha, c)-weighted quantities (C_m, B_k) evaluated at the given point.
struct CoefficientTable {
  int m = 0;
  int L = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double c = 1.0;

  std::vector<double> A;        // A_j, index 0 <-> j = 1, size m
  std::vector<double> A_tilde;  // index 0 <-> j = 1, size 2m
  std::vector<Composition> comps;  // M_{m,L}, lexicographic
  std::vector<double> C;           // C_m per composition, sums to 1
  std::vector<double> B;           // B_k, k = 1..L (identical by symmetry)
  std::vector<double> g;           // g_k = sum_m C_m m_k (= m/L)
  double f_tilde = 0.0;            // sum_j A_j w_j
  double J = 0.0;                  // sum_j j A_j w_j / f_tilde

  double w(int j) const;  // (1-alpha)_(j-1) / (beta^j c^(j-1))
};

// A_j(beta, m, L) for j = 1..m (index 0 <-> j = 1).
std::vector<double> a_coeffs(int m, int L, double beta);

// A~_j(beta, m, L) for j = 1..2m.
std::vector<double> a_tilde_coeffs(int m, int L, double beta,
                                   const CoeffLimits& limits = {});

CoefficientTable coeff_table(int m, int L, double alpha, double beta, double c,
                             const CoeffLimits& limits = {});

// Asymptotic variance components. The three sigma^2 pieces follow the paper's
// statement formulas verbatim. The delta and cross terms are assembled from
// the joint-CLT covariances with the group total masses treated as
// N(0, (1-beta) I + beta 11^T) -- the shared gamma time change correlates
// them -- which reduces to the single-group-style m^2 / 2m^2 terms at L = 1
// and in the beta -> 0 limit. See the project notes for the derivation.
double sigma2_level1(int m, int L, double alpha, double beta, double c);
double sigma2_gamma(int m, int L, double alpha, double beta, double c);
double sigma2_stable(int m, int L, double alpha, double beta, double c,
                     const CoeffLimits& limits = {});
double delta_method_term(int m, int L, double alpha, double beta, double c,
                         const CoeffLimits& limits = {});
double cross_term(int m, int L, double alpha, double beta, double c,
                  const CoeffLimits& limits = {});

struct VarianceBreakdown {
  double sigma2_X = 0.0;
  double sigma2_T = 0.0;
  double sigma2_1 = 0.0;
  double delta_term = 0.0;
  double cross_term = 0.0;
  double total = 0.0;  // X + T + 1 + delta - cross

  bool operator==(const VarianceBreakdown&) const = default;
};

// Throws internal_error if the assembled total is negative.
VarianceBreakdown sigma2_total(int m, int L, double alpha, double beta,
                               double c, const CoeffLimits& limits = {});

// Limit covariance of the scaled PD(alpha, .) homozygosities:
// (1-a)_(i+j-1) / ((1-a)_(i-1) (1-a)_(j-1)) + a - ij.
double handa_covariance(double alpha, int i, int j);

// Covariance matrix of the gamma power vector: entries beta * i * j.
std::vector<std::vector<double>> gamma_cov_matrix(double beta, int m);

}  // namespace hpyp
