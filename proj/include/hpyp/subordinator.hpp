#pragma once

#include <cstdint>
#include <stdexcept>

#include "hpyp/rng.hpp"

namespace hpyp {

// Raised when a tilted-stable draw would cost more than the configured
// rejection budget (expected proposals are e^scale_mass).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Law of one subordinator increment W given (V, gamma): Laplace transform
// exp(-s [(lambda+1)^beta - 1]) with s = scale_mass = gamma * V.
struct TiltedStableSpec {
  double beta = 0.5;
  double scale_mass = 1.0;
  double max_scale_mass = 25.0;  // refusal line, not a comfortable budget

  void validate() const;
};

struct TiltedStableStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepts = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 0.0
                          : static_cast<double>(accepts) / proposals;
  }
};

// gamma_{1/beta}: one Gamma(theta/beta, 1) draw.
double sample_gamma_total(double theta, double beta, Rng& rng);

// Positive beta-stable with Laplace exp(-scale * lambda^beta), by the
// Kanter/Zolotarev representation.
double sample_positive_stable(double beta, double scale, Rng& rng);

// Exponentially tilted stable: propose from the stable law, accept with
// probability e^{-S}. Acceptance rate is e^{-s} overall.
double sample_tilted_stable(const TiltedStableSpec& spec, Rng& rng,
                            TiltedStableStats* stats = nullptr);

// E[W^m | V, gamma] = sum_j C(m,j,beta) (gamma v)^j.
double conditional_moment_w(int m, double beta, double gamma_value, double v);

// E[W^m | V] = sum_j C(m,j,beta) prod_{s=0}^{j-1}(theta+s beta) / beta^j v^j.
double unconditional_moment_w(int m, double beta, double theta, double v);

}  // namespace hpyp
