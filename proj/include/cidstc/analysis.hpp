#pragma once

#include <optional>
#include <vector>

#include "cidstc/channel.hpp"
#include "cidstc/numerics.hpp"

namespace cidstc {

/// Parameters of the closed-form PEP bounds. rho2 / rho2_prime are the
/// worst-pair minimum singular values of the difference Gram matrix for the
/// CIDSTC and the RDSTC baseline respectively; P is total power (linear).
struct PepParams {
  int R = 1;
  int T = 4;
  double rho2 = 1.0;
  double rho2_prime = 1.0;
  double P = 10.0;
};

/// Conditional Chernoff bound exp(-P' h^H U h) with U = (S - S')^H (S - S').
double chernoff_pep(const ComplexMatrix& s, const ComplexMatrix& s_prime,
                    const ComplexVector& h, double p_prime);

/// prod_j 4 / (2 + P' rho^2 g_j)^2 over the per-relay fade powers g_j.
double pep_bound_given_g(double rho2, double p_prime,
                         const std::vector<double>& g_per_relay);

/// P1 = P/2, P2 = P/(4R).
PowerAllocation optimal_power_split(double P, int R);

/// Exact P' = P1 P2 T / (4 (1 + P1 + P2 g)).
double p_prime_exact(const PowerAllocation& pw, int T, double g);

/// Large-P approximation P' ~= P T / (8 (2R + g)) under the optimal split.
double p_prime_approx(double P, int T, int R, double g);

/// [64R / (T rho^2)]^{2R} (log P)^R / P^{2R}. Requires T >= 4R and P >= 1.
double cidstc_pep_bound(const PepParams& p);

/// [32R / (T rho'^2)]^{2R} (log P)^{2R} / P^{2R}. Requires P >= 1.
double rdstc_pep_bound(const PepParams& p);

/// 1 - (2 rho'/rho)^{2R} (1/log P)^R. At P = 1 the limit -infinity is returned.
double fractional_pep_change(const PepParams& p);

enum class Scheme { Cidstc, Rdstc };

/// 2R (1 - log log P / (2 log P)) for CIDSTC,
/// 2R (1 - log log P / log P) for RDSTC. Requires P > e.
double diversity_order(double P, int R, Scheme scheme);

/// Power level where the two closed-form bounds cross, by bisection to 1e-6
/// relative, or nullopt when there is no sign change in [p_lo, p_hi].
std::optional<double> bound_crossover(const PepParams& p, double p_lo,
                                      double p_hi);

}  // namespace cidstc
