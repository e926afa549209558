#include "cidstc/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace cidstc {

double chernoff_pep(const ComplexMatrix& s, const ComplexMatrix& s_prime,
                    const ComplexVector& h, double p_prime) {
  if (s.rows() != s_prime.rows() || s.cols() != s_prime.cols()) {
    throw std::invalid_argument("chernoff_pep: codeword shapes differ");
  }
  if (s.cols() != h.size()) {
    throw std::invalid_argument("chernoff_pep: channel dimension mismatch");
  }
  const ComplexVector diff = (s - s_prime) * h;
  return std::exp(-p_prime * diff.squaredNorm());
}

double pep_bound_given_g(double rho2, double p_prime,
                         const std::vector<double>& g_per_relay) {
  double out = 1.0;
  for (double g : g_per_relay) {
    const double denom = 2.0 + p_prime * rho2 * g;
    out *= 4.0 / (denom * denom);
  }
  return out;
}

PowerAllocation optimal_power_split(double P, int R) {
  if (P <= 0.0 || R < 1) {
    throw std::invalid_argument("optimal_power_split: bad arguments");
  }
  PowerAllocation pw;
  pw.P = P;
  pw.P1 = P / 2.0;
  pw.P2 = P / (4.0 * R);
  return pw;
}

double p_prime_exact(const PowerAllocation& pw, int T, double g) {
  return pw.P1 * pw.P2 * T / (4.0 * (1.0 + pw.P1 + pw.P2 * g));
}

double p_prime_approx(double P, int T, int R, double g) {
  return P * T / (8.0 * (2.0 * R + g));
}

double cidstc_pep_bound(const PepParams& p) {
  if (p.P < 1.0 || p.rho2 <= 0.0 || p.T < 4 * p.R) {
    throw std::invalid_argument("cidstc_pep_bound: bad parameters");
  }
  const double base = 64.0 * p.R / (p.T * p.rho2);
  const double lp = std::log(p.P);
  return std::pow(base, 2.0 * p.R) * std::pow(lp, p.R) /
         std::pow(p.P, 2.0 * p.R);
}

double rdstc_pep_bound(const PepParams& p) {
  if (p.P < 1.0 || p.rho2_prime <= 0.0) {
    throw std::invalid_argument("rdstc_pep_bound: bad parameters");
  }
  const double base = 32.0 * p.R / (p.T * p.rho2_prime);
  const double lp = std::log(p.P);
  return std::pow(base, 2.0 * p.R) * std::pow(lp, 2.0 * p.R) /
         std::pow(p.P, 2.0 * p.R);
}

double fractional_pep_change(const PepParams& p) {
  if (p.P < 1.0 || p.rho2 <= 0.0 || p.rho2_prime <= 0.0) {
    throw std::invalid_argument("fractional_pep_change: bad parameters");
  }
  const double ratio = 2.0 * std::sqrt(p.rho2_prime / p.rho2);
  return 1.0 - std::pow(ratio, 2.0 * p.R) *
                   std::pow(1.0 / std::log(p.P), p.R);
}

double diversity_order(double P, int R, Scheme scheme) {
  if (P <= std::exp(1.0)) {
    throw std::invalid_argument("diversity_order: requires P > e");
  }
  const double lp = std::log(P);
  const double llp = std::log(lp);
  const double frac = scheme == Scheme::Cidstc ? llp / (2.0 * lp) : llp / lp;
  return 2.0 * R * (1.0 - frac);
}

std::optional<double> bound_crossover(const PepParams& p, double p_lo,
                                      double p_hi) {
  if (!(1.0 < p_lo && p_lo < p_hi)) {
    throw std::invalid_argument("bound_crossover: bad bracket");
  }
  auto diff = [&](double power) {
    PepParams q = p;
    q.P = power;
    return cidstc_pep_bound(q) - rdstc_pep_bound(q);
  };
  double f_lo = diff(p_lo);
  double f_hi = diff(p_hi);
  if (f_lo == 0.0) return p_lo;
  if (f_hi == 0.0) return p_hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  // Bisect in log-power for uniform relative resolution.
  double lo = std::log(p_lo);
  double hi = std::log(p_hi);
  for (int it = 0; it < 200 && hi - lo > 1e-7; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = diff(std::exp(mid));
    if (f_mid == 0.0) return std::exp(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace cidstc
