// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion enforces its own runtime budget.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cidstc/analysis.hpp"
#include "cidstc/channel.hpp"
#include "cidstc/civp.hpp"
#include "cidstc/codebook.hpp"
#include "cidstc/constellation.hpp"
#include "cidstc/decoder.hpp"
#include "cidstc/diversity.hpp"
#include "cidstc/harness.hpp"
#include "cidstc/numerics.hpp"
#include "cidstc/rng.hpp"

namespace {

using namespace cidstc;

struct Outcome {
  bool pass = false;
  std::string detail;
};

ComplexVector random_cvector(RngStream& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.cgaussian();
  return v;
}

// --- criterion 1: coordinate interleaving is an involution and conserves
// energy over 10^4 random pairs.
Outcome criterion1() {
  auto rng = RngStream::derive(101, {1});
  for (int rep = 0; rep < 10000; ++rep) {
    const int n = 1 + static_cast<int>(rng.uniform_index(16));
    const ComplexVector a = random_cvector(rng, n);
    const ComplexVector b = random_cvector(rng, n);
    const VectorPair once = civp({a, b});
    const VectorPair twice = civp(once);
    for (int i = 0; i < n; ++i) {
      if (twice.first[i] != a[i] || twice.second[i] != b[i])
        return {false, "involution not bit-exact at rep " + std::to_string(rep)};
    }
    const double e0 = a.squaredNorm() + b.squaredNorm();
    const double e1 = once.first.squaredNorm() + once.second.squaredNorm();
    if (std::abs(e1 - e0) > 1e-12 * e0)
      return {false, "energy drift " + std::to_string(std::abs(e1 - e0) / e0)};
  }
  return {true, "involution bit-exact, energy conserved over 10000 pairs"};
}

// --- criterion 2: the step-by-step two-phase simulation matches the
// linearized model scale * S h + n for 10^3 realizations of both designs.
Outcome criterion2() {
  double worst = 0.0;
  for (const char* id : {"example1", "ci8"}) {
    const RelayDesign& design = find_design(id);
    const NetworkConfig net{design.R, design.T};
    const PowerAllocation pw = optimal_power_split(250.0, design.R);
    const double scale = equivalent_scale(pw, design.T);
    auto xr = RngStream::derive(202, {std::hash<std::string>{}(id), 1});
    auto fr = RngStream::derive(202, {std::hash<std::string>{}(id), 2});
    auto nr = RngStream::derive(202, {std::hash<std::string>{}(id), 3});
    for (int rep = 0; rep < 1000; ++rep) {
      const ComplexVector x = random_cvector(xr, design.T);
      const ChannelRealization real = sample_realization(net, fr, nr);
      const EndToEndResult r = simulate_end_to_end(x, design, real, pw, false);
      const ComplexMatrix s = build_codeword(design, x);
      const ComplexVector model =
          scale * (s * r.equivalent.h) + r.effective_noise;
      const double rel = (r.y - model).norm() / r.y.norm();
      worst = std::max(worst, rel);
      if (rel >= 1e-9)
        return {false, std::string(id) + " residual " + std::to_string(rel)};
    }
  }
  return {true, "worst relative residual " + std::to_string(worst) +
                    " over 2x1000 realizations"};
}

// --- criterion 3: the combined first-hop coefficients k1, k2 behave like
// independent CG(0, 1/2) variables: sample variances in [0.47, 0.53],
// cross-correlations below 0.02, over 10^5 draws.
Outcome criterion3() {
  const NetworkConfig net{1, 4};
  auto fr = RngStream::derive(303, {1});
  auto nr = RngStream::derive(303, {2});
  const int n = 100000;
  Complex m1 = 0, m2 = 0, cross = 0, pseudo = 0;
  double p1 = 0, p2 = 0;
  for (int rep = 0; rep < n; ++rep) {
    const ChannelRealization real = sample_realization(net, fr, nr);
    const EquivalentChannel eq = equivalent_channel(real);
    const Complex k1 = eq.k(0, 0), k2 = eq.k(1, 0);
    m1 += k1;
    m2 += k2;
    p1 += std::norm(k1);
    p2 += std::norm(k2);
    cross += k1 * std::conj(k2);
    pseudo += k1 * k2;
  }
  m1 /= n;
  m2 /= n;
  const double v1 = p1 / n - std::norm(m1);
  const double v2 = p2 / n - std::norm(m2);
  const double c1 = std::abs(cross / static_cast<double>(n) - m1 * std::conj(m2));
  const double c2 = std::abs(pseudo / static_cast<double>(n) - m1 * m2);
  std::ostringstream os;
  os << "var(k1)=" << v1 << " var(k2)=" << v2 << " |cross|=" << c1
     << " |pseudo|=" << c2;
  const bool ok = v1 >= 0.47 && v1 <= 0.53 && v2 >= 0.47 && v2 <= 0.53 &&
                  c1 < 0.02 && c2 < 0.02;
  return {ok, os.str()};
}

// --- criterion 4: the T=4 design with a plain 2-PAM product set is reported
// not fully diverse, witnessed by a pair whose symbol difference has all
// components equal and a singular difference codeword.
Outcome criterion4() {
  const RelayDesign& design = find_design("example1");
  const LatticeSignalSet set = find_set("pam2xT", 4);
  const DiversityReport report = check_full_diversity(design, set);
  if (report.fully_diverse)
    return {false, "pam product set incorrectly reported fully diverse"};
  if (!report.exhaustive) return {false, "pair check was not exhaustive"};
  // Indices 0 and 255 are the all-(+1) and all-(-1) integer points, so the
  // symbol difference has every component equal to 2*scale*(1+j).
  const ComplexVector xa = index_to_symbols(set, 0);
  const ComplexVector xb = index_to_symbols(set, 255);
  const ComplexVector dx = xa - xb;
  for (int t = 1; t < 4; ++t) {
    if (std::abs(dx[t] - dx[0]) > 1e-15)
      return {false, "witness difference components are not all equal"};
  }
  const ComplexMatrix ds =
      build_codeword(design, xa) - build_codeword(design, xb);
  const double det = std::abs(determinant(ds));
  std::ostringstream os;
  os << "not fully diverse; all-equal-difference witness |det dS|=" << det;
  return {det < 1e-12, os.str()};
}

// --- criterion 5: the T=4 design with the rotated-Z8 set is fully diverse
// over all 256*255/2 = 32640 pairs.
Outcome criterion5() {
  const RelayDesign& design = find_design("example1");
  const LatticeSignalSet set = find_set("z8rot", 4);
  const DiversityReport report = check_full_diversity(design, set);
  std::ostringstream os;
  os << "pairs=" << report.pairs_checked << " min normalized |det|="
     << report.min_metric;
  const bool ok = report.fully_diverse && report.exhaustive &&
                  report.pairs_checked == 32640 &&
                  report.min_metric > kDiversityThreshold;
  return {ok, os.str()};
}

// --- criterion 6: the closed-form real/imaginary determinant polynomials
// match the direct 4x4 determinant on 10^3 random differences.
Outcome criterion6() {
  const RelayDesign& design = find_design("example1");
  auto rng = RngStream::derive(606, {1});
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::array<double, 8> coords{};
    ComplexVector dx(4);
    for (int t = 0; t < 4; ++t) {
      coords[2 * t] = rng.gaussian();
      coords[2 * t + 1] = rng.gaussian();
      dx[t] = Complex(coords[2 * t], coords[2 * t + 1]);
    }
    const auto [re, im] = example1_det_components(coords);
    const Complex direct = determinant(build_codeword(design, dx));
    const double rel = std::abs(Complex(re, im) - direct) /
                       std::max(std::abs(direct), 1e-300);
    worst = std::max(worst, rel);
    if (rel >= 1e-9)
      return {false, "relative mismatch " + std::to_string(rel)};
  }
  return {true, "worst relative mismatch " + std::to_string(worst) +
                    " over 1000 draws"};
}

// --- criterion 7: for R=5, T=20 and three (rho'^2, rho^2) settings, the two
// bounds cross at some power, the interleaved bound stays below afterwards,
// and the fractional change is strictly increasing past the crossover.
Outcome criterion7() {
  const std::vector<double> grid = db_grid(0.0, 60.0, 100);
  struct Case {
    double rho2_prime, rho2;
  };
  std::ostringstream os;
  for (const Case& c : {Case{4.0, 2.25}, Case{2.25, 4.0}, Case{4.0, 4.0}}) {
    PepParams p;
    p.R = 5;
    p.T = 20;
    p.rho2 = c.rho2;
    p.rho2_prime = c.rho2_prime;
    const auto crossover = bound_crossover(p, 1.0 + 1e-9, 1e7);
    if (!crossover)
      return {false, "no crossover for rho'^2=" + std::to_string(c.rho2_prime) +
                         " rho^2=" + std::to_string(c.rho2)};
    double prev_frac = -1e300;
    for (double db : grid) {
      p.P = std::pow(10.0, db / 10.0);
      if (p.P <= *crossover) continue;
      if (cidstc_pep_bound(p) >= rdstc_pep_bound(p))
        return {false, "bound ordering violated at " + std::to_string(db) +
                           " dB past the crossover"};
      const double frac = fractional_pep_change(p);
      if (frac <= prev_frac + 1e-9)
        return {false, "fractional change not strictly increasing at " +
                           std::to_string(db) + " dB"};
      prev_frac = frac;
    }
    os << " P^=" << 10.0 * std::log10(*crossover) << "dB";
  }
  return {true, "crossovers at" + os.str() +
                    "; ordering and monotonicity hold on the grid"};
}

// Builds one noisy decoding instance for decoder-agreement checks.
LatticeForm noisy_instance(const DecoderContext& ctx, RngStream& rng,
                           double noise_amp) {
  const RelayDesign& design = ctx.design();
  const LatticeSignalSet& set = ctx.set();
  const std::int64_t idx =
      static_cast<std::int64_t>(rng.uniform_index(
          static_cast<std::uint64_t>(set.point_count())));
  const ComplexVector x = index_to_symbols(set, idx);
  const int hn = design.kind == DesignKind::Cidstc ? 4 * design.R
                                                   : design.antennas();
  const ComplexVector h = random_cvector(rng, hn);
  const double scale = 2.0 + rng.uniform();
  ComplexVector y = scale * (build_codeword(design, x) * h);
  for (int t = 0; t < design.T; ++t) y[t] += noise_amp * rng.cgaussian();
  return ctx.form(y, h, scale);
}

// --- criterion 8: sphere and group decoders agree with exhaustive ML on
// 10^3 noisy instances each of their applicable design/set pairs.
Outcome criterion8() {
  {
    const DecoderContext ctx(find_design("example1"), find_set("z8rot", 4));
    auto rng = RngStream::derive(808, {1});
    for (int rep = 0; rep < 1000; ++rep) {
      const LatticeForm form = noisy_instance(ctx, rng, 0.8);
      if (ctx.decode_sphere(form) != ctx.decode_exhaustive(form))
        return {false, "sphere/exhaustive mismatch at instance " +
                           std::to_string(rep)};
    }
  }
  {
    const DecoderContext ctx(find_design("rdstc8"), find_set("z4rot", 8));
    auto rng = RngStream::derive(808, {2});
    for (int rep = 0; rep < 1000; ++rep) {
      const LatticeForm form = noisy_instance(ctx, rng, 0.8);
      if (ctx.decode_group(form) != ctx.decode_exhaustive(form))
        return {false, "group/exhaustive mismatch at instance " +
                           std::to_string(rep)};
    }
  }
  return {true, "sphere and group each match exhaustive ML on 1000 instances"};
}

// The T=4 two-antenna baseline without coordinate interleaving: the natural
// single-relay analogue of the registered T=8 four-antenna baseline design
// (its upper-left 4x2 block). Column 1 is the information vector
// s = (x1, x2, x3*, -x4*); column 2 applies a signed reversal.
RelayDesign rdstc4_design() {
  RelayDesign d;
  d.id = "rdstc4";
  d.kind = DesignKind::Rdstc;
  d.T = 4;
  d.R = 1;
  ComplexMatrix a1 = ComplexMatrix::Zero(4, 4);
  a1(0, 3) = -1.0;
  a1(1, 2) = 1.0;
  a1(2, 1) = -1.0;
  a1(3, 0) = 1.0;
  d.matrices = {ComplexMatrix::Identity(4, 4), a1};
  d.var_map = {{0, Complex(1, 0), false},
               {1, Complex(1, 0), false},
               {2, Complex(1, 0), true},
               {3, Complex(-1, 0), true}};
  d.validate();
  return d;
}

// Single-threaded BER curve for the baseline path (the shared harness runs
// only registered designs).
std::vector<BerPoint> rdstc_ber(const RelayDesign& design,
                                const LatticeSignalSet& set,
                                const std::vector<double>& grid_db,
                                std::int64_t trials, std::uint64_t seed) {
  const DecoderContext ctx(design, set);
  const NetworkConfig net{design.antennas() / 2, design.T};
  const auto points = static_cast<std::uint64_t>(set.point_count());
  const int bits = std::bit_width(points - 1);
  std::vector<BerPoint> out;
  for (std::size_t pi = 0; pi < grid_db.size(); ++pi) {
    const double P = std::pow(10.0, grid_db[pi] / 10.0);
    const PowerAllocation pw = optimal_power_split(P, net.R);
    const double scale = equivalent_scale(pw, design.T);
    auto ir = RngStream::derive(seed, {pi, 0, 0});
    auto fr = RngStream::derive(seed, {pi, 0, 1});
    auto nr = RngStream::derive(seed, {pi, 0, 2});
    std::int64_t errors = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      const auto idx = static_cast<std::int64_t>(ir.uniform_index(points));
      const ComplexVector x = index_to_symbols(set, idx);
      const ChannelRealization real = sample_realization(net, fr, nr);
      const RdstcEndToEndResult r =
          simulate_rdstc_end_to_end(x, design, real, pw, false);
      const std::int64_t hat = ctx.decode_sphere(ctx.form(r.y, r.h, scale));
      errors += std::popcount(static_cast<std::uint64_t>(idx ^ hat));
    }
    out.push_back({grid_db[pi], P, trials, errors, trials * bits,
                   static_cast<double>(errors) / (trials * bits)});
  }
  return out;
}

// Linear interpolation of the power (dB) reaching a target BER on a
// log10(BER)-vs-dB curve.
std::optional<double> power_at_ber(const std::vector<BerPoint>& points,
                                   double target) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i].ber, b = points[i + 1].ber;
    if (a >= target && b <= target && a > 0 && b > 0 && a != b) {
      const double la = std::log10(a), lb = std::log10(b);
      const double t = (std::log10(target) - la) / (lb - la);
      return points[i].p_db + t * (points[i + 1].p_db - points[i].p_db);
    }
  }
  return std::nullopt;
}

std::vector<BerPoint> harness_curve(const std::string& design,
                                    const std::string& set,
                                    const std::vector<double>& grid,
                                    std::int64_t trials) {
  SimConfig cfg;
  cfg.design_id = design;
  cfg.set_id = set;
  cfg.p_grid_db = grid;
  cfg.trials = trials;
  cfg.seed = 11;
  cfg.decoder = DecoderChoice::Sphere;
  cfg.workers = 8;
  return run_ber(cfg).points;
}

// --- criterion 9: measured BER gap at the power reaching BER 1e-3, with
// >= 1e5 trials per point and sphere decoding throughout.
Outcome criterion9() {
  std::ostringstream os;
  bool ok = true;
  {
    const std::vector<double> grid = db_grid(27.0, 31.0, 5);
    const std::int64_t trials = 800000;
    const auto ci = harness_curve("example1", "z8rot", grid, trials);
    const auto rd =
        rdstc_ber(rdstc4_design(), find_set("z8rot", 4), grid, trials, 11);
    const auto p_ci = power_at_ber(ci, 1e-3);
    const auto p_rd = power_at_ber(rd, 1e-3);
    if (!p_ci || !p_rd) return {false, "R=1 curves do not bracket BER 1e-3"};
    const double gap = *p_rd - *p_ci;
    os << "R=1 gap " << gap << " dB (want 1.0 +/- 0.5)";
    ok = ok && gap >= 0.5 && gap <= 1.5;
  }
  {
    const std::vector<double> grid = db_grid(22.0, 28.0, 4);
    const std::int64_t trials = 400000;
    const auto ci = harness_curve("ci8", "z4rot", grid, trials);
    const auto rd = harness_curve("rdstc8", "z4rot", grid, trials);
    const auto p_ci = power_at_ber(ci, 1e-3);
    const auto p_rd = power_at_ber(rd, 1e-3);
    if (!p_ci || !p_rd) return {false, "R=2 curves do not bracket BER 1e-3"};
    const double gap = *p_rd - *p_ci;
    os << "; R=2 gap " << gap << " dB (want 1.75 +/- 0.75)";
    ok = ok && gap >= 1.0 && gap <= 2.5;
  }
  return {ok, os.str()};
}

// --- criterion 10: the CSV artifact is bit-identical across 1/2/8 workers,
// two runs each.
Outcome criterion10() {
  SimConfig cfg;
  cfg.design_id = "example1";
  cfg.set_id = "z8rot";
  cfg.p_grid_db = {18.0, 22.0, 26.0};
  cfg.trials = 2048;
  cfg.seed = 7;
  cfg.decoder = DecoderChoice::Sphere;
  std::string reference;
  for (int workers : {1, 2, 8}) {
    for (int run = 0; run < 2; ++run) {
      cfg.workers = workers;
      std::ostringstream out;
      write_ber_csv(out, run_ber(cfg));
      if (reference.empty()) {
        reference = out.str();
      } else if (out.str() != reference) {
        return {false, "CSV differs for workers=" + std::to_string(workers) +
                           " run=" + std::to_string(run)};
      }
    }
  }
  return {true, "bit-identical CSV across 1/2/8 workers, two runs each"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    Outcome (*fn)();
  };
  const std::vector<Criterion> criteria = {
      {"civp involution and energy", 5.0, criterion1},
      {"equivalent-model consistency", 30.0, criterion2},
      {"combined-coefficient statistics", 10.0, criterion3},
      {"diversity negative witness", 1.0, criterion4},
      {"diversity positive exhaustive", 60.0, criterion5},
      {"determinant closed form", 5.0, criterion6},
      {"bound crossover and ordering", 1.0, criterion7},
      {"decoder equivalence", 120.0, criterion8},
      {"ber gap reproduction", 7200.0, criterion9},
      {"harness determinism", 300.0, criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criteria[i].limit_s) {
      outcome.pass = false;
      outcome.detail += " [over time budget]";
    }
    std::printf("criterion %2zu: %s  %s — %s (%.2f s)\n", i + 1,
                outcome.pass ? "PASS" : "FAIL", criteria[i].name,
                outcome.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
