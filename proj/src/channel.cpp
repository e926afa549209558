#include "cidstc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cidstc {
namespace {

ComplexVector cgaussian_vector(RngStream& rng, int n) {
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.cgaussian();
  return v;
}

}  // namespace

ChannelRealization sample_realization(const NetworkConfig& cfg, RngStream& fades,
                                      RngStream& noise) {
  ChannelRealization real;
  real.f.resize(2, cfg.R);
  real.g.resize(2, cfg.R);
  for (int j = 0; j < cfg.R; ++j) {
    for (int i = 0; i < 2; ++i) real.f(i, j) = fades.cgaussian();
  }
  for (int j = 0; j < cfg.R; ++j) {
    for (int i = 0; i < 2; ++i) real.g(i, j) = fades.cgaussian();
  }
  real.relay_noise.resize(cfg.R);
  for (int j = 0; j < cfg.R; ++j) {
    real.relay_noise[j][0] = cgaussian_vector(noise, cfg.T);
    real.relay_noise[j][1] = cgaussian_vector(noise, cfg.T);
  }
  real.dest_noise = cgaussian_vector(noise, cfg.T);
  return real;
}

std::vector<std::array<ComplexVector, 2>> phase1_receive(
    const ComplexVector& s, const ChannelRealization& real,
    const PowerAllocation& pw) {
  const double amp = std::sqrt(pw.P1 * static_cast<double>(s.size()));
  std::vector<std::array<ComplexVector, 2>> received(real.relays());
  for (int j = 0; j < real.relays(); ++j) {
    for (int i = 0; i < 2; ++i) {
      received[j][i] = amp * real.f(i, j) * s + real.relay_noise[j][i];
    }
  }
  return received;
}

std::pair<ComplexVector, ComplexVector> relay_process(
    const ComplexVector& r1, const ComplexVector& r2, const ComplexMatrix& a1,
    const ComplexMatrix& a2, const PowerAllocation& pw) {
  const VectorPair interleaved = civp({r1, r2});
  const double amp = std::sqrt(pw.P2 / (1.0 + pw.P1));
  return {amp * (a1 * interleaved.first), amp * (a2 * interleaved.second)};
}

ComplexVector destination_receive(
    const std::vector<std::array<ComplexVector, 2>>& transmits,
    const ChannelRealization& real) {
  ComplexVector y = real.dest_noise;
  for (int j = 0; j < real.relays(); ++j) {
    y += real.g(0, j) * transmits[j][0] + real.g(1, j) * transmits[j][1];
  }
  return y;
}

EquivalentChannel equivalent_channel(const ChannelRealization& real) {
  EquivalentChannel eq;
  const int r = real.relays();
  eq.k.resize(2, r);
  eq.h.resize(4 * r);
  for (int j = 0; j < r; ++j) {
    const Complex k1 = 0.5 * (real.f(0, j) + real.f(1, j));
    const Complex k2 = 0.5 * (std::conj(real.f(0, j)) - std::conj(real.f(1, j)));
    eq.k(0, j) = k1;
    eq.k(1, j) = k2;
    eq.h[4 * j + 0] = real.g(0, j) * k1;
    eq.h[4 * j + 1] = real.g(0, j) * k2;
    eq.h[4 * j + 2] = real.g(1, j) * k1;
    eq.h[4 * j + 3] = -real.g(1, j) * k2;
  }
  return eq;
}

double equivalent_scale(const PowerAllocation& pw, int T) {
  return std::sqrt(pw.P1 * pw.P2 * static_cast<double>(T) / (1.0 + pw.P1));
}

EndToEndResult simulate_end_to_end(const ComplexVector& x,
                                   const RelayDesign& design,
                                   const ChannelRealization& real,
                                   const PowerAllocation& pw,
                                   bool check_consistency) {
  if (design.kind != DesignKind::Cidstc) {
    throw std::invalid_argument("simulate_end_to_end: CIDSTC design required");
  }
  if (real.relays() != design.R) {
    throw std::invalid_argument("simulate_end_to_end: relay count mismatch");
  }
  const ComplexVector s = design.information_vector(x);

  const auto received = phase1_receive(s, real, pw);
  std::vector<std::array<ComplexVector, 2>> transmits(design.R);
  for (int j = 0; j < design.R; ++j) {
    const auto [t1, t2] =
        relay_process(received[j][0], received[j][1], design.matrices[2 * j],
                      design.matrices[2 * j + 1], pw);
    transmits[j] = {t1, t2};
  }

  EndToEndResult out;
  out.y = destination_receive(transmits, real);
  out.equivalent = equivalent_channel(real);

  // Equivalent-model noise from the same draws:
  // n = sqrt(P2/(1+P1)) sum_j (g_1j A_1j n'_1j + g_2j A_2j n'_2j) + w.
  const double amp = std::sqrt(pw.P2 / (1.0 + pw.P1));
  ComplexVector noise = real.dest_noise;
  for (int j = 0; j < design.R; ++j) {
    const VectorPair np = civp({real.relay_noise[j][0], real.relay_noise[j][1]});
    noise += amp * (real.g(0, j) * (design.matrices[2 * j] * np.first) +
                    real.g(1, j) * (design.matrices[2 * j + 1] * np.second));
  }
  out.effective_noise = noise;

  if (check_consistency) {
    const ComplexMatrix codeword = build_cidstc_codeword(design, x);
    const ComplexVector reassembled =
        equivalent_scale(pw, design.T) * (codeword * out.equivalent.h) + noise;
    const double residual = (out.y - reassembled).norm();
    if (residual > 1e-9 * std::max(out.y.norm(), 1.0)) {
      throw std::runtime_error(
          "simulate_end_to_end: equivalent model inconsistent with the "
          "two-phase simulation");
    }
  }
  return out;
}

RdstcEndToEndResult simulate_rdstc_end_to_end(const ComplexVector& x,
                                              const RelayDesign& design,
                                              const ChannelRealization& real,
                                              const PowerAllocation& pw,
                                              bool check_consistency) {
  if (design.kind != DesignKind::Rdstc) {
    throw std::invalid_argument("simulate_rdstc_end_to_end: RDSTC design required");
  }
  const int antennas = design.antennas();
  if (2 * real.relays() != antennas) {
    throw std::invalid_argument("simulate_rdstc_end_to_end: antenna count mismatch");
  }
  const ComplexVector s = design.information_vector(x);
  const auto received = phase1_receive(s, real, pw);
  const double amp = std::sqrt(pw.P2 / (1.0 + pw.P1));

  RdstcEndToEndResult out;
  out.h.resize(antennas);
  out.y = real.dest_noise;
  ComplexVector noise = real.dest_noise;
  for (int a = 0; a < antennas; ++a) {
    const int j = a / 2;
    const int i = a % 2;
    const ComplexVector t = amp * (design.matrices[a] * received[j][i]);
    out.y += real.g(i, j) * t;
    out.h[a] = real.f(i, j) * real.g(i, j);
    noise += amp * real.g(i, j) * (design.matrices[a] * real.relay_noise[j][i]);
  }
  out.effective_noise = noise;

  if (check_consistency) {
    const ComplexMatrix codeword = build_rdstc_codeword(design, x);
    const ComplexVector reassembled =
        equivalent_scale(pw, design.T) * (codeword * out.h) + noise;
    const double residual = (out.y - reassembled).norm();
    if (residual > 1e-9 * std::max(out.y.norm(), 1.0)) {
      throw std::runtime_error(
          "simulate_rdstc_end_to_end: equivalent model inconsistent");
    }
  }
  return out;
}

}  // namespace cidstc
