#pragma once

#include <array>
#include <vector>

#include "cidstc/civp.hpp"
#include "cidstc/codebook.hpp"
#include "cidstc/numerics.hpp"
#include "cidstc/rng.hpp"

namespace cidstc {

struct NetworkConfig {
  int R = 1;  ///< relay count, two antennas each
  int T = 4;  ///< block length (channel uses)
};

struct PowerAllocation {
  double P = 0.0;   ///< total power per channel use
  double P1 = 0.0;  ///< source power
  double P2 = 0.0;  ///< per-antenna relay power; P = P1 + 2R*P2
};

/// One coherence block of fading and noise. All draws are i.i.d. CG(0,1),
/// i.e. N(0, 1/2) per real component.
struct ChannelRealization {
  Eigen::Matrix2Xcd f;  ///< source -> relay fades, f(i, j) for antenna i+1, relay j+1
  Eigen::Matrix2Xcd g;  ///< relay -> destination fades
  std::vector<std::array<ComplexVector, 2>> relay_noise;  ///< [relay][antenna], length T
  ComplexVector dest_noise;                               ///< length T

  int relays() const { return static_cast<int>(f.cols()); }
};

/// The linearized channel of the two-phase protocol: h concatenates the
/// per-relay blocks (g_1j k_1j, g_1j k_2j, g_2j k_1j, -g_2j k_2j) with
/// k_1j = (f_1j + f_2j)/2 and k_2j = (f_1j* - f_2j*)/2.
struct EquivalentChannel {
  ComplexVector h;      ///< length 4R
  Eigen::Matrix2Xcd k;  ///< the 2 x R combined first-hop coefficients
};

/// Fades from `fades` stream, noise vectors from `noise` stream; the split
/// keeps the two reproducible independently of each other.
ChannelRealization sample_realization(const NetworkConfig& cfg, RngStream& fades,
                                      RngStream& noise);

/// r_ij = sqrt(P1*T) f_ij s + n_ij, for all relays/antennas.
std::vector<std::array<ComplexVector, 2>> phase1_receive(
    const ComplexVector& s, const ChannelRealization& real,
    const PowerAllocation& pw);

/// CIVP the two received vectors, then t_ij = sqrt(P2/(1+P1)) A_ij r'_ij.
std::pair<ComplexVector, ComplexVector> relay_process(
    const ComplexVector& r1, const ComplexVector& r2, const ComplexMatrix& a1,
    const ComplexMatrix& a2, const PowerAllocation& pw);

/// y = sum_j (g_1j t_1j + g_2j t_2j) + w.
ComplexVector destination_receive(
    const std::vector<std::array<ComplexVector, 2>>& transmits,
    const ChannelRealization& real);

EquivalentChannel equivalent_channel(const ChannelRealization& real);

/// Amplitude in front of S h in the equivalent model.
double equivalent_scale(const PowerAllocation& pw, int T);

struct EndToEndResult {
  ComplexVector y;                ///< received vector at the destination
  EquivalentChannel equivalent;   ///< h (and k) for the same realization
  ComplexVector effective_noise;  ///< n of the equivalent model
};

/// Runs phase 1, CIVP relay processing, and destination reception for a
/// CIDSTC design, and independently reassembles y as scale * S h + n from the
/// same draws. Throws if the two paths disagree beyond 1e-9 * ||y||.
EndToEndResult simulate_end_to_end(const ComplexVector& x,
                                   const RelayDesign& design,
                                   const ChannelRealization& real,
                                   const PowerAllocation& pw,
                                   bool check_consistency = true);

/// RDSTC baseline path: every antenna forwards only its own received vector
/// (no CIVP), t_a = sqrt(P2/(1+P1)) A_a r_a. Equivalent channel entries are
/// h_a = f_a g_a with antennas flattened as a = 2*relay + antenna.
struct RdstcEndToEndResult {
  ComplexVector y;
  ComplexVector h;  ///< length = antenna count
  ComplexVector effective_noise;
};

RdstcEndToEndResult simulate_rdstc_end_to_end(const ComplexVector& x,
                                              const RelayDesign& design,
                                              const ChannelRealization& real,
                                              const PowerAllocation& pw,
                                              bool check_consistency = true);

}  // namespace cidstc
