#pragma once

#include <string>
#include <vector>

#include "cidstc/numerics.hpp"

namespace cidstc {

enum class DesignKind { Cidstc, Rdstc };

/// One coordinate of the map from design variables x to the transmitted
/// information vector s: s_t = factor * x_src or factor * conj(x_src).
struct VarMapEntry {
  int src = 0;
  Complex factor{1.0, 0.0};
  bool conjugate = false;
};

/// A distributed space-time design: the per-antenna unitary matrices plus the
/// (coordinate-wise) map from the printed design variables to the information
/// vector the source actually transmits. For the designs shipped here the map
/// is recovered mechanically from the printed linear arrays.
struct RelayDesign {
  std::string id;
  DesignKind kind = DesignKind::Cidstc;
  int T = 0;  ///< block length in channel uses
  int R = 0;  ///< relay count (each relay has two antennas)
  /// CIDSTC: 2R matrices ordered (A_11, A_21, A_12, A_22, ...).
  /// RDSTC: one matrix per transmit antenna.
  std::vector<ComplexMatrix> matrices;
  std::vector<VarMapEntry> var_map;

  int antennas() const { return static_cast<int>(matrices.size()); }

  /// Map design variables x to the transmitted information vector s.
  ComplexVector information_vector(const ComplexVector& x) const;

  /// Checks unitarity of every matrix (1e-10 Frobenius) and the block-length
  /// constraints (T >= 4R for CIDSTC, T >= 2 * antennas for RDSTC).
  void validate() const;
};

/// T x 4R matrix [A_11 s, A_11 s*, A_21 s, A_21 s*, ...] with s derived from
/// the design variables x.
ComplexMatrix build_cidstc_codeword(const RelayDesign& design,
                                    const ComplexVector& x);

/// T x (antenna count) matrix with column i = A_i s.
ComplexMatrix build_rdstc_codeword(const RelayDesign& design,
                                   const ComplexVector& x);

/// Dispatches on design.kind.
ComplexMatrix build_codeword(const RelayDesign& design, const ComplexVector& x);

/// R=1, T=4 design: A_11 = I, A_21 the permutation-with-j matrix.
RelayDesign example1_design();

/// T=8, R=2 CIDSTC recovered from the printed 8x8 linear array.
RelayDesign ci8_design();

/// T=8, four-antenna RDSTC recovered from the printed 8x4 linear array.
/// Four-group decodable.
RelayDesign rdstc8_design();

const std::vector<RelayDesign>& builtin_designs();

/// Looks up a design by registry id ("example1", "ci8", "rdstc8").
const RelayDesign& find_design(const std::string& id);

}  // namespace cidstc
