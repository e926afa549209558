#pragma once

#include <cstdint>
#include <optional>

#include "cidstc/codebook.hpp"
#include "cidstc/constellation.hpp"
#include "cidstc/numerics.hpp"

namespace cidstc {

/// One ML decoding instance over the equivalent model y = scale * S h + n,
/// with the codebook given implicitly by (design, signal set).
struct DecodeProblem {
  ComplexVector y;
  ComplexVector h;  ///< 4R entries (CIDSTC) or one per antenna (RDSTC)
  double scale = 1.0;
  const RelayDesign* design = nullptr;
  const LatticeSignalSet* set = nullptr;
};

/// Real-valued stacking of the decoding problem: y_real = basis * z + noise
/// with z ranging over alphabet^n. basis folds the design, the equivalent
/// channel, the lattice generator, and both scales into one 2T x n matrix.
struct LatticeForm {
  RealMatrix basis;
  RealVector y_real;
};

LatticeForm build_lattice_form(const DecodeProblem& p);

struct SphereStats {
  long nodes = 0;  ///< tree nodes expanded
};

/// Exhaustive ML over the enumerable codebook, building each codeword matrix
/// directly. Ties break to the lowest index.
std::int64_t ml_exhaustive(const DecodeProblem& p);

/// Exact ML by depth-first enumeration with radius pruning over the lattice
/// form (Schnorr-Euchner ordering; the first leaf is the Babai point).
std::int64_t sphere_decode(const DecodeProblem& p, const LatticeForm& form,
                           SphereStats* stats = nullptr);
std::int64_t sphere_decode(const DecodeProblem& p);

/// Independent per-group exhaustive minimization for group-decodable RDSTC
/// designs (groups taken from the signal set). Throws if the problem's
/// group metrics are not separable.
std::int64_t group_decode_rdstc(const DecodeProblem& p);

/// Persistent per-(design, set) state for fast repeated decoding: caches the
/// per-real-variable codeword slices and, for exhaustive decoding, the full
/// integer-point matrix.
class DecoderContext {
 public:
  DecoderContext(const RelayDesign& design, const LatticeSignalSet& set);

  LatticeForm form(const ComplexVector& y, const ComplexVector& h,
                   double scale) const;

  /// Fast exhaustive ML via one candidate-matrix product.
  std::int64_t decode_exhaustive(const LatticeForm& form) const;
  std::int64_t decode_sphere(const LatticeForm& form,
                             SphereStats* stats = nullptr) const;
  std::int64_t decode_group(const LatticeForm& form) const;

  const RelayDesign& design() const { return *design_; }
  const LatticeSignalSet& set() const { return set_; }

 private:
  const RelayDesign* design_;
  LatticeSignalSet set_;  // by value: the registry lookup returns a temporary
  std::vector<ComplexMatrix> var_codewords_;  ///< 2T slices, each T x cols
  RealMatrix gen_scaled_;
  mutable std::optional<RealMatrix> zmat_;  ///< points x n, built on demand
  const RealMatrix& zmat() const;
};

}  // namespace cidstc
