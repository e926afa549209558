#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "cidstc/codebook.hpp"
#include "cidstc/constellation.hpp"
#include "cidstc/numerics.hpp"

namespace cidstc {

struct DiversityReport {
  bool fully_diverse = true;
  /// |det(dS)| for square dS, min singular value of dS^H dS for tall dS,
  /// in both cases divided by the product of column norms of dS.
  double min_metric = 0.0;
  /// Information-vector indices achieving the minimum (distinct).
  std::int64_t witness_a = -1;
  std::int64_t witness_b = -1;
  std::int64_t pairs_checked = 0;
  /// True when every pair was checked; false for randomized sampling.
  bool exhaustive = true;
};

/// Threshold on the normalized metric separating exact rank deficiencies
/// from floating-point dust.
inline constexpr double kDiversityThreshold = 1e-9;

/// Checks full diversity of the design/set pair. Sets with at most 2^10
/// points are checked exhaustively over all pairs; larger sets fall back to
/// `sample_pairs` randomized pairs drawn from a stream derived from `seed`.
DiversityReport check_full_diversity(const RelayDesign& design,
                                     const LatticeSignalSet& set,
                                     std::int64_t sample_pairs = 200000,
                                     std::uint64_t seed = 1);

/// Real and imaginary parts of det(dS) for the 2x1 two-antenna design, as
/// closed-form polynomials in the eight components of ds
/// (dx1I, dx1Q, ..., dx4I, dx4Q).
std::pair<double, double> example1_det_components(
    const std::array<double, 8>& ds);

/// The rank-deficiency witness with every component equal to 1+j. Verifies
/// in-operation that the resulting difference codeword is rank deficient
/// and throws if it is not.
ComplexVector two_dim_counterexample(const RelayDesign& design);

}  // namespace cidstc
