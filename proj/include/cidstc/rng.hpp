#pragma once

#include <cstdint>
#include <initializer_list>

#include "cidstc/numerics.hpp"

namespace cidstc {

/// Deterministic pseudo-random stream. Streams derived from the same seed and
/// path are identical regardless of how many other streams exist, which keeps
/// parallel Monte Carlo runs bit-reproducible.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Derive an independent stream from a seed and a path of indices
  /// (e.g. {power_point, block, role}).
  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller (implementation-pinned for determinism).
  double gaussian();
  /// Circularly symmetric complex Gaussian CG(0, 1): each component N(0, 1/2).
  Complex cgaussian();
  /// Uniform in {0, ..., n-1}. Unbiased when n divides 2^64.
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cidstc
