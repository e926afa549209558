#pragma once

#include "cidstc/numerics.hpp"

namespace cidstc {

struct VectorPair {
  ComplexVector first;
  ComplexVector second;
};

/// Coordinate Interleaved Vector Pair: swaps the imaginary parts of the two
/// vectors elementwise. An involution. Throws on length mismatch.
VectorPair civp(const VectorPair& pair);

}  // namespace cidstc
