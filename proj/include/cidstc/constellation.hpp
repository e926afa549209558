#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cidstc/numerics.hpp"

namespace cidstc {

struct IntegerAlphabet {
  std::vector<double> values;  ///< distinct, e.g. M-PAM levels
};

IntegerAlphabet two_pam();  ///< {1, -1}

/// A finite signal set carved from a (possibly rotated) integer lattice:
/// points are scale * G * z with z in alphabet^n, and the n real coordinates
/// interleave as (x_1I, x_1Q, ..., x_{n/2 I}, x_{n/2 Q}). The scale is chosen
/// so that the average of s^H s over the whole set is 1.
struct LatticeSignalSet {
  std::string id;
  int n = 0;            ///< real dimension, = 2T
  RealMatrix generator; ///< n x n, invertible
  IntegerAlphabet alphabet;
  double scale = 1.0;
  /// Optional partition of z coordinates into independently decodable groups
  /// (empty when the set carries no group structure).
  std::vector<std::vector<int>> z_groups;

  std::int64_t point_count() const;
};

/// Builds a set from a generator, computing the normalizing scale.
/// Throws if |det G| <= 1e-9.
LatticeSignalSet make_lattice_set(std::string id, const RealMatrix& generator,
                                  IntegerAlphabet alphabet,
                                  std::vector<std::vector<int>> z_groups = {});

/// The printed 8x8 rotated-Z^8 generator.
RealMatrix z8_generator();

/// The printed 4x4 rotated-Z^4 generator.
RealMatrix z4_generator();

/// n=8 set: z8_generator with the given alphabet (default 2-PAM). Pairs with
/// the T=4 designs.
LatticeSignalSet z8_rotated_set(IntegerAlphabet alphabet = two_pam());

/// n=16 set for the T=8 designs: each of the four decodable groups of real
/// variables {x1I,x4Q,x5I,x8Q}, {x1Q,x4I,x5Q,x8I}, {x2I,x3Q,x6I,x7Q},
/// {x3I,x2Q,x7I,x6Q} is rotated by the 4x4 generator.
LatticeSignalSet z4_grouped_set(IntegerAlphabet alphabet = two_pam());

/// Plain PAM product set: G = I_{2T}.
LatticeSignalSet pam_product_set(int T, const IntegerAlphabet& levels);

/// Registry lookup: "z8rot" (T=4), "z4rot" (T=8), "pam2xT" (any T).
LatticeSignalSet find_set(const std::string& id, int T);

/// All |alphabet|^n points as complex vectors of length n/2.
/// Throws if the enumeration exceeds 2^20 points.
std::vector<ComplexVector> enumerate_points(const LatticeSignalSet& set);

/// Integer coordinates z for a codebook index: base-|alphabet| digits,
/// least-significant digit = z_1.
std::vector<double> index_to_z(const LatticeSignalSet& set, std::int64_t index);

/// The complex point for an index. Throws if index is out of range.
ComplexVector index_to_symbols(const LatticeSignalSet& set, std::int64_t index);

/// Inverse of index_to_symbols. Throws if the vector is not a set point.
std::int64_t symbols_to_index(const LatticeSignalSet& set,
                              const ComplexVector& symbols);

/// Plain-text generator format: first line n, then n rows of n decimals.
RealMatrix load_generator(std::istream& in);
void save_generator(std::ostream& out, const RealMatrix& g);

}  // namespace cidstc
