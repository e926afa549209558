#include "cidstc/civp.hpp"

#include <stdexcept>

namespace cidstc {

VectorPair civp(const VectorPair& pair) {
  if (pair.first.size() != pair.second.size()) {
    throw std::invalid_argument("civp: vectors must have equal length");
  }
  const Eigen::Index n = pair.first.size();
  VectorPair out;
  out.first.resize(n);
  out.second.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.first[i] = Complex(pair.first[i].real(), pair.second[i].imag());
    out.second[i] = Complex(pair.second[i].real(), pair.first[i].imag());
  }
  return out;
}

}  // namespace cidstc
