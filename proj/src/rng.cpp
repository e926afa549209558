#include "cidstc/rng.hpp"

#include <cmath>

namespace cidstc {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : state_(mix64(seed + kGamma)) {}

RngStream RngStream::derive(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(seed + kGamma);
  for (std::uint64_t p : path) {
    s = mix64(s ^ mix64(p + kGamma));
  }
  return RngStream(s);
}

std::uint64_t RngStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RngStream::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex RngStream::cgaussian() {
  const double a = gaussian();
  const double b = gaussian();
  return Complex(a * M_SQRT1_2, b * M_SQRT1_2);
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  return next_u64() % n;
}

}  // namespace cidstc
