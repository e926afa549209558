#include "cidstc/diversity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cidstc/rng.hpp"

namespace cidstc {
namespace {

double normalized_metric(const ComplexMatrix& ds) {
  double col_prod = 1.0;
  for (Eigen::Index c = 0; c < ds.cols(); ++c) {
    col_prod *= ds.col(c).norm();
  }
  if (col_prod <= 0.0) return 0.0;
  if (ds.rows() == ds.cols()) {
    return std::abs(determinant(ds)) / col_prod;
  }
  return min_singular_value(gram(ds)) / col_prod;
}

}  // namespace

DiversityReport check_full_diversity(const RelayDesign& design,
                                     const LatticeSignalSet& set,
                                     std::int64_t sample_pairs,
                                     std::uint64_t seed) {
  if (set.n != 2 * design.T) {
    throw std::invalid_argument(
        "check_full_diversity: signal-set dimension does not match design");
  }
  const std::int64_t count = set.point_count();
  DiversityReport report;
  report.min_metric = std::numeric_limits<double>::infinity();
  if (count < 2) {
    return report;  // vacuously diverse
  }

  auto metric_for = [&](std::int64_t a, std::int64_t b) {
    const ComplexVector xa = index_to_symbols(set, a);
    const ComplexVector xb = index_to_symbols(set, b);
    return normalized_metric(build_codeword(design, xa - xb));
  };
  auto record = [&](std::int64_t a, std::int64_t b, double m) {
    ++report.pairs_checked;
    if (m < report.min_metric) {
      report.min_metric = m;
      report.witness_a = a;
      report.witness_b = b;
    }
  };

  constexpr std::int64_t kExhaustiveLimit = 1 << 10;
  if (count <= kExhaustiveLimit) {
    std::vector<ComplexMatrix> words;
    words.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      words.push_back(build_codeword(design, index_to_symbols(set, i)));
    }
    for (std::int64_t a = 0; a < count; ++a) {
      for (std::int64_t b = a + 1; b < count; ++b) {
        record(a, b, normalized_metric(words[static_cast<std::size_t>(a)] -
                                       words[static_cast<std::size_t>(b)]));
      }
    }
  } else {
    report.exhaustive = false;
    RngStream rng = RngStream::derive(seed, {0x1d, 0x1e});
    for (std::int64_t k = 0; k < sample_pairs; ++k) {
      const auto a = static_cast<std::int64_t>(
          rng.uniform_index(static_cast<std::uint64_t>(count)));
      auto b = static_cast<std::int64_t>(
          rng.uniform_index(static_cast<std::uint64_t>(count - 1)));
      if (b >= a) ++b;
      record(a, b, metric_for(a, b));
    }
  }

  report.fully_diverse = report.min_metric > kDiversityThreshold;
  return report;
}

std::pair<double, double> example1_det_components(
    const std::array<double, 8>& ds) {
  const double x1i = ds[0], x1q = ds[1];
  const double x2i = ds[2], x2q = ds[3];
  const double x3i = ds[4], x3q = ds[5];
  const double x4i = ds[6], x4q = ds[7];
  auto sq = [](double v) { return v * v; };
  const double re = 4.0 * sq(x1i * x3q - x1q * x3i) -
                    4.0 * sq(x2q * x4i - x2i * x4q);
  const double im = -4.0 * sq(x1i * x4q - x1q * x4i) -
                    4.0 * sq(x2i * x3q - x3i * x2q) +
                    8.0 * (x1i * x2q - x1q * x2i) *
                        (x3i * x4q - x3q * x4i);
  return {re, im};
}

ComplexVector two_dim_counterexample(const RelayDesign& design) {
  if (design.kind != DesignKind::Cidstc) {
    throw std::invalid_argument(
        "two_dim_counterexample: requires a coordinate-interleaved design");
  }
  const auto vars = static_cast<Eigen::Index>(design.var_map.size());
  ComplexVector ds = ComplexVector::Constant(vars, Complex(1.0, 1.0));
  const ComplexMatrix delta = build_codeword(design, ds);
  const double scale = delta.squaredNorm();
  const double min_sv = min_singular_value(gram(delta));
  if (!(min_sv <= 1e-9 * std::max(scale, 1.0))) {
    throw std::logic_error(
        "two_dim_counterexample: difference codeword is unexpectedly full "
        "rank");
  }
  return ds;
}

}  // namespace cidstc
