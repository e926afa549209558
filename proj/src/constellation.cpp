#include "cidstc/constellation.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace cidstc {
namespace {

constexpr std::int64_t kMaxEnumeration = 1 << 20;

double integer_power(std::int64_t base, int exp) {
  double p = 1;
  while (exp-- > 0) p *= static_cast<double>(base);
  return p;
}

}  // namespace

IntegerAlphabet two_pam() { return IntegerAlphabet{{1.0, -1.0}}; }

std::int64_t LatticeSignalSet::point_count() const {
  const double p = integer_power(static_cast<std::int64_t>(alphabet.values.size()), n);
  if (p > 9.0e18) throw std::overflow_error("point_count overflow");
  return static_cast<std::int64_t>(p);
}

LatticeSignalSet make_lattice_set(std::string id, const RealMatrix& generator,
                                  IntegerAlphabet alphabet,
                                  std::vector<std::vector<int>> z_groups) {
  if (generator.rows() != generator.cols()) {
    throw std::invalid_argument("make_lattice_set: generator must be square");
  }
  if (alphabet.values.empty()) {
    throw std::invalid_argument("make_lattice_set: empty alphabet");
  }
  if (std::abs(generator.determinant()) <= 1e-9) {
    throw std::invalid_argument("make_lattice_set: generator is singular");
  }
  LatticeSignalSet set;
  set.id = std::move(id);
  set.n = static_cast<int>(generator.rows());
  if (set.n % 2 != 0) {
    throw std::invalid_argument("make_lattice_set: dimension must be even");
  }
  set.generator = generator;
  set.alphabet = std::move(alphabet);
  set.z_groups = std::move(z_groups);

  // Uniform average of ||G z||^2 over alphabet^n, in closed form: with z
  // coordinates i.i.d. uniform over the alphabet,
  //   E||Gz||^2 = m2 * sum_k ||g_k||^2 + m1^2 * (||sum_k g_k||^2 - sum_k ||g_k||^2).
  double m1 = 0.0, m2 = 0.0;
  for (double v : set.alphabet.values) {
    m1 += v;
    m2 += v * v;
  }
  m1 /= static_cast<double>(set.alphabet.values.size());
  m2 /= static_cast<double>(set.alphabet.values.size());
  const double sum_sq = generator.colwise().squaredNorm().sum();
  const double sum_cols_sq = generator.rowwise().sum().squaredNorm();
  const double mean_energy = m2 * sum_sq + m1 * m1 * (sum_cols_sq - sum_sq);
  if (mean_energy <= 0.0) {
    throw std::invalid_argument("make_lattice_set: degenerate signal set");
  }
  set.scale = 1.0 / std::sqrt(mean_energy);
  return set;
}

RealMatrix z8_generator() {
  RealMatrix g(8, 8);
  g << -0.4081,  0.4726,  0.1809, -0.3955, -0.1556, -0.2860, -0.2408,  0.5070,
       -0.3256, -0.0526, -0.6611,  0.3368, -0.5730, -0.0934, -0.0510,  0.0329,
       -0.3481,  0.0745,  0.1031,  0.3303,  0.2050,  0.0771,  0.7672,  0.3421,
       -0.3844, -0.0969, -0.2606, -0.6933,  0.0365,  0.2074,  0.3121, -0.3905,
       -0.3905, -0.1319,  0.6135,  0.1962, -0.3501, -0.2271,  0.0040, -0.4909,
       -0.3832, -0.0759,  0.1271,  0.1629,  0.0892,  0.7841, -0.4096,  0.1193,
       -0.2931,  0.4104, -0.2385,  0.2690,  0.5999, -0.2462, -0.2212, -0.3834,
       -0.2710, -0.7532, -0.0468, -0.0540,  0.3372, -0.3654, -0.1917,  0.2649;
  return g;
}

RealMatrix z4_generator() {
  RealMatrix g(4, 4);
  g << -0.4316, -0.2863,  0.5857, -0.6234,
       -0.6856, -0.4520, -0.5445,  0.1707,
       -0.4479,  0.8285, -0.2068, -0.2647,
       -0.3782,  0.1649,  0.5636,  0.7157;
  return g;
}

LatticeSignalSet z8_rotated_set(IntegerAlphabet alphabet) {
  return make_lattice_set("z8rot", z8_generator(), std::move(alphabet));
}

LatticeSignalSet z4_grouped_set(IntegerAlphabet alphabet) {
  // Group members as (complex symbol index, 0 = in-phase / 1 = quadrature);
  // real coordinate position = 2 * symbol + part.
  static const int groups[4][4][2] = {
      {{0, 0}, {3, 1}, {4, 0}, {7, 1}},
      {{0, 1}, {3, 0}, {4, 1}, {7, 0}},
      {{1, 0}, {2, 1}, {5, 0}, {6, 1}},
      {{2, 0}, {1, 1}, {6, 0}, {5, 1}}};
  const RealMatrix g4 = z4_generator();
  RealMatrix g16 = RealMatrix::Zero(16, 16);
  std::vector<std::vector<int>> z_groups(4);
  for (int g = 0; g < 4; ++g) {
    for (int i = 0; i < 4; ++i) {
      const int pos = 2 * groups[g][i][0] + groups[g][i][1];
      for (int c = 0; c < 4; ++c) g16(pos, 4 * g + c) = g4(i, c);
      z_groups[g].push_back(4 * g + i);
    }
  }
  return make_lattice_set("z4rot", g16, std::move(alphabet), std::move(z_groups));
}

LatticeSignalSet pam_product_set(int T, const IntegerAlphabet& levels) {
  return make_lattice_set("pam2xT", RealMatrix::Identity(2 * T, 2 * T), levels);
}

LatticeSignalSet find_set(const std::string& id, int T) {
  if (id == "z8rot") {
    if (T != 4) throw std::invalid_argument("z8rot requires T = 4");
    return z8_rotated_set();
  }
  if (id == "z4rot") {
    if (T != 8) throw std::invalid_argument("z4rot requires T = 8");
    return z4_grouped_set();
  }
  if (id == "pam2xT") return pam_product_set(T, two_pam());
  throw std::invalid_argument("unknown constellation id: " + id);
}

std::vector<double> index_to_z(const LatticeSignalSet& set, std::int64_t index) {
  if (index < 0 || index >= set.point_count()) {
    throw std::out_of_range("index_to_z: index out of range");
  }
  const std::int64_t base = static_cast<std::int64_t>(set.alphabet.values.size());
  std::vector<double> z(set.n);
  for (int i = 0; i < set.n; ++i) {
    z[i] = set.alphabet.values[static_cast<std::size_t>(index % base)];
    index /= base;
  }
  return z;
}

ComplexVector index_to_symbols(const LatticeSignalSet& set, std::int64_t index) {
  const std::vector<double> z = index_to_z(set, index);
  const RealVector l =
      set.scale * (set.generator * Eigen::Map<const RealVector>(z.data(), set.n));
  ComplexVector s(set.n / 2);
  for (int k = 0; k < set.n / 2; ++k) s[k] = Complex(l[2 * k], l[2 * k + 1]);
  return s;
}

std::int64_t symbols_to_index(const LatticeSignalSet& set,
                              const ComplexVector& symbols) {
  if (symbols.size() != set.n / 2) {
    throw std::invalid_argument("symbols_to_index: length mismatch");
  }
  RealVector l(set.n);
  for (int k = 0; k < set.n / 2; ++k) {
    l[2 * k] = symbols[k].real();
    l[2 * k + 1] = symbols[k].imag();
  }
  const RealVector z = set.generator.partialPivLu().solve(l / set.scale);
  const std::int64_t base = static_cast<std::int64_t>(set.alphabet.values.size());
  std::int64_t index = 0;
  std::int64_t digit_weight = 1;
  for (int i = 0; i < set.n; ++i) {
    int best = -1;
    for (std::int64_t d = 0; d < base; ++d) {
      if (std::abs(z[i] - set.alphabet.values[static_cast<std::size_t>(d)]) < 1e-6) {
        best = static_cast<int>(d);
        break;
      }
    }
    if (best < 0) {
      throw std::invalid_argument("symbols_to_index: not a point of the set");
    }
    index += best * digit_weight;
    digit_weight *= base;
  }
  return index;
}

std::vector<ComplexVector> enumerate_points(const LatticeSignalSet& set) {
  const std::int64_t count = set.point_count();
  if (count > kMaxEnumeration) {
    throw std::invalid_argument("enumerate_points: set too large to enumerate");
  }
  std::vector<ComplexVector> points;
  points.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    points.push_back(index_to_symbols(set, i));
  }
  return points;
}

RealMatrix load_generator(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n <= 0 || n > 64) {
    throw std::invalid_argument("load_generator: bad dimension line");
  }
  RealMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!(in >> g(r, c))) {
        throw std::invalid_argument("load_generator: truncated matrix");
      }
    }
  }
  return g;
}

void save_generator(std::ostream& out, const RealMatrix& g) {
  out << g.rows() << "\n";
  const Eigen::IOFormat fmt(Eigen::FullPrecision, Eigen::DontAlignCols, " ", "\n");
  out << g.format(fmt) << "\n";
}

}  // namespace cidstc
