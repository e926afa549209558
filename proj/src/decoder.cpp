#include "cidstc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cidstc {
namespace {

void check_problem(const DecodeProblem& p) {
  if (p.design == nullptr || p.set == nullptr) {
    throw std::invalid_argument("decode: problem missing design or signal set");
  }
  if (p.set->n != 2 * p.design->T) {
    throw std::invalid_argument("decode: signal set dimension != 2T");
  }
  if (p.scale <= 0.0) throw std::invalid_argument("decode: scale must be positive");
}

std::int64_t z_digits_to_index(const std::vector<int>& digits, std::int64_t base) {
  std::int64_t index = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    index = index * base + digits[i];
  }
  return index;
}

}  // namespace

DecoderContext::DecoderContext(const RelayDesign& design,
                               const LatticeSignalSet& set)
    : design_(&design), set_(set) {
  if (set.n != 2 * design.T) {
    throw std::invalid_argument("DecoderContext: signal set dimension != 2T");
  }
  const int T = design.T;
  var_codewords_.reserve(2 * T);
  for (int v = 0; v < 2 * T; ++v) {
    ComplexVector x = ComplexVector::Zero(T);
    x[v / 2] = (v % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    var_codewords_.push_back(build_codeword(design, x));
  }
  gen_scaled_ = set.scale * set.generator;
}

LatticeForm DecoderContext::form(const ComplexVector& y, const ComplexVector& h,
                                 double scale) const {
  const int T = design_->T;
  RealMatrix var_cols(2 * T, 2 * T);
  for (int v = 0; v < 2 * T; ++v) {
    const ComplexVector c = scale * (var_codewords_[v] * h);
    var_cols.col(v).head(T) = c.real();
    var_cols.col(v).tail(T) = c.imag();
  }
  LatticeForm f;
  f.basis = var_cols * gen_scaled_;
  f.y_real.resize(2 * T);
  f.y_real.head(T) = y.real();
  f.y_real.tail(T) = y.imag();
  return f;
}

const RealMatrix& DecoderContext::zmat() const {
  if (!zmat_) {
    const std::int64_t count = set_.point_count();
    if (count > (1 << 20)) {
      throw std::invalid_argument("decode_exhaustive: codebook too large");
    }
    RealMatrix z(count, set_.n);
    for (std::int64_t i = 0; i < count; ++i) {
      const std::vector<double> zi = index_to_z(set_, i);
      for (int c = 0; c < set_.n; ++c) z(i, c) = zi[c];
    }
    zmat_ = std::move(z);
  }
  return *zmat_;
}

std::int64_t DecoderContext::decode_exhaustive(const LatticeForm& form) const {
  const RealMatrix& z = zmat();
  // ||y - Bz||^2 = ||y||^2 - 2 z.(B^T y) + z.(B^T B)z
  const RealVector bty = form.basis.transpose() * form.y_real;
  const RealMatrix btb = form.basis.transpose() * form.basis;
  const RealVector quad = ((z * btb).cwiseProduct(z)).rowwise().sum();
  const RealVector metric = quad - 2.0 * (z * bty);
  std::int64_t best = 0;
  double best_m = metric[0];
  for (std::int64_t i = 1; i < metric.size(); ++i) {
    if (metric[i] < best_m) {
      best_m = metric[i];
      best = i;
    }
  }
  return best;
}

std::int64_t DecoderContext::decode_sphere(const LatticeForm& form,
                                           SphereStats* stats) const {
  const int n = set_.n;
  const std::vector<double>& alpha = set_.alphabet.values;
  const int nalpha = static_cast<int>(alpha.size());
  const std::int64_t base = nalpha;

  Eigen::HouseholderQR<RealMatrix> qr(form.basis);
  RealMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  RealVector qy = (qr.householderQ().transpose() * form.y_real).head(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(r(i, i)) < 1e-12) {
      throw std::runtime_error("sphere_decode: rank-deficient lattice basis");
    }
    if (r(i, i) < 0.0) {
      r.row(i) = -r.row(i);
      qy[i] = -qy[i];
    }
  }

  double best_m = std::numeric_limits<double>::infinity();
  std::int64_t best_index = -1;
  std::vector<int> digits(n, 0);

  // Per-level enumeration state: candidate alphabet order and position.
  std::vector<std::vector<int>> order(n, std::vector<int>(nalpha));
  std::vector<int> pos(n, 0);
  std::vector<double> partial(n + 1, 0.0);  // partial[i+1] accumulated above level i
  std::vector<double> center(n, 0.0);

  // z value at level k is alpha[digits[k]].
  std::vector<double> zval(n, 0.0);

  auto prepare = [&](int i) {
    double proj = qy[i];
    for (int k = i + 1; k < n; ++k) proj -= r(i, k) * zval[k];
    center[i] = proj / r(i, i);
    std::vector<int>& ord = order[i];
    for (int a = 0; a < nalpha; ++a) ord[a] = a;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      const double da = std::abs(alpha[a] - center[i]);
      const double db = std::abs(alpha[b] - center[i]);
      if (da != db) return da < db;
      return a < b;
    });
    pos[i] = 0;
  };

  long nodes = 0;
  int level = n - 1;
  prepare(level);
  while (level < n) {
    if (pos[level] >= nalpha) {
      ++level;  // exhausted this level, backtrack
      if (level < n) ++pos[level];
      continue;
    }
    const int a = order[level][pos[level]];
    const double d = r(level, level) * (alpha[a] - center[level]);
    const double pd = partial[level + 1] + d * d;
    ++nodes;
    if (pd > best_m) {
      // Schnorr-Euchner order: everything further at this level is worse.
      pos[level] = nalpha;
      continue;
    }
    digits[level] = a;
    zval[level] = alpha[a];
    if (level == 0) {
      const std::int64_t index = z_digits_to_index(digits, base);
      if (pd < best_m || (pd == best_m && index < best_index)) {
        best_m = pd;
        best_index = index;
      }
      ++pos[level];
    } else {
      partial[level] = pd;
      --level;
      prepare(level);
    }
  }
  if (stats) stats->nodes = nodes;
  if (best_index < 0) throw std::runtime_error("sphere_decode: no point found");
  return best_index;
}

std::int64_t DecoderContext::decode_group(const LatticeForm& form) const {
  const std::vector<std::vector<int>>& groups = set_.z_groups;
  if (groups.empty()) {
    throw std::invalid_argument(
        "group_decode: signal set carries no group structure");
  }
  if (design_->kind != DesignKind::Rdstc) {
    throw std::invalid_argument("group_decode: requires an RDSTC design");
  }
  const int n = set_.n;
  const RealMatrix btb = form.basis.transpose() * form.basis;
  const RealVector bty = form.basis.transpose() * form.y_real;

  // The decomposition is only exact when basis columns of different groups
  // are orthogonal; verify instead of assuming.
  const double diag_scale = std::max(btb.diagonal().maxCoeff(), 1e-30);
  std::vector<int> group_of(n, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int c : groups[g]) group_of[c] = static_cast<int>(g);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (group_of[a] != group_of[b] && std::abs(btb(a, b)) > 1e-8 * diag_scale) {
        throw std::invalid_argument(
            "group_decode: metric does not separate over the given groups");
      }
    }
  }

  const std::vector<double>& alpha = set_.alphabet.values;
  const std::int64_t base = static_cast<std::int64_t>(alpha.size());
  std::vector<int> digits(n, 0);
  for (const std::vector<int>& members : groups) {
    const int m = static_cast<int>(members.size());
    std::int64_t combos = 1;
    for (int i = 0; i < m; ++i) combos *= base;
    double best_metric = std::numeric_limits<double>::infinity();
    std::vector<int> best_digits(m, 0);
    std::vector<int> cur(m, 0);
    for (std::int64_t c = 0; c < combos; ++c) {
      std::int64_t rem = c;
      for (int i = 0; i < m; ++i) {
        cur[i] = static_cast<int>(rem % base);
        rem /= base;
      }
      // metric_g = z_g^T B_g z_g - 2 z_g . (B^T y)_g
      double metric = 0.0;
      for (int i = 0; i < m; ++i) {
        const double zi = alpha[cur[i]];
        metric -= 2.0 * zi * bty[members[i]];
        for (int k = 0; k < m; ++k) {
          metric += zi * alpha[cur[k]] * btb(members[i], members[k]);
        }
      }
      if (metric < best_metric) {
        best_metric = metric;
        best_digits = cur;
      }
    }
    for (int i = 0; i < m; ++i) digits[members[i]] = best_digits[i];
  }
  return z_digits_to_index(digits, base);
}

LatticeForm build_lattice_form(const DecodeProblem& p) {
  check_problem(p);
  DecoderContext ctx(*p.design, *p.set);
  return ctx.form(p.y, p.h, p.scale);
}

std::int64_t ml_exhaustive(const DecodeProblem& p) {
  check_problem(p);
  const std::int64_t count = p.set->point_count();
  if (count <= 0) throw std::invalid_argument("ml_exhaustive: empty codebook");
  if (count > (1 << 20)) {
    throw std::invalid_argument("ml_exhaustive: codebook too large");
  }
  std::int64_t best = -1;
  double best_m = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < count; ++i) {
    const ComplexVector x = index_to_symbols(*p.set, i);
    const ComplexMatrix s = build_codeword(*p.design, x);
    const double m = (p.y - p.scale * (s * p.h)).squaredNorm();
    if (m < best_m) {
      best_m = m;
      best = i;
    }
  }
  return best;
}

std::int64_t sphere_decode(const DecodeProblem& p, const LatticeForm& form,
                           SphereStats* stats) {
  check_problem(p);
  DecoderContext ctx(*p.design, *p.set);
  return ctx.decode_sphere(form, stats);
}

std::int64_t sphere_decode(const DecodeProblem& p) {
  check_problem(p);
  DecoderContext ctx(*p.design, *p.set);
  return ctx.decode_sphere(ctx.form(p.y, p.h, p.scale));
}

std::int64_t group_decode_rdstc(const DecodeProblem& p) {
  check_problem(p);
  DecoderContext ctx(*p.design, *p.set);
  return ctx.decode_group(ctx.form(p.y, p.h, p.scale));
}

}  // namespace cidstc
