#include "cidstc/codebook.hpp"

#include <functional>
#include <stdexcept>

namespace cidstc {
namespace {

const Complex kJ(0.0, 1.0);

/// Evaluates a printed linear array at a concrete variable assignment.
using DesignEvaluator =
    std::function<ComplexMatrix(const ComplexVector& x)>;

ComplexMatrix eval_ci8(const ComplexVector& v) {
  const Complex x1 = v[0], x2 = v[1], x3 = v[2], x4 = v[3];
  const Complex x5 = v[4], x6 = v[5], x7 = v[6], x8 = v[7];
  auto c = [](Complex z) { return std::conj(z); };
  ComplexMatrix m(8, 8);
  m << x1, c(x1), c(x4), x4, x5, c(x5), c(x8), x8,
       x2, c(x2), c(x3), x3, x6, c(x6), c(x7), x7,
       c(x3), x3, -x2, -c(x2), c(x7), x7, -x6, -c(x6),
       -c(x4), -x4, x1, c(x1), -c(x8), -x8, x5, c(x5),
       x5, c(x5), c(x8), x8, x1, c(x1), c(x4), x4,
       x6, c(x6), c(x7), x7, x2, c(x2), c(x3), x3,
       c(x7), x7, -x6, -c(x6), c(x3), x3, -x2, -c(x2),
       -c(x8), -x8, x5, c(x5), -c(x4), -x4, x1, c(x1);
  return m;
}

ComplexMatrix eval_rdstc8(const ComplexVector& v) {
  const Complex x1 = v[0], x2 = v[1], x3 = v[2], x4 = v[3];
  const Complex x5 = v[4], x6 = v[5], x7 = v[6], x8 = v[7];
  auto c = [](Complex z) { return std::conj(z); };
  ComplexMatrix m(8, 4);
  m << x1, c(x4), x5, c(x8),
       x2, c(x3), x6, c(x7),
       c(x3), -x2, c(x7), -x6,
       -c(x4), x1, -c(x8), x5,
       x5, c(x8), x1, c(x4),
       x6, c(x7), x2, c(x3),
       c(x7), -x6, c(x3), -x2,
       -c(x8), x5, -c(x4), x1;
  return m;
}

/// Real-linear map of one design column as a 2T x 2T real matrix acting on
/// stacked [Re x; Im x].
RealMatrix column_real_map(const DesignEvaluator& eval, int T, int col) {
  RealMatrix m(2 * T, 2 * T);
  for (int k = 0; k < T; ++k) {
    for (int part = 0; part < 2; ++part) {
      ComplexVector x = ComplexVector::Zero(T);
      x[k] = (part == 0) ? Complex(1.0, 0.0) : kJ;
      const ComplexVector c = eval(x).col(col);
      m.col(part * T + k).head(T) = c.real();
      m.col(part * T + k).tail(T) = c.imag();
    }
  }
  return m;
}

/// Reads the per-coordinate variable map off the design's first column
/// (the information vector): s_t = factor * x_src or factor * conj(x_src).
std::vector<VarMapEntry> extract_var_map(const DesignEvaluator& eval, int T) {
  std::vector<VarMapEntry> map(T);
  // f(x) = L x + C x*:  L[:,k] = (f(e_k) - j f(j e_k)) / 2,
  //                     C[:,k] = (f(e_k) + j f(j e_k)) / 2.
  ComplexMatrix lin(T, T), conj_lin(T, T);
  for (int k = 0; k < T; ++k) {
    ComplexVector e = ComplexVector::Zero(T);
    e[k] = Complex(1.0, 0.0);
    const ComplexVector fe = eval(e).col(0);
    e[k] = kJ;
    const ComplexVector fje = eval(e).col(0);
    lin.col(k) = 0.5 * (fe - kJ * fje);
    conj_lin.col(k) = 0.5 * (fe + kJ * fje);
  }
  for (int t = 0; t < T; ++t) {
    int found = 0;
    for (int k = 0; k < T; ++k) {
      if (std::abs(lin(t, k)) > 1e-12) {
        map[t] = {k, lin(t, k), false};
        ++found;
      }
      if (std::abs(conj_lin(t, k)) > 1e-12) {
        map[t] = {k, conj_lin(t, k), true};
        ++found;
      }
    }
    if (found != 1) {
      throw std::runtime_error(
          "extract_var_map: first column is not a coordinate-wise map");
    }
  }
  return map;
}

/// Recovers the unitary matrix A with col_j(x) = A * col_0(x) for all x.
/// Works in real coordinates and checks the result is complex-linear.
ComplexMatrix extract_relay_matrix(const DesignEvaluator& eval, int T,
                                   int col, const RealMatrix& first_inv) {
  const RealMatrix b = column_real_map(eval, T, col) * first_inv;
  const RealMatrix x = b.topLeftCorner(T, T);
  const RealMatrix y = b.bottomLeftCorner(T, T);
  const double structure_err = (b.topRightCorner(T, T) + y).norm() +
                               (b.bottomRightCorner(T, T) - x).norm();
  if (structure_err > 1e-10) {
    throw std::runtime_error(
        "extract_relay_matrix: column is not complex-linear in the "
        "information vector");
  }
  ComplexMatrix a(T, T);
  a.real() = x;
  a.imag() = y;
  return a;
}

RelayDesign extract_design(std::string id, DesignKind kind, int T, int R,
                           int printed_cols, const DesignEvaluator& eval) {
  RelayDesign d;
  d.id = std::move(id);
  d.kind = kind;
  d.T = T;
  d.R = R;
  d.var_map = extract_var_map(eval, T);
  const RealMatrix first_inv = column_real_map(eval, T, 0).inverse();
  const int step = (kind == DesignKind::Cidstc) ? 2 : 1;
  for (int col = 0; col < printed_cols; col += step) {
    d.matrices.push_back(extract_relay_matrix(eval, T, col, first_inv));
  }
  d.validate();
  return d;
}

std::vector<VarMapEntry> identity_var_map(int T) {
  std::vector<VarMapEntry> map(T);
  for (int t = 0; t < T; ++t) map[t] = {t, Complex(1.0, 0.0), false};
  return map;
}

}  // namespace

ComplexVector RelayDesign::information_vector(const ComplexVector& x) const {
  if (x.size() != T) {
    throw std::invalid_argument("information_vector: expected length T");
  }
  ComplexVector s(T);
  for (int t = 0; t < T; ++t) {
    const VarMapEntry& e = var_map[t];
    s[t] = e.factor * (e.conjugate ? std::conj(x[e.src]) : x[e.src]);
  }
  return s;
}

void RelayDesign::validate() const {
  if (kind == DesignKind::Cidstc) {
    if (antennas() != 2 * R || T < 4 * R) {
      throw std::invalid_argument("RelayDesign: CIDSTC requires 2R matrices and T >= 4R");
    }
  } else if (T < 2 * antennas()) {
    throw std::invalid_argument("RelayDesign: RDSTC requires T >= 2 * antennas");
  }
  for (const ComplexMatrix& a : matrices) {
    if (a.rows() != T || a.cols() != T) {
      throw std::invalid_argument("RelayDesign: matrices must be T x T");
    }
    const double err = (a.adjoint() * a - ComplexMatrix::Identity(T, T)).norm();
    if (err > 1e-10) {
      throw std::invalid_argument("RelayDesign: matrix is not unitary");
    }
  }
  if (static_cast<int>(var_map.size()) != T) {
    throw std::invalid_argument("RelayDesign: var_map must have T entries");
  }
}

ComplexMatrix build_cidstc_codeword(const RelayDesign& design,
                                    const ComplexVector& x) {
  if (design.kind != DesignKind::Cidstc) {
    throw std::invalid_argument("build_cidstc_codeword: not a CIDSTC design");
  }
  if (x.size() != design.T) {
    throw std::invalid_argument("build_cidstc_codeword: length mismatch");
  }
  const ComplexVector s = design.information_vector(x);
  const ComplexVector sc = s.conjugate();
  ComplexMatrix codeword(design.T, 4 * design.R);
  for (int m = 0; m < design.antennas(); ++m) {
    codeword.col(2 * m) = design.matrices[m] * s;
    codeword.col(2 * m + 1) = design.matrices[m] * sc;
  }
  return codeword;
}

ComplexMatrix build_rdstc_codeword(const RelayDesign& design,
                                   const ComplexVector& x) {
  if (design.kind != DesignKind::Rdstc) {
    throw std::invalid_argument("build_rdstc_codeword: not an RDSTC design");
  }
  if (x.size() != design.T) {
    throw std::invalid_argument("build_rdstc_codeword: length mismatch");
  }
  const ComplexVector s = design.information_vector(x);
  ComplexMatrix codeword(design.T, design.antennas());
  for (int m = 0; m < design.antennas(); ++m) {
    codeword.col(m) = design.matrices[m] * s;
  }
  return codeword;
}

ComplexMatrix build_codeword(const RelayDesign& design, const ComplexVector& x) {
  return design.kind == DesignKind::Cidstc ? build_cidstc_codeword(design, x)
                                           : build_rdstc_codeword(design, x);
}

RelayDesign example1_design() {
  RelayDesign d;
  d.id = "example1";
  d.kind = DesignKind::Cidstc;
  d.T = 4;
  d.R = 1;
  d.var_map = identity_var_map(4);
  ComplexMatrix a11 = ComplexMatrix::Identity(4, 4);
  ComplexMatrix a21 = ComplexMatrix::Zero(4, 4);
  a21(0, 1) = kJ;
  a21(1, 0) = Complex(1.0, 0.0);
  a21(2, 3) = kJ;
  a21(3, 2) = Complex(1.0, 0.0);
  d.matrices = {a11, a21};
  d.validate();
  return d;
}

RelayDesign ci8_design() {
  return extract_design("ci8", DesignKind::Cidstc, 8, 2, 8, eval_ci8);
}

RelayDesign rdstc8_design() {
  return extract_design("rdstc8", DesignKind::Rdstc, 8, 2, 4, eval_rdstc8);
}

const std::vector<RelayDesign>& builtin_designs() {
  static const std::vector<RelayDesign> designs = {
      example1_design(), ci8_design(), rdstc8_design()};
  return designs;
}

const RelayDesign& find_design(const std::string& id) {
  for (const RelayDesign& d : builtin_designs()) {
    if (d.id == id) return d;
  }
  throw std::invalid_argument("unknown design id: " + id);
}

}  // namespace cidstc
