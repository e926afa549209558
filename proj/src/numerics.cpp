#include "cidstc/numerics.hpp"

#include <stdexcept>

namespace cidstc {

ComplexMatrix gram(const ComplexMatrix& a) {
  if (a.size() == 0) throw std::invalid_argument("gram: empty matrix");
  return a.adjoint() * a;
}

double min_singular_value(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("min_singular_value: matrix must be square");
  }
  const double fro = m.norm();
  const double herm_err = (m - m.adjoint()).norm();
  if (herm_err > 1e-9 * std::max(fro, 1.0)) {
    throw std::invalid_argument("min_singular_value: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("min_singular_value: eigensolver failed");
  }
  return std::max(0.0, es.eigenvalues().minCoeff());
}

Complex determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix must be square");
  }
  const Eigen::Index n = m.rows();
  if (n == 0) return Complex(1.0, 0.0);

  ComplexMatrix lu = m;
  Complex det(1.0, 0.0);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    double best = std::abs(lu(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double v = std::abs(lu(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best <= 1e-14) return Complex(0.0, 0.0);
    if (pivot != col) {
      lu.row(pivot).swap(lu.row(col));
      det = -det;
    }
    det *= lu(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Complex factor = lu(r, col) / lu(col, col);
      lu.row(r).tail(n - col) -= factor * lu.row(col).tail(n - col);
    }
  }
  return det;
}

}  // namespace cidstc
