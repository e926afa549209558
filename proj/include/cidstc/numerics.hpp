#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cidstc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A^H A. Hermitian PSD, size cols x cols.
ComplexMatrix gram(const ComplexMatrix& a);

/// Smallest singular value of a Hermitian PSD matrix (= smallest eigenvalue,
/// clamped at zero). Throws if the input is not Hermitian within 1e-9
/// relative to its Frobenius norm.
double min_singular_value(const ComplexMatrix& m);

/// Determinant by LU with partial pivoting. A pivot below 1e-14 declares the
/// matrix singular (returns exactly 0). Throws on non-square input.
Complex determinant(const ComplexMatrix& m);

}  // namespace cidstc
