// SPDX-License-Identifier: Apache-2.0
#include "qop/complex_matrix.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qop/errors.hpp"

namespace qop {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

cdouble ComplexMatrix::trace() const {
  cdouble t = 0.0;
  const std::size_t n = rows_ < cols_ ? rows_ : cols_;
  for (std::size_t i = 0; i < n; ++i) t += at(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  for (const cdouble& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw StructuralError("matrix addition: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double s) {
  for (cdouble& z : data_) z *= s;
  return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("matmul: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cdouble av = a.at(r, k);
      if (av == cdouble{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, c) += av * b.at(k, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw StructuralError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (!m.square()) throw StructuralError("hermiticity_deviation: matrix not square");
  double d = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      d = std::max(d, std::abs(m.at(r, c) - std::conj(m.at(c, r))));
  return d;
}

double hermitian_min_eigenvalue(const ComplexMatrix& m) {
  if (!m.square()) throw StructuralError("hermitian_min_eigenvalue: matrix not square");
  const std::size_t n = m.rows();
  Eigen::MatrixXcd h(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          0.5 * (m.at(r, c) + std::conj(m.at(c, r)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("hermitian_min_eigenvalue: eigensolver failed to converge");
  return solver.eigenvalues().minCoeff();
}

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace qop
