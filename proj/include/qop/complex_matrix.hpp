// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qop {

using cdouble = std::complex<double>;

// Dense row-major complex matrix. The workhorse value type for states,
// Kraus operators and Choi matrices; all entries must stay finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cdouble{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cdouble& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cdouble& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  cdouble& operator()(std::size_t r, std::size_t c) { return at(r, c); }
  const cdouble& operator()(std::size_t r, std::size_t c) const { return at(r, c); }

  const std::vector<cdouble>& data() const noexcept { return data_; }
  std::vector<cdouble>& data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cdouble trace() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

// Plain dense product a * b (dimensions must agree).
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// max_{r,c} |a[r,c] - b[r,c]|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max_{r,c} |m[r,c] - conj(m[c,r])| — distance from Hermitian symmetry.
double hermiticity_deviation(const ComplexMatrix& m);

// Smallest eigenvalue of the Hermitian part (m + m^dagger)/2.
double hermitian_min_eigenvalue(const ComplexMatrix& m);

// True iff n is a power of two (n >= 1).
bool is_power_of_two(std::size_t n);

}  // namespace qop
