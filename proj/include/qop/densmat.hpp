// SPDX-License-Identifier: Apache-2.0
#pragma once

// Density matrices on m qubits and the Born-rule readout used throughout:
// the measured bit is the LAST tensor factor (least significant bit), and
// the "truth" probability is the trace against I \otimes ... \otimes P1 —
// the unscaled projector, i.e. the sum of odd-index diagonal entries.

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qop/complex_matrix.hpp"

namespace qop {

// Numeric acceptance report for a candidate density matrix.
struct ValidationReport {
  double hermiticity_deviation = 0.0;  // max |m[r,c] - conj(m[c,r])|
  double trace_deviation = 0.0;        // |tr(m) - 1|
  double min_eigenvalue = 0.0;         // of the Hermitian part
  bool passed() const {
    return hermiticity_deviation <= 1e-12 && trace_deviation <= 1e-12 &&
           min_eigenvalue >= -1e-10;
  }
};

// Computes the report; throws StructuralError for a non-square matrix or a
// dimension that is not a power of two.
ValidationReport validate_density(const ComplexMatrix& m);

// Hermitian, PSD (within -1e-10), unit-trace matrix of dimension 2^m.
// Validation runs at construction; instances are immutable.
class DensityMatrix {
 public:
  // Throws StructuralError / DomainError when validation fails.
  static DensityMatrix from_matrix(ComplexMatrix m);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  DensityMatrix(int qubits, ComplexMatrix m) : qubits_(qubits), matrix_(std::move(m)) {}
  int qubits_;
  ComplexMatrix matrix_;
};

// diag(1 - lambda, lambda); lambda must lie in [0, 1].
DensityMatrix make_density_from_prob(double lambda);

// [[1 - alpha, beta], [conj(beta), alpha]]; requires alpha in [0, 1] and
// |beta|^2 <= alpha (1 - alpha) + 1e-12.
DensityMatrix make_qubit(double alpha, cdouble beta);

// Sum of odd-index diagonal entries (probability of measuring 1 on the last
// factor), clamped to [0, 1] when within 1e-12 of the boundary.
double probability(const DensityMatrix& rho);

// Kronecker product of the factors in list order (last factor = least
// significant bit). The list must be non-empty.
DensityMatrix tensor(std::span<const DensityMatrix> factors);

// Real coefficient table over Pauli strings ("0", "x", "y", "z" per factor,
// first character = first factor). Every |coefficient| <= 1 + 1e-12.
struct PauliCoeffs {
  int n = 0;
  std::map<std::string, double> coeffs;
};

// P_s = tr(sigma_s rho). Throws DomainError if any trace has an imaginary
// part beyond 1e-10 (the matrix is then not Hermitian-consistent).
PauliCoeffs pauli_expand(const DensityMatrix& rho);

// rho = 2^-n sum_s P_s sigma_s. Requires the identity coefficient to be 1
// (within 1e-12); the result is validated like any density matrix.
DensityMatrix pauli_reconstruct(const PauliCoeffs& coeffs);

}  // namespace qop
