// SPDX-License-Identifier: Apache-2.0
#include "qop/densmat.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

#include "qop/errors.hpp"
#include "qop/kernels.hpp"

namespace qop {

namespace {

int qubit_count_checked(const ComplexMatrix& m) {
  if (!m.square()) throw StructuralError("density matrix must be square");
  if (m.rows() == 0 || !is_power_of_two(m.rows()))
    throw StructuralError("density matrix dimension must be a power of two");
  int q = 0;
  for (std::size_t d = m.rows(); d > 1; d >>= 1) ++q;
  return q;
}

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = -1e-10;

// sigma_0, sigma_x, sigma_y, sigma_z entries, indexed [pauli][row][col].
constexpr int kNumPauli = 4;
const cdouble kPauli[kNumPauli][2][2] = {
    {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}},    // identity
    {{{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}},    // x
    {{{0.0, 0.0}, {0.0, -1.0}}, {{0.0, 1.0}, {0.0, 0.0}}},   // y
    {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}}};  // z

const char kPauliLabel[kNumPauli] = {'0', 'x', 'y', 'z'};

int label_to_index(char c) {
  for (int i = 0; i < kNumPauli; ++i)
    if (kPauliLabel[i] == c) return i;
  throw StructuralError(std::string("unknown Pauli label '") + c + "'");
}

// Entry (r, c) of sigma_{s_1} x ... x sigma_{s_n} without materializing the
// Kronecker product; factor t reads bit (n-1-t) of the row/column index.
cdouble pauli_string_entry(std::span<const int> s, std::size_t r, std::size_t c) {
  const int n = static_cast<int>(s.size());
  cdouble v{1.0, 0.0};
  for (int t = 0; t < n; ++t) {
    const int shift = n - 1 - t;
    const std::size_t rb = (r >> shift) & 1u;
    const std::size_t cb = (c >> shift) & 1u;
    v *= kPauli[s[static_cast<std::size_t>(t)]][rb][cb];
    if (v == cdouble{0.0, 0.0}) return v;
  }
  return v;
}

}  // namespace

ValidationReport validate_density(const ComplexMatrix& m) {
  (void)qubit_count_checked(m);
  if (!m.all_finite()) throw StructuralError("density matrix has non-finite entries");
  ValidationReport report;
  report.hermiticity_deviation = hermiticity_deviation(m);
  report.trace_deviation = std::abs(m.trace() - cdouble{1.0, 0.0});
  report.min_eigenvalue = hermitian_min_eigenvalue(m);
  return report;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  const int qubits = qubit_count_checked(m);
  const ValidationReport report = validate_density(m);
  if (report.hermiticity_deviation > kHermTol) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian: deviation " << report.hermiticity_deviation;
    throw DomainError(msg.str());
  }
  if (report.trace_deviation > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace differs from 1 by " << report.trace_deviation;
    throw DomainError(msg.str());
  }
  if (report.min_eigenvalue < kPsdTol) {
    std::ostringstream msg;
    msg << "density matrix not positive semidefinite: min eigenvalue "
        << report.min_eigenvalue;
    throw DomainError(msg.str());
  }
  return DensityMatrix(qubits, std::move(m));
}

DensityMatrix make_density_from_prob(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw DomainError("make_density_from_prob: lambda must lie in [0, 1]");
  ComplexMatrix m(2, 2);
  m.at(0, 0) = 1.0 - lambda;
  m.at(1, 1) = lambda;
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix make_qubit(double alpha, cdouble beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("make_qubit: alpha must lie in [0, 1]");
  const double bound = alpha * (1.0 - alpha);
  const double norm2 = std::norm(beta);
  if (norm2 > bound + 1e-12) {
    std::ostringstream msg;
    msg << "make_qubit: |beta|^2 = " << norm2 << " exceeds alpha(1-alpha) = " << bound
        << " (positivity bound)";
    throw DomainError(msg.str());
  }
  ComplexMatrix m(2, 2);
  m.at(0, 0) = 1.0 - alpha;
  m.at(0, 1) = beta;
  m.at(1, 0) = std::conj(beta);
  m.at(1, 1) = alpha;
  return DensityMatrix::from_matrix(std::move(m));
}

double probability(const DensityMatrix& rho) {
  double p = 0.0;
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t i = 1; i < m.rows(); i += 2) p += m.at(i, i).real();
  if (p < 0.0 && p >= -1e-12) p = 0.0;
  if (p > 1.0 && p <= 1.0 + 1e-12) p = 1.0;
  return p;
}

DensityMatrix tensor(std::span<const DensityMatrix> factors) {
  if (factors.empty()) throw StructuralError("tensor: factor list is empty");
  ComplexMatrix acc = factors[0].matrix();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = kernels::kron(acc, factors[i].matrix());
  return DensityMatrix::from_matrix(std::move(acc));
}

PauliCoeffs pauli_expand(const DensityMatrix& rho) {
  const int n = rho.qubits();
  const std::size_t dim = rho.dim();
  PauliCoeffs out;
  out.n = n;
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  const std::size_t count = static_cast<std::size_t>(1) << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t c = code;
    std::string label(static_cast<std::size_t>(n), '0');
    for (int t = n - 1; t >= 0; --t) {
      s[static_cast<std::size_t>(t)] = static_cast<int>(c % 4);
      label[static_cast<std::size_t>(t)] = kPauliLabel[s[static_cast<std::size_t>(t)]];
      c /= 4;
    }
    // tr(sigma_s rho) = sum_{r,c} sigma_s[r,c] rho[c,r]
    cdouble tr{0.0, 0.0};
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t cc = 0; cc < dim; ++cc) {
        const cdouble se = pauli_string_entry(s, r, cc);
        if (se != cdouble{0.0, 0.0}) tr += se * rho.matrix().at(cc, r);
      }
    if (std::abs(tr.imag()) > 1e-10) {
      std::ostringstream msg;
      msg << "pauli_expand: coefficient for " << label << " has imaginary part "
          << tr.imag();
      throw DomainError(msg.str());
    }
    out.coeffs[label] = tr.real();
  }
  return out;
}

DensityMatrix pauli_reconstruct(const PauliCoeffs& coeffs) {
  const int n = coeffs.n;
  if (n < 1) throw StructuralError("pauli_reconstruct: need n >= 1");
  const std::string identity_label(static_cast<std::size_t>(n), '0');
  const auto it = coeffs.coeffs.find(identity_label);
  if (it == coeffs.coeffs.end() || std::abs(it->second - 1.0) > 1e-12)
    throw DomainError("pauli_reconstruct: identity coefficient must be 1");
  const std::size_t dim = static_cast<std::size_t>(1) << n;
  const double scale = 1.0 / static_cast<double>(dim);
  ComplexMatrix m(dim, dim);
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  for (const auto& [label, value] : coeffs.coeffs) {
    if (label.size() != static_cast<std::size_t>(n))
      throw StructuralError("pauli_reconstruct: label length differs from n");
    if (std::abs(value) > 1.0 + 1e-12)
      throw DomainError("pauli_reconstruct: |coefficient| exceeds 1 for " + label);
    for (int t = 0; t < n; ++t)
      s[static_cast<std::size_t>(t)] = label_to_index(label[static_cast<std::size_t>(t)]);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        const cdouble se = pauli_string_entry(s, r, c);
        if (se != cdouble{0.0, 0.0}) m.at(r, c) += scale * value * se;
      }
  }
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace qop
