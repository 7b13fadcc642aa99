// SPDX-License-Identifier: Apache-2.0
#pragma once

// Kraus-operator channels. A polynomial with admissible coefficients turns
// into a trace-preserving operation built purely from rank-one operators
// scale * E[row, col]: odd output rows accumulate the polynomial's value
// ("truth"), even rows the complement. Dense operator lists are supported
// alongside for the hard-coded gates.

#include <cstdint>
#include <span>
#include <vector>

#include "qop/complex_matrix.hpp"
#include "qop/densmat.hpp"
#include "qop/dkbasis.hpp"

namespace qop {

// scale * E[row, col] with row/col 0-based; scale > 0 (zero-scale operators
// are never stored).
struct RankOneKraus {
  double scale = 0.0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
};

// Raw operator list, not yet validated. This is the form the JSON codec and
// the verification command work with, so that broken files can be loaded
// and their deviation measured rather than rejected at the door.
struct KrausSet {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<RankOneKraus> rank_one;
  std::vector<ComplexMatrix> dense;
};

// max-entry deviation of sum_A A^dagger A from the identity. Rank-one
// operators contribute scale^2 to the diagonal bucket of their column; a
// dense sum is only materialized when dense operators are present.
double check_completeness(const KrausSet& set);

// Validated trace-preserving operation (completeness deviation <= 1e-12 at
// construction).
class QuantumOperation {
 public:
  explicit QuantumOperation(KrausSet set);

  std::size_t dim_in() const noexcept { return set_.dim_in; }
  std::size_t dim_out() const noexcept { return set_.dim_out; }
  std::size_t kraus_count() const noexcept {
    return set_.rank_one.size() + set_.dense.size();
  }
  const KrausSet& kraus() const noexcept { return set_; }

 private:
  KrausSet set_;
};

// The rank-one construction for a polynomial over the generator family:
// dimension 2^(n*k); for each diagonal position j with coefficient a_j,
// odd rows r carry scale sqrt(a_j / 2^(n*k-1)) and even rows carry
// sqrt((1 - a_j) / 2^(n*k-1)); zero scales are dropped. The operator count
// is exactly 2^(n*k-1) * sum_j([a_j > 0] + [a_j < 1]).
QuantumOperation build_polynomial_operation(const DkPolynomial& p);

// sum_A A rho A^dagger, validated as a density matrix. Dense application is
// capped at dimension 2^8.
DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho);

// Closed form of the polynomial operation on a product input with truth
// probabilities `probs`: (1/2^(n*k-1)) I^(n*k-1 factors) tensor
// diag(1 - P(probs), P(probs)).
DensityMatrix apply_closed_form(const DkPolynomial& p, std::span<const double> probs);

// Choi matrix sum_{ij} E_ij tensor E(E_ij); input dimension capped at 2^4.
ComplexMatrix choi_matrix(const KrausSet& set);

struct ChoiReport {
  double min_eigenvalue = 0.0;
  bool completely_positive() const { return min_eigenvalue >= -1e-10; }
};

// Convenience: Choi matrix + its minimum eigenvalue.
ChoiReport choi_check(const KrausSet& set);

}  // namespace qop
