// SPDX-License-Identifier: Apache-2.0
#pragma once

// The degree-k generator family over n variables: 2^(n*k) products, one per
// bitstring of n blocks with k slots each. Slot bit 1 contributes x_i, slot
// bit 0 contributes (1 - x_i). The family is indexed by position (equal
// polynomials at different positions stay distinct) and sums to 1 at every
// point. A bitstring maps to a diagonal position with the first block most
// significant, matching the state-space bit convention.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qop {

// Per-variable exponent vector for a monomial x^alpha.
struct MultiIndex {
  std::vector<int> exponents;
  int order() const;  // |alpha| = sum of exponents
};

// One member of the family: n blocks of k binary slots, stored as the
// diagonal position the bitstring denotes.
class DkIndex {
 public:
  DkIndex(int n, int k, std::uint64_t position);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::uint64_t position() const noexcept { return position_; }

  // Bit of slot s (0-based, left to right) in block i (0-based).
  int slot_bit(int block, int slot) const;

  // "(10)(01)"-style rendering, first block first.
  std::string to_string() const;

 private:
  int n_;
  int k_;
  std::uint64_t position_;
};

// Product of the slot factors at a point in [0,1]^n.
double dk_eval_element(const DkIndex& index, std::span<const double> point);

// Intermediate weighted coefficient vector over the family, before the
// [0, 1] admissibility gate.
struct DkWeights {
  int n = 0;
  int k = 0;
  std::vector<double> values;  // size 2^(n*k)
};

// Expansion of x^alpha: weight 1 on every bitstring whose first alpha_i
// slots per block are 1 (remaining slots free). Requires alpha_i <= k.
DkWeights monomial_to_dk(const MultiIndex& alpha, int k);

// Expansion of 1 - x^alpha: the 0/1 complement of monomial_to_dk.
DkWeights complement_to_dk(const MultiIndex& alpha, int k);

// Expansion of c * prod_i x_i^{a_i} (1 - x_i)^{b_i}: weight c on bitstrings
// whose block i starts with a_i ones then b_i zeros (rest free). Requires
// a_i + b_i <= k and c >= 0.
DkWeights product_term_to_dk(std::span<const std::pair<int, int>> factors, double c, int k);

// Polynomial sum_y a_y * element_y with every a_y in [0, 1] (the
// admissibility hypothesis of the channel construction; validated at
// construction, entries within 1e-12 of the range are clamped).
class DkPolynomial {
 public:
  DkPolynomial(int n, int k, std::vector<double> coeffs);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

 private:
  int n_;
  int k_;
  std::vector<double> coeffs_;
};

// Coefficient-wise sum of the parts; all parts must share (n, k). Throws
// CoefficientRangeError naming the first offending position if any summed
// coefficient leaves [-1e-12, 1 + 1e-12].
DkPolynomial assemble_dk(int n, int k, std::span<const DkWeights> parts);

// sum_y a_y * element_y(point).
double eval_dk(const DkPolynomial& p, std::span<const double> point);

// Sparse polynomial in ordinary monomials x^alpha (no zero coefficients
// stored; exponent vectors all share the variable count).
struct MonomialPoly {
  int n = 0;
  std::map<std::vector<int>, double> terms;

  double eval(std::span<const double> point) const;
  void add_term(const std::vector<int>& exponents, double coefficient);
  int max_degree() const;  // largest single-variable exponent
};

}  // namespace qop
