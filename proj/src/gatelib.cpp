// SPDX-License-Identifier: Apache-2.0
#include "qop/gatelib.hpp"

#include <cmath>

namespace qop {

QuantumOperation not_op() {
  ComplexMatrix sigma_x(2, 2);
  sigma_x.at(0, 1) = 1.0;
  sigma_x.at(1, 0) = 1.0;
  KrausSet set;
  set.dim_in = 2;
  set.dim_out = 2;
  set.dense.push_back(std::move(sigma_x));
  return QuantumOperation(std::move(set));
}

QuantumOperation iand_op() {
  // Golden data: one 1/sqrt(2) entry per operator at these 0-based
  // (row, col) positions. Never derived from the polynomial machinery;
  // the test suite checks the two constructions against each other.
  static constexpr int kPositions[8][2] = {
      {0, 0}, {0, 1}, {0, 2}, {2, 0}, {2, 1}, {2, 2}, {3, 3}, {1, 3},
  };
  const double s = 1.0 / std::sqrt(2.0);
  KrausSet set;
  set.dim_in = 4;
  set.dim_out = 4;
  for (const auto& pos : kPositions) {
    ComplexMatrix g(4, 4);
    g.at(pos[0], pos[1]) = s;
    set.dense.push_back(std::move(g));
  }
  return QuantumOperation(std::move(set));
}

double luka_value(double x, double y) {
  return 5.0 / 12.0 * x * (1.0 - x) + 5.0 / 12.0 * y * (1.0 - x) +
         5.0 / 12.0 * x * (1.0 - y) + 5.0 / 12.0 * y * (1.0 - y) + 0.5 * x + 0.5 * y;
}

MonomialPoly luka_monomials() {
  MonomialPoly p;
  p.n = 2;
  p.add_term({1, 0}, 4.0 / 3.0);
  p.add_term({0, 1}, 4.0 / 3.0);
  p.add_term({2, 0}, -5.0 / 12.0);
  p.add_term({0, 2}, -5.0 / 12.0);
  p.add_term({1, 1}, -5.0 / 6.0);
  return p;
}

std::vector<ProductTerm> luka_terms() {
  // (ones, zeros) per variable block, x first: x(1-x), y(1-x), x(1-y),
  // y(1-y), x, y.
  return {
      {{{1, 1}, {0, 0}}, 5.0 / 12.0},
      {{{0, 1}, {1, 0}}, 5.0 / 12.0},
      {{{1, 0}, {0, 1}}, 5.0 / 12.0},
      {{{0, 0}, {1, 1}}, 5.0 / 12.0},
      {{{1, 0}, {0, 0}}, 0.5},
      {{{0, 0}, {1, 0}}, 0.5},
  };
}

DkPolynomial luka_poly() {
  constexpr int k = 2;
  std::vector<DkWeights> parts;
  for (const ProductTerm& term : luka_terms())
    parts.push_back(product_term_to_dk(term.factors, term.weight, k));
  return assemble_dk(2, k, parts);  // throws: summed coefficients exceed 1
}

QuantumOperation luka_approx_op() { return build_polynomial_operation(luka_poly()); }

const std::vector<GoldenGate>& golden_gates() {
  static const std::vector<GoldenGate> gates = {
      {"NOT", "fixed dense bit-flip operator", true},
      {"IAND", "fixed eight-operator table", true},
      {"LUKA_P", "six-term ingestion; coefficients exceed 1, not constructible", false},
  };
  return gates;
}

}  // namespace qop
