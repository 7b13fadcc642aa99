// SPDX-License-Identifier: Apache-2.0
#pragma once

// Golden reference gates, hard-coded rather than derived, so the test suite
// can cross-check the general channel machinery against fixed data: a NOT
// gate, the eight-operator product channel (IAND), and the quadratic
// approximant of the truncated sum together with its ingestion attempt.

#include <optional>
#include <string>
#include <vector>

#include "qop/dkbasis.hpp"
#include "qop/krausfab.hpp"

namespace qop {

// Single dense bit-flip Kraus operator on one qubit; an involution, and
// probability(apply(not_op, rho)) = 1 - probability(rho).
QuantumOperation not_op();

// Eight dense 4x4 operators, each with a single 1/sqrt(2) entry; output on
// tau (x) sigma equals (1/2) I (x) rho_{p(tau) p(sigma)}, so the output
// probability is the product of the input probabilities.
QuantumOperation iand_op();

// Quadratic approximant of the truncated sum min(1, x+y), as the closed
// six-term formula 5/12 x(1-x) + 5/12 y(1-x) + 5/12 x(1-y) + 5/12 y(1-y)
// + x/2 + y/2.
double luka_value(double x, double y);

// Same polynomial in monomial form: (4/3)(x+y) - (5/12)(x^2+y^2) - (5/6)xy.
MonomialPoly luka_monomials();

// The six product terms (per-variable (ones, zeros) exponent pairs plus a
// weight) that the element-basis ingestion consumes.
struct ProductTerm {
  std::vector<std::pair<int, int>> factors;
  double weight = 0.0;
};
std::vector<ProductTerm> luka_terms();

// Ingests the six terms at degree k=2. The summed element coefficients
// exceed 1 (first at diagonal position 2 = (00)(10), value 4/3 from
// 5/12 + 5/12 + 1/2), so this throws CoefficientRangeError: the quadratic
// takes the value 16/15 > 1 at x = y = 0.8 and therefore admits no
// coefficient vector in [0, 1] at any degree.
DkPolynomial luka_poly();

// build_polynomial_operation(luka_poly()); propagates the range error above
// (no channel can realize a polynomial that exceeds 1 on the cube).
QuantumOperation luka_approx_op();

// Catalog entry for the golden artifacts.
struct GoldenGate {
  std::string name;        // NOT | IAND | LUKA_P
  std::string provenance;  // how the artifact is obtained in this library
  bool constructible = false;
};
const std::vector<GoldenGate>& golden_gates();

}  // namespace qop
