// SPDX-License-Identifier: Apache-2.0
#pragma once

// Constructive approximation pipeline: tensor Bernstein polynomials as the
// universal approximator, a rescaling step that trades negative monomial
// coefficients for a positive shift (divide by M, add the absolute sum of
// the negative part), and ingestion into the generator family. Degree
// escalation certifies the end result on a lattice before accepting it.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qop/dkbasis.hpp"
#include "qop/krausfab.hpp"

namespace qop {

// Scalar target on [0,1]^n with a declared range.
struct TargetFunction {
  std::string name;
  int n = 0;
  std::function<double(std::span<const double>)> fn;
  double range_lo = 0.0;
  double range_hi = 1.0;

  double operator()(std::span<const double> point) const { return fn(point); }
};

// Fixed registry for the command-line surface: luka_sum (min(1, x+y)),
// product, probabilistic_sum (x+y-xy), min, max, negation (1-x), plus a
// "_shrunk" variant of each (0.98 f + 0.01, range inside the open unit
// interval).
const std::vector<TargetFunction>& builtin_functions();
std::optional<TargetFunction> find_builtin(const std::string& name);
TargetFunction shrink(const TargetFunction& f);  // 0.98 f + 0.01

// Tensor Bernstein polynomial of degree k per variable, expanded into
// monomials. Coefficients with |c| <= 1e-12 after accumulation are dropped.
MonomialPoly bernstein_poly(const TargetFunction& f, int k);

// Signed-term bundle after rescaling: positives become monomial terms of
// weight a/M, negatives become complement terms (1 - x^beta) of weight
// |a|/M, so the assembled polynomial equals p0/M + sum|negatives|/M.
struct SignedBundle {
  int n = 0;
  double M = 1.0;
  double negative_sum = 0.0;  // sum of |negative coefficients| of p0
  std::vector<std::pair<MultiIndex, double>> positives;
  std::vector<std::pair<MultiIndex, double>> complements;
};

// M = max(1, 2 * negative_sum / epsilon, floor_M). Requires epsilon > 0.
SignedBundle rescale_with_M(const MonomialPoly& p0, double epsilon, double floor_M = 0.0);

// Routes positives through monomial expansion and complements through the
// 0/1 complement, then assembles; propagates CoefficientRangeError when a
// summed coefficient leaves [0, 1] (caller raises M or k and retries).
DkPolynomial bundle_to_dk(const SignedBundle& bundle, int k);

// Shortcut when the range already fits [0, 1]: coefficient at a bitstring
// is f evaluated at the per-block popcount fractions. Equals the Bernstein
// polynomial pointwise; M = 1 by construction.
DkPolynomial bernstein_direct_dk(const TargetFunction& f, int k);

// Lattice difference scan between two scalar functions on [0,1]^n.
struct GridDiff {
  double signed_max = 0.0;
  double signed_min = 0.0;
  std::vector<double> argmax;
  std::vector<double> argmin;
  double max_abs() const;
};

GridDiff grid_diff(const std::function<double(std::span<const double>)>& f,
                   const std::function<double(std::span<const double>)>& g, int n,
                   int resolution);

// max over the lattice of |f - g|.
double sup_error_grid(const std::function<double(std::span<const double>)>& f,
                      const std::function<double(std::span<const double>)>& g, int n,
                      int resolution);

enum class SynthesisMode { kPaper, kDirect };

std::string to_string(SynthesisMode mode);
std::optional<SynthesisMode> parse_mode(const std::string& text);

struct ApproxReport {
  std::string name;
  std::string mode;
  int k = 0;
  double M = 1.0;
  double epsilon = 0.0;
  double sup_error = 0.0;  // certified |assembled - f/M| on the lattice
  std::size_t kraus_count = 0;
  int grid = 0;
};

struct SynthesisResult {
  QuantumOperation op;
  DkPolynomial poly;
  ApproxReport report;
};

struct SynthesisOptions {
  double epsilon = 0.1;
  SynthesisMode mode = SynthesisMode::kPaper;
  int k_max = 8;
  int grid_resolution = 0;  // 0: QOP_GRID_RES env var, else 101
};

// Escalates k = 1, 2, ... until the assembled polynomial is certified on
// the lattice: |assembled - f/M| <= epsilon (direct mode has M = 1). In
// paper mode M starts at the minimal rescaling value and doubles while the
// ingestion reports out-of-range coefficients. Throws SynthesisLimitError
// with the best attempt when the degree cap is exhausted.
SynthesisResult synthesize(const TargetFunction& f, const SynthesisOptions& options);

// Lattice resolution used for certification (flag > env > default 101).
int effective_grid_resolution(int requested);

}  // namespace qop
