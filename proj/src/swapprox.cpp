// SPDX-License-Identifier: Apache-2.0
#include "qop/swapprox.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "qop/errors.hpp"
#include "qop/kernels.hpp"

namespace qop {

namespace {

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  return c;
}

TargetFunction make_builtin(std::string name, int n,
                            std::function<double(std::span<const double>)> fn, double lo,
                            double hi) {
  TargetFunction f;
  f.name = std::move(name);
  f.n = n;
  f.fn = std::move(fn);
  f.range_lo = lo;
  f.range_hi = hi;
  return f;
}

std::vector<TargetFunction> make_registry() {
  std::vector<TargetFunction> base;
  base.push_back(make_builtin(
      "luka_sum", 2, [](std::span<const double> x) { return std::min(1.0, x[0] + x[1]); }, 0.0,
      1.0));
  base.push_back(make_builtin(
      "product", 2, [](std::span<const double> x) { return x[0] * x[1]; }, 0.0, 1.0));
  base.push_back(make_builtin(
      "probabilistic_sum", 2,
      [](std::span<const double> x) { return x[0] + x[1] - x[0] * x[1]; }, 0.0, 1.0));
  base.push_back(make_builtin(
      "min", 2, [](std::span<const double> x) { return std::min(x[0], x[1]); }, 0.0, 1.0));
  base.push_back(make_builtin(
      "max", 2, [](std::span<const double> x) { return std::max(x[0], x[1]); }, 0.0, 1.0));
  base.push_back(make_builtin(
      "negation", 1, [](std::span<const double> x) { return 1.0 - x[0]; }, 0.0, 1.0));
  std::vector<TargetFunction> all = base;
  for (const TargetFunction& f : base) all.push_back(shrink(f));
  return all;
}

}  // namespace

const std::vector<TargetFunction>& builtin_functions() {
  static const std::vector<TargetFunction> registry = make_registry();
  return registry;
}

std::optional<TargetFunction> find_builtin(const std::string& name) {
  for (const TargetFunction& f : builtin_functions())
    if (f.name == name) return f;
  return std::nullopt;
}

TargetFunction shrink(const TargetFunction& f) {
  TargetFunction g;
  g.name = f.name + "_shrunk";
  g.n = f.n;
  g.fn = [inner = f.fn](std::span<const double> x) { return 0.98 * inner(x) + 0.01; };
  g.range_lo = 0.98 * f.range_lo + 0.01;
  g.range_hi = 0.98 * f.range_hi + 0.01;
  return g;
}

MonomialPoly bernstein_poly(const TargetFunction& f, int k) {
  if (f.n < 1) throw StructuralError("bernstein_poly: target arity must be >= 1");
  if (k < 1) throw StructuralError("bernstein_poly: degree must be >= 1");
  const int n = f.n;
  MonomialPoly out;
  out.n = n;

  std::vector<int> beta(static_cast<std::size_t>(n), 0);
  std::vector<double> point(static_cast<std::size_t>(n), 0.0);
  std::vector<int> j(static_cast<std::size_t>(n), 0);
  std::vector<int> expo(static_cast<std::size_t>(n), 0);

  while (true) {
    for (int i = 0; i < n; ++i)
      point[static_cast<std::size_t>(i)] =
          static_cast<double>(beta[static_cast<std::size_t>(i)]) / static_cast<double>(k);
    double w = f.fn(point);
    for (int i = 0; i < n; ++i) w *= binomial(k, beta[static_cast<std::size_t>(i)]);

    if (w != 0.0) {
      // Expand prod_i x_i^beta_i (1 - x_i)^(k - beta_i) into monomials.
      std::fill(j.begin(), j.end(), 0);
      while (true) {
        double c = w;
        int parity = 0;
        for (int i = 0; i < n; ++i) {
          const auto ii = static_cast<std::size_t>(i);
          c *= binomial(k - beta[ii], j[ii]);
          parity += j[ii];
          expo[ii] = beta[ii] + j[ii];
        }
        out.add_term(expo, (parity & 1) ? -c : c);
        int t = n - 1;
        for (; t >= 0; --t) {
          const auto tt = static_cast<std::size_t>(t);
          if (++j[tt] <= k - beta[tt]) break;
          j[tt] = 0;
        }
        if (t < 0) break;
      }
    }

    int t = n - 1;
    for (; t >= 0; --t) {
      const auto tt = static_cast<std::size_t>(t);
      if (++beta[tt] <= k) break;
      beta[tt] = 0;
    }
    if (t < 0) break;
  }

  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (std::abs(it->second) <= 1e-12)
      it = out.terms.erase(it);
    else
      ++it;
  }
  return out;
}

SignedBundle rescale_with_M(const MonomialPoly& p0, double epsilon, double floor_M) {
  if (!(epsilon > 0.0)) throw DomainError("rescale_with_M: epsilon must be positive");
  SignedBundle bundle;
  bundle.n = p0.n;
  for (const auto& [alpha, a] : p0.terms)
    if (a < 0.0) bundle.negative_sum += -a;
  bundle.M = std::max({1.0, 2.0 * bundle.negative_sum / epsilon, floor_M});
  for (const auto& [alpha, a] : p0.terms) {
    if (a > 0.0)
      bundle.positives.emplace_back(MultiIndex{alpha}, a / bundle.M);
    else if (a < 0.0)
      bundle.complements.emplace_back(MultiIndex{alpha}, -a / bundle.M);
  }
  return bundle;
}

DkPolynomial bundle_to_dk(const SignedBundle& bundle, int k) {
  std::vector<DkWeights> parts;
  parts.reserve(bundle.positives.size() + bundle.complements.size());
  for (const auto& [alpha, w] : bundle.positives) {
    DkWeights part = monomial_to_dk(alpha, k);
    for (double& v : part.values) v *= w;
    parts.push_back(std::move(part));
  }
  for (const auto& [alpha, w] : bundle.complements) {
    DkWeights part = complement_to_dk(alpha, k);
    for (double& v : part.values) v *= w;
    parts.push_back(std::move(part));
  }
  if (parts.empty()) {
    // Zero polynomial: no terms to route, all coefficients vanish.
    const std::size_t size = static_cast<std::size_t>(1)
                             << (static_cast<unsigned>(bundle.n) * static_cast<unsigned>(k));
    return DkPolynomial(bundle.n, k, std::vector<double>(size, 0.0));
  }
  return assemble_dk(bundle.n, k, parts);
}

DkPolynomial bernstein_direct_dk(const TargetFunction& f, int k) {
  if (f.n < 1) throw StructuralError("bernstein_direct_dk: target arity must be >= 1");
  if (k < 1) throw StructuralError("bernstein_direct_dk: degree must be >= 1");
  if (f.range_lo < 0.0 || f.range_hi > 1.0)
    throw DomainError("bernstein_direct_dk: target range must lie within [0, 1]");
  const int n = f.n;
  if (n * k > 30) throw CapabilityError("bernstein_direct_dk: generator family too large: n*k > 30");
  const std::size_t size = static_cast<std::size_t>(1)
                           << (static_cast<unsigned>(n) * static_cast<unsigned>(k));
  const std::uint64_t mask = (static_cast<std::uint64_t>(1) << k) - 1;
  std::vector<double> coeffs(size, 0.0);
  std::vector<double> point(static_cast<std::size_t>(n), 0.0);
  for (std::size_t y = 0; y < size; ++y) {
    for (int i = 0; i < n; ++i) {
      const std::uint64_t block = (static_cast<std::uint64_t>(y) >> (k * (n - 1 - i))) & mask;
      point[static_cast<std::size_t>(i)] =
          static_cast<double>(std::popcount(block)) / static_cast<double>(k);
    }
    coeffs[y] = f.fn(point);
  }
  return DkPolynomial(n, k, std::move(coeffs));
}

double GridDiff::max_abs() const { return std::max(std::abs(signed_max), std::abs(signed_min)); }

GridDiff grid_diff(const std::function<double(std::span<const double>)>& f,
                   const std::function<double(std::span<const double>)>& g, int n,
                   int resolution) {
  const std::vector<double> a = kernels::eval_grid(f, n, resolution);
  const std::vector<double> b = kernels::eval_grid(g, n, resolution);
  const kernels::DiffScan scan = kernels::scan_diff(a, b);
  GridDiff out;
  out.signed_max = scan.signed_max;
  out.signed_min = scan.signed_min;
  out.argmax.assign(static_cast<std::size_t>(n), 0.0);
  out.argmin.assign(static_cast<std::size_t>(n), 0.0);
  kernels::grid_point(scan.argmax, n, resolution, out.argmax);
  kernels::grid_point(scan.argmin, n, resolution, out.argmin);
  return out;
}

double sup_error_grid(const std::function<double(std::span<const double>)>& f,
                      const std::function<double(std::span<const double>)>& g, int n,
                      int resolution) {
  return grid_diff(f, g, n, resolution).max_abs();
}

std::string to_string(SynthesisMode mode) {
  return mode == SynthesisMode::kPaper ? "paper" : "direct";
}

std::optional<SynthesisMode> parse_mode(const std::string& text) {
  if (text == "paper") return SynthesisMode::kPaper;
  if (text == "direct") return SynthesisMode::kDirect;
  return std::nullopt;
}

int effective_grid_resolution(int requested) {
  if (requested >= 2) return requested;
  if (const char* env = std::getenv("QOP_GRID_RES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 2 && v <= 100000) return static_cast<int>(v);
  }
  return 101;
}

SynthesisResult synthesize(const TargetFunction& f, const SynthesisOptions& options) {
  if (f.n < 1) throw StructuralError("synthesize: target arity must be >= 1");
  if (!(options.epsilon > 0.0)) throw DomainError("synthesize: epsilon must be positive");
  if (options.k_max < 1) throw StructuralError("synthesize: k_max must be >= 1");
  if (f.range_lo < 0.0 || f.range_hi > 1.0)
    throw DomainError("synthesize: target range must lie within [0, 1]");
  const int res = effective_grid_resolution(options.grid_resolution);

  int best_k = 0;
  double best_error = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= options.k_max; ++k) {
    double M = 1.0;
    std::optional<DkPolynomial> poly;
    if (options.mode == SynthesisMode::kDirect) {
      poly = bernstein_direct_dk(f, k);
    } else {
      const MonomialPoly p0 = bernstein_poly(f, k);
      // Minimal M for the shift inequality, doubled while ingestion still
      // reports a coefficient above 1; growing M keeps the error bound valid.
      double floor_M = 0.0;
      for (int attempt = 0; attempt < 64 && !poly; ++attempt) {
        SignedBundle bundle = rescale_with_M(p0, options.epsilon, floor_M);
        M = bundle.M;
        try {
          poly = bundle_to_dk(bundle, k);
        } catch (const CoefficientRangeError&) {
          floor_M = 2.0 * bundle.M;
        }
      }
      if (!poly) continue;
    }

    const double err = sup_error_grid(
        [&poly](std::span<const double> x) { return eval_dk(*poly, x); },
        [&f, M](std::span<const double> x) { return f.fn(x) / M; }, f.n, res);
    if (err < best_error) {
      best_error = err;
      best_k = k;
    }
    if (err <= options.epsilon) {
      QuantumOperation op = build_polynomial_operation(*poly);
      ApproxReport report;
      report.name = f.name;
      report.mode = to_string(options.mode);
      report.k = k;
      report.M = M;
      report.epsilon = options.epsilon;
      report.sup_error = err;
      report.kraus_count = op.kraus_count();
      report.grid = res;
      return SynthesisResult{std::move(op), std::move(*poly), std::move(report)};
    }
  }

  char msg[192];
  std::snprintf(msg, sizeof msg,
                "degree escalation exhausted at k_max=%d: best certified error %.6g (k=%d) "
                "exceeds epsilon %.6g",
                options.k_max, best_error, best_k, options.epsilon);
  throw SynthesisLimitError(msg, best_k, best_error);
}

}  // namespace qop
