// SPDX-License-Identifier: Apache-2.0
#include "qop/dkbasis.hpp"

#include <cmath>
#include <sstream>

#include "qop/errors.hpp"
#include "qop/kernels.hpp"

namespace qop {

namespace {

void check_shape(int n, int k) {
  if (n < 1 || k < 1) throw StructuralError("generator family needs n >= 1 and k >= 1");
  if (n * k > 30) throw CapabilityError("generator family too large: n*k > 30");
}

std::size_t family_size(int n, int k) {
  return static_cast<std::size_t>(1) << (static_cast<unsigned>(n) * static_cast<unsigned>(k));
}

std::string position_string(int n, int k, std::uint64_t position) {
  std::string out;
  const int nk = n * k;
  for (int i = 0; i < n; ++i) {
    out += '(';
    for (int s = 0; s < k; ++s) {
      const int shift = nk - 1 - (i * k + s);
      out += ((position >> shift) & 1u) ? '1' : '0';
    }
    out += ')';
  }
  return out;
}

}  // namespace

int MultiIndex::order() const {
  int sum = 0;
  for (int e : exponents) sum += e;
  return sum;
}

DkIndex::DkIndex(int n, int k, std::uint64_t position) : n_(n), k_(k), position_(position) {
  check_shape(n, k);
  if (position >= family_size(n, k))
    throw StructuralError("DkIndex: position exceeds 2^(n*k) - 1");
}

int DkIndex::slot_bit(int block, int slot) const {
  if (block < 0 || block >= n_ || slot < 0 || slot >= k_)
    throw StructuralError("DkIndex: block/slot out of range");
  const int shift = n_ * k_ - 1 - (block * k_ + slot);
  return static_cast<int>((position_ >> shift) & 1u);
}

std::string DkIndex::to_string() const { return position_string(n_, k_, position_); }

namespace {

void check_cube(std::span<const double> point, const char* who) {
  for (double x : point)
    if (!(x >= 0.0 && x <= 1.0))
      throw DomainError(std::string(who) + ": coordinates must lie in [0, 1]");
}

}  // namespace

double dk_eval_element(const DkIndex& index, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(index.n()))
    throw StructuralError("dk_eval_element: point size differs from n");
  check_cube(point, "dk_eval_element");
  double v = 1.0;
  for (int i = 0; i < index.n(); ++i) {
    const double x = point[static_cast<std::size_t>(i)];
    for (int s = 0; s < index.k(); ++s) v *= index.slot_bit(i, s) ? x : (1.0 - x);
  }
  return v;
}

namespace {

// Shared expansion engine: block i must start with ones_i ones followed by
// zeros_i zeros; the remaining slots range over all assignments.
DkWeights expand_blocks(std::span<const std::pair<int, int>> blocks, double weight, int k) {
  const int n = static_cast<int>(blocks.size());
  check_shape(n, k);
  DkWeights out;
  out.n = n;
  out.k = k;
  out.values.assign(family_size(n, k), 0.0);

  std::vector<std::uint64_t> prefix(static_cast<std::size_t>(n));
  std::vector<int> free_bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto [ones, zeros] = blocks[static_cast<std::size_t>(i)];
    if (ones < 0 || zeros < 0 || ones + zeros > k)
      throw DegreeError("block exponents exceed the expansion degree k");
    // k-bit block pattern, most significant slot first: ones, zeros, free.
    const int free_count = k - ones - zeros;
    std::uint64_t fixed = 0;
    for (int s = 0; s < ones; ++s) fixed |= static_cast<std::uint64_t>(1) << (k - 1 - s);
    prefix[static_cast<std::size_t>(i)] = fixed;
    free_bits[static_cast<std::size_t>(i)] = free_count;
  }

  // Enumerate the Cartesian product of free-slot assignments.
  std::vector<std::uint64_t> choice(static_cast<std::size_t>(n), 0);
  while (true) {
    std::uint64_t pos = 0;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t block =
          prefix[static_cast<std::size_t>(i)] | choice[static_cast<std::size_t>(i)];
      pos |= block << (static_cast<unsigned>(k) * static_cast<unsigned>(n - 1 - i));
    }
    out.values[pos] += weight;
    int i = n - 1;
    for (; i >= 0; --i) {
      const std::uint64_t limit = static_cast<std::uint64_t>(1)
                                  << free_bits[static_cast<std::size_t>(i)];
      if (++choice[static_cast<std::size_t>(i)] < limit) break;
      choice[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace

DkWeights monomial_to_dk(const MultiIndex& alpha, int k) {
  std::vector<std::pair<int, int>> blocks;
  blocks.reserve(alpha.exponents.size());
  for (int e : alpha.exponents) {
    if (e < 0) throw DegreeError("monomial_to_dk: negative exponent");
    if (e > k) throw DegreeError("monomial_to_dk: exponent exceeds degree k");
    blocks.emplace_back(e, 0);
  }
  return expand_blocks(blocks, 1.0, k);
}

DkWeights complement_to_dk(const MultiIndex& alpha, int k) {
  DkWeights delta = monomial_to_dk(alpha, k);
  for (double& v : delta.values) v = 1.0 - v;
  return delta;
}

DkWeights product_term_to_dk(std::span<const std::pair<int, int>> factors, double c, int k) {
  if (c < 0.0) throw DomainError("product_term_to_dk: weight must be non-negative");
  return expand_blocks(factors, c, k);
}

DkPolynomial::DkPolynomial(int n, int k, std::vector<double> coeffs)
    : n_(n), k_(k), coeffs_(std::move(coeffs)) {
  check_shape(n, k);
  if (coeffs_.size() != family_size(n, k))
    throw StructuralError("DkPolynomial: coefficient count differs from 2^(n*k)");
  for (std::size_t y = 0; y < coeffs_.size(); ++y) {
    double& a = coeffs_[y];
    if (!std::isfinite(a) || a < -1e-12 || a > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "coefficient " << a << " at position " << y << " = "
          << position_string(n, k, y) << " lies outside [0, 1]";
      throw CoefficientRangeError(msg.str(), y, a);
    }
    if (a < 0.0) a = 0.0;
    if (a > 1.0) a = 1.0;
  }
}

DkPolynomial assemble_dk(int n, int k, std::span<const DkWeights> parts) {
  check_shape(n, k);
  std::vector<double> sum(family_size(n, k), 0.0);
  for (const DkWeights& part : parts) {
    if (part.n != n || part.k != k)
      throw StructuralError("assemble_dk: part has mismatched (n, k)");
    if (part.values.size() != sum.size())
      throw StructuralError("assemble_dk: part has wrong coefficient count");
    for (std::size_t y = 0; y < sum.size(); ++y) sum[y] += part.values[y];
  }
  return DkPolynomial(n, k, std::move(sum));  // range check happens here
}

double eval_dk(const DkPolynomial& p, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(p.n()))
    throw StructuralError("eval_dk: point size differs from n");
  check_cube(point, "eval_dk");
  return kernels::dk_value_serial(p.coeffs(), p.n(), p.k(), point);
}

double MonomialPoly::eval(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& [alpha, coeff] : terms) {
    double t = coeff;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const double x = point[i];
      for (int e = 0; e < alpha[i]; ++e) t *= x;
    }
    total += t;
  }
  return total;
}

void MonomialPoly::add_term(const std::vector<int>& exponents, double coefficient) {
  if (static_cast<int>(exponents.size()) != n)
    throw StructuralError("MonomialPoly: exponent vector length differs from n");
  auto it = terms.find(exponents);
  if (it == terms.end()) {
    if (coefficient != 0.0) terms.emplace(exponents, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second == 0.0) terms.erase(it);
}

int MonomialPoly::max_degree() const {
  int deg = 0;
  for (const auto& [alpha, coeff] : terms)
    for (int e : alpha) deg = std::max(deg, e);
  return deg;
}

}  // namespace qop
