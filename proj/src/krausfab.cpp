// SPDX-License-Identifier: Apache-2.0
#include "qop/krausfab.hpp"

#include <cmath>
#include <sstream>

#include "qop/errors.hpp"
#include "qop/kernels.hpp"

namespace qop {

namespace {

constexpr double kCompletenessTol = 1e-12;
constexpr std::size_t kDenseApplyCap = 256;  // 2^8
constexpr std::size_t kChoiCap = 16;         // 2^4

void check_set_shape(const KrausSet& set) {
  if (set.dim_in == 0 || set.dim_out == 0)
    throw StructuralError("operator set: dimensions must be positive");
  for (const RankOneKraus& t : set.rank_one) {
    if (t.row >= set.dim_out || t.col >= set.dim_in)
      throw StructuralError("operator set: rank-one index out of range");
    if (!(t.scale > 0.0) || !std::isfinite(t.scale))
      throw StructuralError("operator set: rank-one scale must be positive and finite");
  }
  for (const ComplexMatrix& m : set.dense) {
    if (m.rows() != set.dim_out || m.cols() != set.dim_in)
      throw StructuralError("operator set: dense operator has wrong shape");
    if (!m.all_finite())
      throw StructuralError("operator set: dense operator has non-finite entries");
  }
}

// E(m) = sum_A A m A^dagger without any density validation; used by the
// Choi construction on non-state inputs.
ComplexMatrix apply_to_matrix(const KrausSet& set, const ComplexMatrix& m) {
  ComplexMatrix out(set.dim_out, set.dim_out);
  for (const RankOneKraus& t : set.rank_one)
    out.at(t.row, t.row) += (t.scale * t.scale) * m.at(t.col, t.col);
  for (const ComplexMatrix& a : set.dense) out += matmul(matmul(a, m), a.adjoint());
  return out;
}

}  // namespace

double check_completeness(const KrausSet& set) {
  check_set_shape(set);
  if (set.dim_in != set.dim_out)
    throw StructuralError("check_completeness: dimensions must agree");
  // Rank-one operators only touch the diagonal of sum A^dagger A.
  std::vector<double> diag(set.dim_in, 0.0);
  for (const RankOneKraus& t : set.rank_one) diag[t.col] += t.scale * t.scale;
  if (set.dense.empty()) {
    double dev = 0.0;
    for (double d : diag) dev = std::max(dev, std::abs(d - 1.0));
    return dev;
  }
  if (set.dim_in > kDenseApplyCap)
    throw CapabilityError("check_completeness: dense operators beyond dimension 2^8");
  ComplexMatrix sum(set.dim_in, set.dim_in);
  for (std::size_t i = 0; i < set.dim_in; ++i) sum.at(i, i) = diag[i];
  for (const ComplexMatrix& a : set.dense) sum += matmul(a.adjoint(), a);
  return max_abs_diff(sum, ComplexMatrix::identity(set.dim_in));
}

QuantumOperation::QuantumOperation(KrausSet set) : set_(std::move(set)) {
  check_set_shape(set_);
  if (set_.rank_one.empty() && set_.dense.empty())
    throw StructuralError("operation: empty operator list");
  const double dev = check_completeness(set_);
  if (dev > kCompletenessTol) {
    std::ostringstream msg;
    msg << "operation is not trace preserving: completeness deviation " << dev;
    throw DomainError(msg.str());
  }
}

QuantumOperation build_polynomial_operation(const DkPolynomial& p) {
  const int nk = p.n() * p.k();
  const std::size_t dim = static_cast<std::size_t>(1) << nk;
  const std::size_t half = dim / 2;  // 2^(nk-1)
  const double denom = static_cast<double>(half);

  KrausSet set;
  set.dim_in = dim;
  set.dim_out = dim;
  set.rank_one.reserve(2 * dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const double a = p.coeffs()[col];
    const double truth = std::sqrt(a / denom);
    const double falsity = std::sqrt((1.0 - a) / denom);
    for (std::size_t row = 0; row < dim; ++row) {
      const double scale = (row & 1u) ? truth : falsity;
      if (scale > 0.0)
        set.rank_one.push_back({scale, static_cast<std::uint32_t>(row),
                                static_cast<std::uint32_t>(col)});
    }
  }
  return QuantumOperation(std::move(set));
}

DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho) {
  const KrausSet& set = op.kraus();
  if (rho.dim() != set.dim_in)
    throw StructuralError("apply: state dimension differs from the operation input");
  if (set.dim_out > kDenseApplyCap)
    throw CapabilityError("apply: dense application beyond dimension 2^8 is disabled");

  ComplexMatrix out(set.dim_out, set.dim_out);
  if (!set.rank_one.empty()) {
    std::vector<cdouble> in_diag(set.dim_in);
    for (std::size_t i = 0; i < set.dim_in; ++i) in_diag[i] = rho.matrix().at(i, i);
    std::vector<kernels::RankOneTerm> terms;
    terms.reserve(set.rank_one.size());
    for (const RankOneKraus& t : set.rank_one) terms.push_back({t.scale, t.row, t.col});
    const kernels::RowBuckets buckets = kernels::bucket_by_row(terms, set.dim_out);
    std::vector<cdouble> out_diag(set.dim_out);
    kernels::apply_rank_one_diag(buckets, in_diag, out_diag);
    for (std::size_t i = 0; i < set.dim_out; ++i) out.at(i, i) = out_diag[i];
  }
  for (const ComplexMatrix& a : set.dense) out += matmul(matmul(a, rho.matrix()), a.adjoint());
  return DensityMatrix::from_matrix(std::move(out));
}

DensityMatrix apply_closed_form(const DkPolynomial& p, std::span<const double> probs) {
  if (probs.size() != static_cast<std::size_t>(p.n()))
    throw StructuralError("apply_closed_form: probability count differs from n");
  for (double x : probs)
    if (!(x >= 0.0 && x <= 1.0))
      throw DomainError("apply_closed_form: probabilities must lie in [0, 1]");
  const int nk = p.n() * p.k();
  const std::size_t dim = static_cast<std::size_t>(1) << nk;
  if (dim > kDenseApplyCap)
    throw CapabilityError("apply_closed_form: dimension beyond 2^8 is disabled");
  const double value = eval_dk(p, probs);
  const double share = 1.0 / static_cast<double>(dim / 2);
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    out.at(i, i) = ((i & 1u) ? value : (1.0 - value)) * share;
  return DensityMatrix::from_matrix(std::move(out));
}

ComplexMatrix choi_matrix(const KrausSet& set) {
  check_set_shape(set);
  if (set.dim_in > kChoiCap)
    throw CapabilityError("choi_matrix: input dimension beyond 2^4 is disabled");
  const std::size_t d_in = set.dim_in, d_out = set.dim_out;
  ComplexMatrix choi(d_in * d_out, d_in * d_out);
  ComplexMatrix basis(d_in, d_in);
  for (std::size_t i = 0; i < d_in; ++i)
    for (std::size_t j = 0; j < d_in; ++j) {
      basis.at(i, j) = 1.0;
      const ComplexMatrix block = apply_to_matrix(set, basis);
      basis.at(i, j) = 0.0;
      for (std::size_t r = 0; r < d_out; ++r)
        for (std::size_t c = 0; c < d_out; ++c)
          choi.at(i * d_out + r, j * d_out + c) = block.at(r, c);
    }
  return choi;
}

ChoiReport choi_check(const KrausSet& set) {
  ChoiReport report;
  report.min_eigenvalue = hermitian_min_eigenvalue(choi_matrix(set));
  return report;
}

}  // namespace qop
