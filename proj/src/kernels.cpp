// SPDX-License-Identifier: Apache-2.0
#include "qop/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "qop/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qop::kernels {

namespace {

// One output entry of a Kronecker product; shared by both variants so the
// arithmetic (and therefore the rounding) is identical.
inline void kron_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out,
                     std::size_t orow) {
  const std::size_t br = b.rows(), bc = b.cols();
  const std::size_t ar_i = orow / br, br_i = orow % br;
  for (std::size_t ac_j = 0; ac_j < a.cols(); ++ac_j) {
    const cdouble av = a.at(ar_i, ac_j);
    for (std::size_t bc_j = 0; bc_j < bc; ++bc_j)
      out.at(orow, ac_j * bc + bc_j) = av * b.at(br_i, bc_j);
  }
}

}  // namespace

ComplexMatrix kron_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) kron_row(a, b, out, r);
  return out;
}

ComplexMatrix kron_omp(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t nrows = static_cast<std::int64_t>(out.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t r = 0; r < nrows; ++r)
    kron_row(a, b, out, static_cast<std::size_t>(r));
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
#ifdef _OPENMP
  return kron_omp(a, b);
#else
  return kron_serial(a, b);
#endif
}

RowBuckets bucket_by_row(std::span<const RankOneTerm> terms, std::size_t dim) {
  RowBuckets buckets;
  buckets.offsets.assign(dim + 1, 0);
  for (const RankOneTerm& t : terms) {
    if (t.row >= dim) throw StructuralError("bucket_by_row: row index out of range");
    ++buckets.offsets[t.row + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) buckets.offsets[r + 1] += buckets.offsets[r];
  buckets.sorted.resize(terms.size());
  std::vector<std::size_t> cursor(buckets.offsets.begin(), buckets.offsets.end() - 1);
  for (const RankOneTerm& t : terms) buckets.sorted[cursor[t.row]++] = t;
  return buckets;
}

namespace {

inline cdouble row_sum(const RowBuckets& buckets, std::span<const cdouble> in_diag,
                       std::size_t row) {
  cdouble acc{0.0, 0.0};
  for (std::size_t i = buckets.offsets[row]; i < buckets.offsets[row + 1]; ++i) {
    const RankOneTerm& t = buckets.sorted[i];
    acc += (t.scale * t.scale) * in_diag[t.col];
  }
  return acc;
}

}  // namespace

void apply_rank_one_diag_serial(const RowBuckets& buckets,
                                std::span<const cdouble> in_diag,
                                std::span<cdouble> out_diag) {
  for (std::size_t r = 0; r < out_diag.size(); ++r) out_diag[r] = row_sum(buckets, in_diag, r);
}

void apply_rank_one_diag_omp(const RowBuckets& buckets, std::span<const cdouble> in_diag,
                             std::span<cdouble> out_diag) {
  const std::int64_t dim = static_cast<std::int64_t>(out_diag.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t r = 0; r < dim; ++r)
    out_diag[static_cast<std::size_t>(r)] =
        row_sum(buckets, in_diag, static_cast<std::size_t>(r));
}

void apply_rank_one_diag(const RowBuckets& buckets, std::span<const cdouble> in_diag,
                         std::span<cdouble> out_diag) {
#ifdef _OPENMP
  apply_rank_one_diag_omp(buckets, in_diag, out_diag);
#else
  apply_rank_one_diag_serial(buckets, in_diag, out_diag);
#endif
}

std::size_t grid_size(int n, int res) {
  if (n < 1 || res < 2) throw StructuralError("grid: need n >= 1 and res >= 2");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(res);
  return total;
}

void grid_point(std::size_t flat, int n, int res, std::span<double> out) {
  const double denom = static_cast<double>(res - 1);
  for (int a = n - 1; a >= 0; --a) {
    out[static_cast<std::size_t>(a)] =
        static_cast<double>(flat % static_cast<std::size_t>(res)) / denom;
    flat /= static_cast<std::size_t>(res);
  }
}

std::vector<double> eval_grid_serial(const GridFn& fn, int n, int res) {
  const std::size_t total = grid_size(n, res);
  std::vector<double> values(total);
  std::vector<double> pt(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < total; ++i) {
    grid_point(i, n, res, pt);
    values[i] = fn(pt);
  }
  return values;
}

std::vector<double> eval_grid_omp(const GridFn& fn, int n, int res) {
  const std::size_t total = grid_size(n, res);
  std::vector<double> values(total);
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<double> pt(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      grid_point(static_cast<std::size_t>(i), n, res, pt);
      values[static_cast<std::size_t>(i)] = fn(pt);
    }
  }
#else
  std::vector<double> pt(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < total; ++i) {
    grid_point(i, n, res, pt);
    values[i] = fn(pt);
  }
#endif
  return values;
}

std::vector<double> eval_grid(const GridFn& fn, int n, int res) {
#ifdef _OPENMP
  return eval_grid_omp(fn, n, res);
#else
  return eval_grid_serial(fn, n, res);
#endif
}

double dk_value_serial(std::span<const double> coeffs, int n, int k,
                       std::span<const double> point) {
  // Contract the least significant slot first; slot t (0 = most significant)
  // carries variable t / k. Work buffer halves each level.
  std::vector<double> buf(coeffs.begin(), coeffs.end());
  std::size_t len = buf.size();
  const int nk = n * k;
  for (int level = 0; level < nk; ++level) {
    const int slot = nk - 1 - level;
    const double x = point[static_cast<std::size_t>(slot / k)];
    const double omx = 1.0 - x;
    len /= 2;
    for (std::size_t r = 0; r < len; ++r) buf[r] = buf[2 * r] * omx + buf[2 * r + 1] * x;
  }
  return buf[0];
}

namespace {

std::vector<double> dk_grid_run(std::span<const double> coeffs, int n, int k, int res,
                                bool parallel) {
  const std::size_t total = grid_size(n, res);
  std::vector<double> values(total);
  const std::int64_t itotal = static_cast<std::int64_t>(total);
#ifdef _OPENMP
#pragma omp parallel if (parallel)
  {
    std::vector<double> pt(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < itotal; ++i) {
      grid_point(static_cast<std::size_t>(i), n, res, pt);
      values[static_cast<std::size_t>(i)] = dk_value_serial(coeffs, n, k, pt);
    }
  }
#else
  (void)parallel;
  std::vector<double> pt(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < itotal; ++i) {
    grid_point(static_cast<std::size_t>(i), n, res, pt);
    values[static_cast<std::size_t>(i)] = dk_value_serial(coeffs, n, k, pt);
  }
#endif
  return values;
}

}  // namespace

std::vector<double> dk_grid_serial(std::span<const double> coeffs, int n, int k, int res) {
  return dk_grid_run(coeffs, n, k, res, false);
}

std::vector<double> dk_grid_omp(std::span<const double> coeffs, int n, int k, int res) {
  return dk_grid_run(coeffs, n, k, res, true);
}

std::vector<double> dk_grid(std::span<const double> coeffs, int n, int k, int res) {
#ifdef _OPENMP
  return dk_grid_omp(coeffs, n, k, res);
#else
  return dk_grid_serial(coeffs, n, k, res);
#endif
}

double DiffScan::max_abs() const { return std::max(std::abs(signed_max), std::abs(signed_min)); }

namespace {

inline void scan_update(DiffScan& s, double d, std::size_t i) {
  if (d > s.signed_max || (d == s.signed_max && i < s.argmax)) {
    s.signed_max = d;
    s.argmax = i;
  }
  if (d < s.signed_min || (d == s.signed_min && i < s.argmin)) {
    s.signed_min = d;
    s.argmin = i;
  }
}

inline void scan_merge(DiffScan& into, const DiffScan& part) {
  if (part.signed_max > into.signed_max ||
      (part.signed_max == into.signed_max && part.argmax < into.argmax)) {
    into.signed_max = part.signed_max;
    into.argmax = part.argmax;
  }
  if (part.signed_min < into.signed_min ||
      (part.signed_min == into.signed_min && part.argmin < into.argmin)) {
    into.signed_min = part.signed_min;
    into.argmin = part.argmin;
  }
}

DiffScan scan_init(std::span<const double> a, std::span<const double> b) {
  DiffScan s;
  s.signed_max = s.signed_min = a[0] - b[0];
  s.argmax = s.argmin = 0;
  return s;
}

}  // namespace

DiffScan scan_diff_serial(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw StructuralError("scan_diff: buffers must be equal-length and non-empty");
  DiffScan s = scan_init(a, b);
  for (std::size_t i = 1; i < a.size(); ++i) scan_update(s, a[i] - b[i], i);
  return s;
}

DiffScan scan_diff_omp(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw StructuralError("scan_diff: buffers must be equal-length and non-empty");
#ifdef _OPENMP
  DiffScan total = scan_init(a, b);
  const std::int64_t size = static_cast<std::int64_t>(a.size());
#pragma omp parallel
  {
    DiffScan part = scan_init(a, b);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 1; i < size; ++i)
      scan_update(part, a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)],
                  static_cast<std::size_t>(i));
#pragma omp critical(qop_scan_diff_merge)
    scan_merge(total, part);
  }
  return total;
#else
  return scan_diff_serial(a, b);
#endif
}

DiffScan scan_diff(std::span<const double> a, std::span<const double> b) {
#ifdef _OPENMP
  return scan_diff_omp(a, b);
#else
  return scan_diff_serial(a, b);
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qop::kernels
