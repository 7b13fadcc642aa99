// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hot loops, each in a serial reference version and an OpenMP version.
// The parallel versions are written so that their floating-point results are
// bit-identical to the serial references for any thread count: every output
// element is owned by exactly one iteration, and reductions only take
// max/min (exact under reordering). Dispatch wrappers pick OpenMP when the
// build enables it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qop/complex_matrix.hpp"

namespace qop::kernels {

// ---------------------------------------------------------------------------
// Kronecker product
// ---------------------------------------------------------------------------
ComplexMatrix kron_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_omp(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Rank-one Kraus application on the diagonal
//
// Each operator is scale * E[row, col]; applying the set to a state adds
// scale^2 * in[col] into out[row]. Operators are pre-bucketed by output row
// so rows can be processed independently with a fixed per-row summation
// order (stable counting sort by row, original order within a row).
// ---------------------------------------------------------------------------
struct RankOneTerm {
  double scale = 0.0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
};

struct RowBuckets {
  std::vector<RankOneTerm> sorted;    // terms grouped by row
  std::vector<std::size_t> offsets;   // dim + 1 offsets into `sorted`
};

RowBuckets bucket_by_row(std::span<const RankOneTerm> terms, std::size_t dim);

void apply_rank_one_diag_serial(const RowBuckets& buckets,
                                std::span<const cdouble> in_diag,
                                std::span<cdouble> out_diag);
void apply_rank_one_diag_omp(const RowBuckets& buckets,
                             std::span<const cdouble> in_diag,
                             std::span<cdouble> out_diag);
void apply_rank_one_diag(const RowBuckets& buckets, std::span<const cdouble> in_diag,
                         std::span<cdouble> out_diag);

// ---------------------------------------------------------------------------
// Uniform lattice evaluation
//
// The lattice over [0,1]^n has `res` points per axis (res >= 2); flat index
// runs with the FIRST variable slowest. eval_grid fills values[flat] =
// fn(point); the evaluator must be pure (it is called concurrently).
// ---------------------------------------------------------------------------
using GridFn = std::function<double(std::span<const double>)>;

std::size_t grid_size(int n, int res);
void grid_point(std::size_t flat, int n, int res, std::span<double> out);

std::vector<double> eval_grid_serial(const GridFn& fn, int n, int res);
std::vector<double> eval_grid_omp(const GridFn& fn, int n, int res);
std::vector<double> eval_grid(const GridFn& fn, int n, int res);

// ---------------------------------------------------------------------------
// Generator-basis polynomial on a lattice
//
// coeffs has 2^(n*k) entries indexed by diagonal position; the value at a
// point is computed by contracting one binary slot at a time (O(2^(n*k))
// per point). Grid points are independent, hence trivially parallel.
// ---------------------------------------------------------------------------
double dk_value_serial(std::span<const double> coeffs, int n, int k,
                       std::span<const double> point);
std::vector<double> dk_grid_serial(std::span<const double> coeffs, int n, int k, int res);
std::vector<double> dk_grid_omp(std::span<const double> coeffs, int n, int k, int res);
std::vector<double> dk_grid(std::span<const double> coeffs, int n, int k, int res);

// ---------------------------------------------------------------------------
// Signed difference scan over two equal-length buffers
//
// Ties on the extremum resolve to the smallest flat index, so the result is
// independent of the thread count.
// ---------------------------------------------------------------------------
struct DiffScan {
  double signed_max = 0.0;  // max of a[i] - b[i]
  double signed_min = 0.0;  // min of a[i] - b[i]
  std::size_t argmax = 0;
  std::size_t argmin = 0;
  double max_abs() const;
};

DiffScan scan_diff_serial(std::span<const double> a, std::span<const double> b);
DiffScan scan_diff_omp(std::span<const double> a, std::span<const double> b);
DiffScan scan_diff(std::span<const double> a, std::span<const double> b);

// Number of OpenMP threads the dispatch wrappers will use (1 when built
// without OpenMP).
int max_threads();

}  // namespace qop::kernels
