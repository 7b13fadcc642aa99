// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <random>
#include <vector>

#include "qop/dkbasis.hpp"
#include "qop/kernels.hpp"

using namespace qop;
using namespace qop::kernels;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = cdouble{dist(rng), dist(rng)};
  return m;
}

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data().data(), b.data().data(),
                     a.data().size() * sizeof(cdouble)) == 0;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("kron entries follow the block layout") {
  ComplexMatrix a(2, 2);
  a.at(0, 0) = 1.0;
  a.at(0, 1) = 2.0;
  a.at(1, 0) = 3.0;
  a.at(1, 1) = 4.0;
  ComplexMatrix b(2, 2);
  b.at(0, 1) = cdouble{0.0, 1.0};
  b.at(1, 0) = cdouble{0.0, -1.0};
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  // Block (r_a, c_a) holds a[r_a, c_a] * b.
  CHECK(k.at(0, 1) == cdouble{0.0, 1.0});
  CHECK(k.at(1, 0) == cdouble{0.0, -1.0});
  CHECK(k.at(0, 3) == cdouble{0.0, 2.0});
  CHECK(k.at(2, 1) == cdouble{0.0, 3.0});
  CHECK(k.at(3, 2) == cdouble{0.0, -4.0});
  CHECK(k.at(0, 0) == cdouble{0.0, 0.0});
}

TEST_CASE("kron serial and parallel agree bitwise") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    const ComplexMatrix a = random_matrix(5, 3, rng);
    const ComplexMatrix b = random_matrix(4, 6, rng);
    CHECK(bitwise_equal(kron_serial(a, b), kron_omp(a, b)));
  }
}

TEST_CASE("bucket_by_row groups by row, stable within a row") {
  std::vector<RankOneTerm> terms = {
      {0.5, 2, 1}, {0.25, 0, 3}, {0.75, 2, 0}, {1.0, 1, 1}};
  const RowBuckets buckets = bucket_by_row(terms, 4);
  REQUIRE(buckets.offsets.size() == 5);
  CHECK(buckets.offsets[0] == 0);
  CHECK(buckets.offsets[1] == 1);  // one term in row 0
  CHECK(buckets.offsets[2] == 2);  // one in row 1
  CHECK(buckets.offsets[3] == 4);  // two in row 2, original order kept
  CHECK(buckets.offsets[4] == 4);  // row 3 empty
  CHECK(buckets.sorted[0].col == 3);
  CHECK(buckets.sorted[1].col == 1);
  CHECK(buckets.sorted[2].scale == 0.5);   // first row-2 term first
  CHECK(buckets.sorted[3].scale == 0.75);
}

TEST_CASE("apply_rank_one_diag sums scale^2 contributions, duplicates included") {
  std::vector<RankOneTerm> terms = {
      {0.5, 0, 1}, {0.5, 0, 1}, {1.0, 1, 0}, {2.0, 1, 1}};
  const RowBuckets buckets = bucket_by_row(terms, 2);
  const std::vector<cdouble> in = {cdouble{3.0, 0.0}, cdouble{5.0, 0.0}};
  std::vector<cdouble> out(2);
  apply_rank_one_diag(buckets, in, out);
  // out[0] = 0.25*5 + 0.25*5 = 2.5; out[1] = 1*3 + 4*5 = 23.
  CHECK(out[0] == cdouble{2.5, 0.0});
  CHECK(out[1] == cdouble{23.0, 0.0});
}

TEST_CASE("apply_rank_one_diag serial and parallel agree bitwise") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const std::size_t dim = 1u << 8;
  std::vector<RankOneTerm> terms;
  std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(dim - 1));
  for (int i = 0; i < 2000; ++i) terms.push_back({dist(rng), idx(rng), idx(rng)});
  const RowBuckets buckets = bucket_by_row(terms, dim);
  std::vector<cdouble> in(dim);
  for (auto& v : in) v = cdouble{dist(rng), 0.0};
  std::vector<cdouble> a(dim), b(dim);
  apply_rank_one_diag_serial(buckets, in, a);
  apply_rank_one_diag_omp(buckets, in, b);
  CHECK(std::memcmp(a.data(), b.data(), dim * sizeof(cdouble)) == 0);
}

TEST_CASE("grid layout: first variable slowest") {
  CHECK(grid_size(2, 101) == 10201);
  CHECK(grid_size(1, 5) == 5);
  const GridFn fn = [](std::span<const double> p) { return 10.0 * p[0] + p[1]; };
  const std::vector<double> values = eval_grid(fn, 2, 3);
  REQUIRE(values.size() == 9);
  CHECK(values[0] == 0.0);    // (0, 0)
  CHECK(values[1] == 0.5);    // (0, 0.5)
  CHECK(values[2] == 1.0);    // (0, 1)
  CHECK(values[3] == 5.0);    // (0.5, 0)
  CHECK(values[8] == 11.0);   // (1, 1)
  double pt[2];
  grid_point(5, 2, 3, pt);
  CHECK(pt[0] == 0.5);
  CHECK(pt[1] == 1.0);
}

TEST_CASE("eval_grid serial and parallel agree bitwise") {
  const GridFn fn = [](std::span<const double> p) {
    return p[0] * p[0] + 0.37 * p[1] - p[0] * p[1] * 0.11;
  };
  CHECK(bitwise_equal(eval_grid_serial(fn, 2, 57), eval_grid_omp(fn, 2, 57)));
}

TEST_CASE("dk_value_serial matches the naive element sum") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const int n = 2, k = 2;
  const std::size_t count = 1u << (n * k);
  std::vector<double> coeffs(count);
  for (auto& c : coeffs) c = dist(rng);
  for (int trial = 0; trial < 20; ++trial) {
    const double point[2] = {dist(rng), dist(rng)};
    double naive = 0.0;
    for (std::size_t y = 0; y < count; ++y)
      naive += coeffs[y] * dk_eval_element(DkIndex(n, k, y), point);
    CHECK(dk_value_serial(coeffs, n, k, point) == doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("dk_grid serial and parallel agree bitwise") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const int n = 2, k = 3;
  std::vector<double> coeffs(1u << (n * k));
  for (auto& c : coeffs) c = dist(rng);
  CHECK(bitwise_equal(dk_grid_serial(coeffs, n, k, 41), dk_grid_omp(coeffs, n, k, 41)));
}

TEST_CASE("scan_diff extrema and smallest-index tie-breaks") {
  const std::vector<double> a = {1.0, 5.0, 2.0, 5.0, -3.0};
  const std::vector<double> b = {1.0, 2.0, 2.0, 2.0, 0.0};
  const DiffScan scan = scan_diff(a, b);
  CHECK(scan.signed_max == 3.0);
  CHECK(scan.argmax == 1);  // index 3 also hits 3.0; smallest index wins
  CHECK(scan.signed_min == -3.0);
  CHECK(scan.argmin == 4);
  CHECK(scan.max_abs() == 3.0);
}

TEST_CASE("scan_diff serial and parallel agree exactly") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> a(1u << 12), b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = dist(rng);
    b[i] = dist(rng);
  }
  const DiffScan s = scan_diff_serial(a, b);
  const DiffScan p = scan_diff_omp(a, b);
  CHECK(s.signed_max == p.signed_max);
  CHECK(s.signed_min == p.signed_min);
  CHECK(s.argmax == p.argmax);
  CHECK(s.argmin == p.argmin);
}

TEST_CASE("max_threads reports at least one") { CHECK(max_threads() >= 1); }
