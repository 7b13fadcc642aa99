// SPDX-License-Identifier: Apache-2.0
#include "qop/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <sstream>

#include "qop/errors.hpp"

namespace qop {

namespace {

[[noreturn]] void bad(const std::string& what) { throw StructuralError(what); }

double get_number(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) bad(std::string("missing numeric field \"") + key + '"');
  return j[key].get<double>();
}

std::int64_t get_integer(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    bad(std::string("missing integer field \"") + key + '"');
  return j[key].get<std::int64_t>();
}

}  // namespace

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json entries = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const cdouble v = m.at(r, c);
      entries.push_back(ordered_json::array({v.real(), v.imag()}));
    }
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const ordered_json& j) {
  const std::int64_t rows = get_integer(j, "rows");
  const std::int64_t cols = get_integer(j, "cols");
  if (rows < 1 || cols < 1) bad("matrix: rows/cols must be positive");
  if (!j.contains("entries") || !j["entries"].is_array()) bad("matrix: missing \"entries\" array");
  const auto& entries = j["entries"];
  const std::size_t expected = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (entries.size() != expected) bad("matrix: entry count differs from rows*cols");
  ComplexMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::size_t i = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      bad("matrix: each entry must be a [re, im] pair");
    m.data()[i++] = cdouble(e[0].get<double>(), e[1].get<double>());
  }
  if (!m.all_finite()) bad("matrix: entries must be finite");
  return m;
}

ordered_json states_to_json(std::span<const ComplexMatrix> states) {
  ordered_json j;
  ordered_json list = ordered_json::array();
  for (const ComplexMatrix& m : states) list.push_back(matrix_to_json(m));
  j["states"] = std::move(list);
  return j;
}

std::vector<ComplexMatrix> states_from_json(const ordered_json& j) {
  if (!j.contains("states") || !j["states"].is_array()) bad("states: missing \"states\" array");
  std::vector<ComplexMatrix> out;
  for (const auto& e : j["states"]) out.push_back(matrix_from_json(e));
  if (out.empty()) bad("states: list must not be empty");
  return out;
}

ordered_json poly_to_json(const DkPolynomial& p) {
  ordered_json j;
  j["n"] = p.n();
  j["k"] = p.k();
  j["coeffs"] = p.coeffs();
  return j;
}

DkPolynomial poly_from_json(const ordered_json& j) {
  const std::int64_t n = get_integer(j, "n");
  const std::int64_t k = get_integer(j, "k");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) bad("poly: missing \"coeffs\" array");
  std::vector<double> coeffs;
  coeffs.reserve(j["coeffs"].size());
  for (const auto& e : j["coeffs"]) {
    if (!e.is_number()) bad("poly: coefficients must be numbers");
    coeffs.push_back(e.get<double>());
  }
  return DkPolynomial(static_cast<int>(n), static_cast<int>(k), std::move(coeffs));
}

ordered_json kraus_to_json(const KrausSet& set) {
  ordered_json j;
  j["dim_in"] = set.dim_in;
  j["dim_out"] = set.dim_out;
  ordered_json rank_one = ordered_json::array();
  for (const RankOneKraus& a : set.rank_one) {
    ordered_json op;
    op["scale"] = a.scale;
    op["row"] = a.row;
    op["col"] = a.col;
    rank_one.push_back(std::move(op));
  }
  j["rank_one"] = std::move(rank_one);
  ordered_json dense = ordered_json::array();
  for (const ComplexMatrix& m : set.dense) dense.push_back(matrix_to_json(m));
  j["dense"] = std::move(dense);
  return j;
}

KrausSet kraus_from_json(const ordered_json& j) {
  KrausSet set;
  const std::int64_t dim_in = get_integer(j, "dim_in");
  const std::int64_t dim_out = get_integer(j, "dim_out");
  if (dim_in < 1 || dim_out < 1) bad("kraus: dimensions must be positive");
  set.dim_in = static_cast<std::size_t>(dim_in);
  set.dim_out = static_cast<std::size_t>(dim_out);
  if (j.contains("rank_one")) {
    if (!j["rank_one"].is_array()) bad("kraus: \"rank_one\" must be an array");
    for (const auto& e : j["rank_one"]) {
      RankOneKraus a;
      a.scale = get_number(e, "scale");
      const std::int64_t row = get_integer(e, "row");
      const std::int64_t col = get_integer(e, "col");
      if (row < 0 || col < 0 || row >= dim_out || col >= dim_in)
        bad("kraus: rank-one row/col out of range");
      if (!(a.scale > 0.0) || !std::isfinite(a.scale))
        bad("kraus: rank-one scale must be positive and finite");
      a.row = static_cast<std::uint32_t>(row);
      a.col = static_cast<std::uint32_t>(col);
      set.rank_one.push_back(a);
    }
  }
  if (j.contains("dense")) {
    if (!j["dense"].is_array()) bad("kraus: \"dense\" must be an array");
    for (const auto& e : j["dense"]) {
      ComplexMatrix m = matrix_from_json(e);
      if (m.rows() != set.dim_out || m.cols() != set.dim_in)
        bad("kraus: dense operator shape differs from dim_out x dim_in");
      set.dense.push_back(std::move(m));
    }
  }
  return set;
}

ordered_json report_to_json(const ApproxReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["mode"] = r.mode;
  j["k"] = r.k;
  j["M"] = r.M;
  j["epsilon"] = r.epsilon;
  j["sup_error"] = r.sup_error;
  j["kraus_count"] = r.kraus_count;
  j["grid"] = r.grid;
  return j;
}

TargetFunction sampled_function_from_json(const ordered_json& j, const std::string& name) {
  const std::int64_t n64 = get_integer(j, "n");
  const std::int64_t grid64 = get_integer(j, "k_grid");
  if (n64 < 1 || n64 > 4) bad("samples: n must be in [1, 4]");
  if (grid64 < 2 || grid64 > 4096) bad("samples: k_grid must be in [2, 4096]");
  const int n = static_cast<int>(n64);
  const int grid = static_cast<int>(grid64);
  if (!j.contains("values") || !j["values"].is_array()) bad("samples: missing \"values\" array");

  std::size_t expected = 1;
  for (int i = 0; i < n; ++i) expected *= static_cast<std::size_t>(grid);
  const auto& raw = j["values"];
  if (raw.size() != expected) bad("samples: value count differs from k_grid^n");

  auto values = std::make_shared<std::vector<double>>();
  values->reserve(expected);
  double lo = 0.0;
  double hi = 1.0;
  bool first = true;
  for (const auto& e : raw) {
    if (!e.is_number()) bad("samples: values must be numbers");
    const double v = e.get<double>();
    if (!std::isfinite(v)) bad("samples: values must be finite");
    if (first) {
      lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    values->push_back(v);
  }

  TargetFunction f;
  f.name = name;
  f.n = n;
  f.range_lo = lo;
  f.range_hi = hi;
  // Multilinear interpolation on the lattice, first variable slowest.
  f.fn = [values, n, grid](std::span<const double> x) {
    std::vector<std::size_t> base(static_cast<std::size_t>(n));
    std::vector<double> frac(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double clamped = std::clamp(x[static_cast<std::size_t>(i)], 0.0, 1.0);
      const double t = clamped * static_cast<double>(grid - 1);
      double cell = std::floor(t);
      if (cell > static_cast<double>(grid - 2)) cell = static_cast<double>(grid - 2);
      base[static_cast<std::size_t>(i)] = static_cast<std::size_t>(cell);
      frac[static_cast<std::size_t>(i)] = t - cell;
    }
    double total = 0.0;
    for (std::size_t corner = 0; corner < (static_cast<std::size_t>(1) << n); ++corner) {
      double w = 1.0;
      std::size_t flat = 0;
      for (int i = 0; i < n; ++i) {
        const std::size_t bit = (corner >> (n - 1 - i)) & 1u;
        w *= bit ? frac[static_cast<std::size_t>(i)] : 1.0 - frac[static_cast<std::size_t>(i)];
        flat = flat * static_cast<std::size_t>(grid) + base[static_cast<std::size_t>(i)] + bit;
      }
      total += w * (*values)[flat];
    }
    return total;
  };
  return f;
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    bad("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) bad("write failed: " + path);
}

}  // namespace qop
