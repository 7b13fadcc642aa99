// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON codecs for the on-disk formats, plus a sampled-function loader.
// Formats:
//   matrix   {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
//   states   {"states": [matrix, ...]}                (single-qubit densities)
//   poly     {"n": n, "k": k, "coeffs": [a_0, ...]}   (first block owns the
//            most significant bits of the index; within a block the first
//            slot is most significant)
//   kraus    {"dim_in": d, "dim_out": d, "rank_one": [{"scale","row","col"}],
//             "dense": [matrix, ...]}
//   report   {"name","mode","k","M","epsilon","sup_error","kraus_count","grid"}
//   samples  {"n": n, "k_grid": g, "values": [...]}   (g points per axis,
//            first variable slowest; multilinear interpolation in between)

#include <string>
#include <vector>

#include "json.hpp"

#include "qop/complex_matrix.hpp"
#include "qop/dkbasis.hpp"
#include "qop/krausfab.hpp"
#include "qop/swapprox.hpp"

namespace qop {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const ordered_json& j);

ordered_json states_to_json(std::span<const ComplexMatrix> states);
std::vector<ComplexMatrix> states_from_json(const ordered_json& j);

ordered_json poly_to_json(const DkPolynomial& p);
DkPolynomial poly_from_json(const ordered_json& j);

ordered_json kraus_to_json(const KrausSet& set);
KrausSet kraus_from_json(const ordered_json& j);

ordered_json report_to_json(const ApproxReport& r);

// Builds a target function from lattice samples via multilinear
// interpolation; the declared range is the min/max of the sample values.
TargetFunction sampled_function_from_json(const ordered_json& j, const std::string& name);

// File helpers; read failures and parse errors surface as StructuralError.
ordered_json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const ordered_json& j);

}  // namespace qop
