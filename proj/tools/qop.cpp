// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: synthesize operations from builtin or sampled
// functions, apply operations to tensor-power states, verify channel
// axioms, export the fixed gates, and emit CSV grids.
//
// Exit codes: 0 ok, 1 usage/malformed input, 2 capability limit,
// 3 verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qop/densmat.hpp"
#include "qop/dkbasis.hpp"
#include "qop/errors.hpp"
#include "qop/gatelib.hpp"
#include "qop/json_io.hpp"
#include "qop/kernels.hpp"
#include "qop/krausfab.hpp"
#include "qop/swapprox.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapability = 2;
constexpr int kExitVerification = 3;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void list_builtins(std::ostream& os) {
  os << "available functions:";
  for (const qop::TargetFunction& f : qop::builtin_functions()) os << ' ' << f.name;
  os << '\n';
}

int run_synth(const std::string& fn_name, const std::string& samples_path, double eps,
              const std::string& mode_text, int k_max, int res, const std::string& out_path,
              const std::string& report_path, const std::string& poly_path) {
  std::optional<qop::TargetFunction> target;
  if (!fn_name.empty()) {
    target = qop::find_builtin(fn_name);
    if (!target) {
      std::cerr << "unknown function: " << fn_name << '\n';
      list_builtins(std::cerr);
      return kExitUsage;
    }
  } else {
    const qop::ordered_json j = qop::load_json_file(samples_path);
    target = qop::sampled_function_from_json(j, "samples:" + samples_path);
  }

  const std::optional<qop::SynthesisMode> mode = qop::parse_mode(mode_text);
  if (!mode) {
    std::cerr << "unknown mode: " << mode_text << " (expected paper or direct)\n";
    return kExitUsage;
  }

  qop::SynthesisOptions options;
  options.epsilon = eps;
  options.mode = *mode;
  options.k_max = k_max;
  options.grid_resolution = res;

  const qop::SynthesisResult result = qop::synthesize(*target, options);
  const qop::ordered_json report = qop::report_to_json(result.report);
  std::cout << report.dump(2) << '\n';
  if (!out_path.empty()) qop::save_json_file(out_path, qop::kraus_to_json(result.op.kraus()));
  if (!report_path.empty()) qop::save_json_file(report_path, report);
  if (!poly_path.empty()) qop::save_json_file(poly_path, qop::poly_to_json(result.poly));
  return kExitOk;
}

int run_apply(const std::string& op_path, const std::string& state_path, int copies,
              const std::string& out_path) {
  const qop::KrausSet set = qop::kraus_from_json(qop::load_json_file(op_path));
  const qop::QuantumOperation op(set);

  const std::vector<qop::ComplexMatrix> mats =
      qop::states_from_json(qop::load_json_file(state_path));
  std::vector<qop::DensityMatrix> factors;
  for (const qop::ComplexMatrix& m : mats) {
    qop::DensityMatrix sigma = qop::DensityMatrix::from_matrix(m);
    if (sigma.dim() != 2) throw qop::StructuralError("apply: state file must hold single-qubit densities");
    for (int c = 0; c < copies; ++c) factors.push_back(sigma);
  }
  const qop::DensityMatrix rho = qop::tensor(factors);
  if (rho.dim() != op.dim_in())
    throw qop::StructuralError("apply: assembled state dimension differs from the operation input");

  const qop::DensityMatrix out = qop::apply(op, rho);
  std::printf("%.15g\n", qop::probability(out));
  if (!out_path.empty()) qop::save_json_file(out_path, qop::matrix_to_json(out.matrix()));
  return kExitOk;
}

// Sum_A A^dagger A materialized for the trace-preservation trials. Dense
// operators cap the dimension; rank-one-only sets yield a diagonal sum at
// any dimension.
struct CompletenessSum {
  bool diagonal_only = true;
  std::vector<double> diag;
  qop::ComplexMatrix full;
};

CompletenessSum completeness_sum(const qop::KrausSet& set) {
  CompletenessSum s;
  s.diagonal_only = set.dense.empty();
  if (s.diagonal_only) {
    s.diag.assign(set.dim_in, 0.0);
    for (const qop::RankOneKraus& a : set.rank_one) s.diag[a.col] += a.scale * a.scale;
    return s;
  }
  if (set.dim_in > 256)
    throw qop::CapabilityError("verify: dense operators above dimension 256 are unsupported");
  s.full = qop::ComplexMatrix(set.dim_in, set.dim_in);
  for (const qop::RankOneKraus& a : set.rank_one)
    s.full.at(a.col, a.col) += a.scale * a.scale;
  for (const qop::ComplexMatrix& a : set.dense) {
    const qop::ComplexMatrix ata = qop::matmul(a.adjoint(), a);
    s.full += ata;
  }
  return s;
}

int run_verify(const std::string& op_path, bool with_choi, int trials, std::uint64_t seed) {
  const qop::KrausSet set = qop::kraus_from_json(qop::load_json_file(op_path));
  const double completeness_dev = qop::check_completeness(set);
  std::printf("completeness_deviation %.17g\n", completeness_dev);

  const CompletenessSum sum = completeness_sum(set);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double trace_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    double trace = 0.0;
    if (sum.diagonal_only) {
      // Random diagonal density: exponential weights normalized to 1.
      std::vector<double> d(set.dim_in);
      double total = 0.0;
      for (double& v : d) {
        const double g = normal(rng);
        v = g * g;
        total += v;
      }
      for (std::size_t c = 0; c < set.dim_in; ++c) trace += sum.diag[c] * d[c] / total;
    } else {
      // Dense random density via a Gaussian matrix G: rho = G G^dagger / tr.
      const std::size_t dim = set.dim_in;
      qop::ComplexMatrix g(dim, dim);
      for (auto& v : g.data()) v = qop::cdouble(normal(rng), normal(rng));
      qop::ComplexMatrix rho = qop::matmul(g, g.adjoint());
      double tr = 0.0;
      for (std::size_t i = 0; i < dim; ++i) tr += rho.at(i, i).real();
      rho *= 1.0 / tr;
      qop::cdouble acc = 0.0;
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) acc += sum.full.at(r, c) * rho.at(c, r);
      trace = acc.real();
    }
    trace_dev = std::max(trace_dev, std::abs(trace - 1.0));
  }
  std::printf("trace_deviation %.17g\n", trace_dev);

  bool choi_ok = true;
  if (with_choi) {
    const qop::ChoiReport choi = qop::choi_check(set);
    std::printf("choi_min_eigenvalue %.17g\n", choi.min_eigenvalue);
    choi_ok = choi.completely_positive();
  }

  const bool ok = completeness_dev <= 1e-12 && trace_dev <= 1e-12 && choi_ok;
  std::printf("verdict %s\n", ok ? "ok" : "FAIL");
  return ok ? kExitOk : kExitVerification;
}

int run_sweep(const std::string& what, int res, const std::string& out_path) {
  const auto truncated_sum = [](std::span<const double> x) {
    return std::min(1.0, x[0] + x[1]);
  };
  const auto quadratic = [](std::span<const double> x) {
    return qop::luka_value(x[0], x[1]);
  };

  std::vector<double> values;
  if (what == "luka") {
    values = qop::kernels::eval_grid(truncated_sum, 2, res);
  } else if (what == "luka_poly") {
    values = qop::kernels::eval_grid(quadratic, 2, res);
  } else {
    const std::vector<double> a = qop::kernels::eval_grid(truncated_sum, 2, res);
    const std::vector<double> b = qop::kernels::eval_grid(quadratic, 2, res);
    values.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) values[i] = a[i] - b[i];
    const qop::kernels::DiffScan scan = qop::kernels::scan_diff(a, b);
    std::vector<double> at(2);
    qop::kernels::grid_point(scan.argmax, 2, res, at);
    std::printf("max %.17g at x=%.17g y=%.17g\n", scan.signed_max, at[0], at[1]);
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qop::StructuralError("cannot open file for writing: " + out_path);
  out << "x,y,value\n";
  std::vector<double> point(2);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    qop::kernels::grid_point(flat, 2, res, point);
    out << format_g17(point[0]) << ',' << format_g17(point[1]) << ','
        << format_g17(values[flat]) << '\n';
  }
  if (!out) throw qop::StructuralError("write failed: " + out_path);
  return kExitOk;
}

int run_gates(const std::string& name, const std::string& out_path) {
  std::optional<qop::QuantumOperation> op;
  if (name == "not") {
    op = qop::not_op();
  } else if (name == "iand") {
    op = qop::iand_op();
  } else {
    try {
      op = qop::luka_approx_op();
    } catch (const qop::CoefficientRangeError& e) {
      std::cerr << "the truncated-sum approximant is not exportable: " << e.what()
                << "\n(the quadratic exceeds 1 on the cube, so no operation realizes it)\n";
      return kExitCapability;
    }
  }
  const qop::ordered_json j = qop::kraus_to_json(op->kraus());
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    qop::save_json_file(out_path, j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-operation synthesis toolkit"};
  app.require_subcommand(1);

  // synth
  std::string fn_name;
  std::string samples_path;
  double eps = 0.1;
  std::string mode_text = "paper";
  int k_max = 8;
  int res = 0;
  std::string out_path;
  std::string report_path;
  std::string poly_path;
  CLI::App* synth = app.add_subcommand("synth", "synthesize an operation for a target function");
  CLI::Option* fn_opt = synth->add_option("--fn", fn_name, "builtin function name");
  CLI::Option* samples_opt =
      synth->add_option("--samples", samples_path, "JSON lattice samples file");
  fn_opt->excludes(samples_opt);
  synth->add_option("--eps", eps, "target sup-norm error");
  synth->add_option("--mode", mode_text, "paper | direct");
  synth->add_option("--kmax", k_max, "degree cap");
  synth->add_option("--res", res, "verification grid resolution per axis");
  synth->add_option("--out", out_path, "output operation JSON");
  synth->add_option("--report", report_path, "output report JSON");
  synth->add_option("--poly", poly_path, "output coefficient-vector JSON");

  // apply
  std::string apply_op_path;
  std::string state_path;
  int copies = 1;
  std::string apply_out;
  CLI::App* apply_cmd = app.add_subcommand("apply", "apply an operation to tensor-power states");
  apply_cmd->add_option("--op", apply_op_path, "operation JSON")->required();
  apply_cmd->add_option("--state", state_path, "single-qubit states JSON")->required();
  apply_cmd->add_option("--copies", copies, "tensor copies per state");
  apply_cmd->add_option("--out", apply_out, "output density JSON");

  // verify
  std::string verify_op_path;
  bool with_choi = false;
  int trials = 20;
  std::uint64_t seed = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check channel axioms of an operation file");
  verify_cmd->add_option("--op", verify_op_path, "operation JSON")->required();
  verify_cmd->add_flag("--choi", with_choi, "also compute the Choi minimum eigenvalue");
  verify_cmd->add_option("--trials", trials, "random trace-preservation trials");
  verify_cmd->add_option("--seed", seed, "random seed");

  // sweep
  std::string what;
  int sweep_res = 101;
  std::string sweep_out;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "emit CSV grids of the truncated sum family");
  sweep_cmd->add_option("--what", what, "luka | luka_poly | diff")
      ->required()
      ->check(CLI::IsMember({"luka", "luka_poly", "diff"}));
  sweep_cmd->add_option("--res", sweep_res, "lattice points per axis (>= 2)");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

  // gates
  std::string gate_name;
  std::string gate_out;
  CLI::App* gates_cmd = app.add_subcommand("gates", "export a fixed gate as operation JSON");
  gates_cmd->add_option("--name", gate_name, "not | iand | luka")
      ->required()
      ->check(CLI::IsMember({"not", "iand", "luka"}));
  gates_cmd->add_option("--out", gate_out, "output operation JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth->parsed()) {
      if (fn_name.empty() == samples_path.empty()) {
        std::cerr << "synth: exactly one of --fn or --samples is required\n";
        return kExitUsage;
      }
      return run_synth(fn_name, samples_path, eps, mode_text, k_max, res, out_path, report_path,
                       poly_path);
    }
    if (apply_cmd->parsed()) {
      if (copies < 1) {
        std::cerr << "apply: --copies must be >= 1\n";
        return kExitUsage;
      }
      return run_apply(apply_op_path, state_path, copies, apply_out);
    }
    if (verify_cmd->parsed()) {
      if (trials < 1) {
        std::cerr << "verify: --trials must be >= 1\n";
        return kExitUsage;
      }
      return run_verify(verify_op_path, with_choi, trials, seed);
    }
    if (sweep_cmd->parsed()) {
      if (sweep_res < 2) {
        std::cerr << "sweep: --res must be >= 2\n";
        return kExitUsage;
      }
      return run_sweep(what, sweep_res, sweep_out);
    }
    if (gates_cmd->parsed()) return run_gates(gate_name, gate_out);
  } catch (const qop::SynthesisLimitError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kExitCapability;
  } catch (const qop::CapabilityError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kExitCapability;
  } catch (const qop::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qop::StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
