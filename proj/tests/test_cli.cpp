// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line binary: every invocation spawns the
// real executable (path injected by the build) and inspects exit status,
// stdout, and produced files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
  std::string err;
};

const std::string& scratch_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/qop_cli_XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
}

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string out_path = scratch_dir() + "/stdout." + std::to_string(counter);
  const std::string err_path = scratch_dir() + "/stderr." + std::to_string(counter);
  ++counter;
  const std::string cmd = env_prefix + std::string(QOP_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  CmdResult r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string path_in_scratch(const std::string& name) { return scratch_dir() + "/" + name; }

// diag(1 - lambda, lambda) state-list JSON with one entry per lambda.
std::string states_json(std::initializer_list<double> lambdas) {
  ordered_json states = ordered_json::array();
  for (const double lam : lambdas) {
    ordered_json m;
    m["rows"] = 2;
    m["cols"] = 2;
    m["entries"] = ordered_json::array({ordered_json::array({1.0 - lam, 0.0}),
                                        ordered_json::array({0.0, 0.0}),
                                        ordered_json::array({0.0, 0.0}),
                                        ordered_json::array({lam, 0.0})});
    states.push_back(std::move(m));
  }
  ordered_json j;
  j["states"] = std::move(states);
  return j.dump(2) + "\n";
}

}  // namespace

TEST_CASE("synth: product function in direct mode is exact at degree one") {
  const std::string op = path_in_scratch("product_op.json");
  const std::string rep = path_in_scratch("product_rep.json");
  const std::string poly = path_in_scratch("product_poly.json");
  const CmdResult r = run_cli("synth --fn product --mode direct --eps 0.01 --out " + op +
                              " --report " + rep + " --poly " + poly);
  REQUIRE(r.status == 0);

  const ordered_json report = ordered_json::parse(slurp(rep));
  CHECK(report.at("name") == "product");
  CHECK(report.at("mode") == "direct");
  CHECK(report.at("k") == 1);
  CHECK(report.at("M") == 1.0);
  CHECK(report.at("sup_error").get<double>() <= 1e-12);
  CHECK(report.at("kraus_count") == 8);
  CHECK(report.at("grid") == 101);

  // stdout carries the same report.
  const ordered_json echoed = ordered_json::parse(r.out);
  CHECK(echoed == report);

  const ordered_json poly_j = ordered_json::parse(slurp(poly));
  CHECK(poly_j.at("n") == 2);
  CHECK(poly_j.at("k") == 1);
  CHECK(poly_j.at("coeffs") == ordered_json::array({0.0, 0.0, 0.0, 1.0}));
}

TEST_CASE("synth: byte-identical outputs on repeated runs") {
  const std::string op1 = path_in_scratch("det_op1.json");
  const std::string op2 = path_in_scratch("det_op2.json");
  REQUIRE(run_cli("synth --fn luka_sum_shrunk --eps 0.05 --out " + op1).status == 0);
  REQUIRE(run_cli("synth --fn luka_sum_shrunk --eps 0.05 --out " + op2).status == 0);
  const std::string a = slurp(op1);
  CHECK(!a.empty());
  CHECK(a == slurp(op2));
}

TEST_CASE("synth: rescaled truncated sum certifies at degree one") {
  const CmdResult r = run_cli("synth --fn luka_sum_shrunk --mode paper --eps 0.05");
  REQUIRE(r.status == 0);
  const ordered_json report = ordered_json::parse(r.out);
  CHECK(report.at("k") == 1);
  CHECK(report.at("M").get<double>() == doctest::Approx(39.2).epsilon(1e-12));
  CHECK(report.at("sup_error").get<double>() <= 0.05);
  CHECK(report.at("kraus_count") == 16);
}

TEST_CASE("synth: direct mode cannot reach 0.05 for the truncated sum") {
  const CmdResult r = run_cli("synth --fn luka_sum_shrunk --mode direct --eps 0.05");
  CHECK(r.status == 2);
  CHECK(r.err.find("capability") != std::string::npos);
}

TEST_CASE("synth: looser direct tolerance lands at degree four") {
  const CmdResult r = run_cli("synth --fn luka_sum --mode direct --eps 0.15");
  REQUIRE(r.status == 0);
  const ordered_json report = ordered_json::parse(r.out);
  CHECK(report.at("k") == 4);
  CHECK(report.at("sup_error").get<double>() <= 0.15);
}

TEST_CASE("synth: unknown function lists the registry") {
  const CmdResult r = run_cli("synth --fn nosuch");
  CHECK(r.status == 1);
  CHECK(r.err.find("available functions:") != std::string::npos);
  CHECK(r.err.find("luka_sum") != std::string::npos);
}

TEST_CASE("synth: exactly one of --fn / --samples") {
  CHECK(run_cli("synth").status == 1);
  const std::string samples = path_in_scratch("ramp.json");
  spit(samples, R"({"n": 1, "k_grid": 2, "values": [0.0, 1.0]})");
  CHECK(run_cli("synth --fn product --samples " + samples).status == 1);
}

TEST_CASE("synth: sampled ramp synthesizes like the identity") {
  const std::string samples = path_in_scratch("ramp2.json");
  spit(samples, R"({"n": 1, "k_grid": 2, "values": [0.0, 1.0]})");
  const CmdResult r = run_cli("synth --samples " + samples + " --mode direct --eps 0.01");
  REQUIRE(r.status == 0);
  const ordered_json report = ordered_json::parse(r.out);
  CHECK(report.at("k") == 1);
  CHECK(report.at("M") == 1.0);
  CHECK(report.at("sup_error").get<double>() <= 1e-12);
}

TEST_CASE("synth: malformed samples file") {
  const std::string samples = path_in_scratch("broken.json");
  spit(samples, "{not json");
  CHECK(run_cli("synth --samples " + samples).status == 1);
  const std::string short_samples = path_in_scratch("short.json");
  spit(short_samples, R"({"n": 2, "k_grid": 2, "values": [0.0]})");
  CHECK(run_cli("synth --samples " + short_samples).status == 1);
}

TEST_CASE("synth: grid resolution comes from flag, then environment") {
  const CmdResult env_run =
      run_cli("synth --fn product --mode direct --eps 0.01", "env QOP_GRID_RES=11 ");
  REQUIRE(env_run.status == 0);
  CHECK(ordered_json::parse(env_run.out).at("grid") == 11);

  const CmdResult flag_run =
      run_cli("synth --fn product --mode direct --eps 0.01 --res 21",
              "env QOP_GRID_RES=11 ");
  REQUIRE(flag_run.status == 0);
  CHECK(ordered_json::parse(flag_run.out).at("grid") == 21);
}

TEST_CASE("gates: bit-flip export applies as a complement") {
  const std::string op = path_in_scratch("not.json");
  REQUIRE(run_cli("gates --name not --out " + op).status == 0);
  const std::string states = path_in_scratch("state_03.json");
  spit(states, states_json({0.3}));
  const CmdResult r = run_cli("apply --op " + op + " --state " + states);
  REQUIRE(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("gates: product channel export multiplies probabilities") {
  const std::string op = path_in_scratch("iand.json");
  REQUIRE(run_cli("gates --name iand --out " + op).status == 0);
  const std::string states = path_in_scratch("state_55.json");
  spit(states, states_json({0.5, 0.5}));
  const CmdResult r = run_cli("apply --op " + op + " --state " + states);
  REQUIRE(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.25).epsilon(1e-12));

  const CmdResult v = run_cli("verify --op " + op + " --choi");
  CHECK(v.status == 0);
  CHECK(v.out.find("verdict ok") != std::string::npos);
}

TEST_CASE("gates: quadratic approximant is not exportable") {
  const CmdResult r = run_cli("gates --name luka");
  CHECK(r.status == 2);
  CHECK(r.err.find("not exportable") != std::string::npos);
}

TEST_CASE("apply: tensor copies against the synthesized product operation") {
  const std::string op = path_in_scratch("xy_op.json");
  REQUIRE(run_cli("synth --fn product --mode direct --eps 0.01 --out " + op).status == 0);
  const std::string states = path_in_scratch("state_58.json");
  spit(states, states_json({0.5, 0.8}));
  const CmdResult r = run_cli("apply --op " + op + " --state " + states);
  REQUIRE(r.status == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.4).epsilon(1e-12));

  // Output density for (0.5, 0.8): I/2 tensor diag(0.6, 0.4).
  const std::string rho_out = path_in_scratch("xy_rho.json");
  REQUIRE(run_cli("apply --op " + op + " --state " + states + " --out " + rho_out).status ==
          0);
  const ordered_json rho = ordered_json::parse(slurp(rho_out));
  CHECK(rho.at("rows") == 4);
  CHECK(rho.at("entries")[0][0].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rho.at("entries")[5][0].get<double>() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("apply: dimension mismatch is a usage error") {
  const std::string op = path_in_scratch("iand2.json");
  REQUIRE(run_cli("gates --name iand --out " + op).status == 0);
  const std::string states = path_in_scratch("state_single.json");
  spit(states, states_json({0.5}));
  const CmdResult r = run_cli("apply --op " + op + " --state " + states);
  CHECK(r.status == 1);

  // --copies 2 fixes the dimensionality.
  const CmdResult r2 = run_cli("apply --op " + op + " --state " + states + " --copies 2");
  REQUIRE(r2.status == 0);
  CHECK(std::stod(r2.out) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("verify: a perturbed operation file fails with exit 3") {
  const std::string op = path_in_scratch("good_op.json");
  REQUIRE(run_cli("synth --fn luka_sum_shrunk --eps 0.05 --out " + op).status == 0);
  CHECK(run_cli("verify --op " + op).status == 0);

  ordered_json j = ordered_json::parse(slurp(op));
  j["rank_one"][0]["scale"] = j["rank_one"][0]["scale"].get<double>() * 1.001;
  const std::string bad = path_in_scratch("bad_op.json");
  spit(bad, j.dump(2) + "\n");
  const CmdResult r = run_cli("verify --op " + bad);
  CHECK(r.status == 3);
  CHECK(r.out.find("verdict FAIL") != std::string::npos);
}

TEST_CASE("verify: choi request beyond the dimension cap") {
  // Diagonal identity set at dimension 32 is a valid channel, but the Choi
  // matrix at that size is out of scope.
  ordered_json j;
  j["dim_in"] = 32;
  j["dim_out"] = 32;
  ordered_json rank_one = ordered_json::array();
  for (int i = 0; i < 32; ++i) {
    ordered_json t;
    t["scale"] = 1.0;
    t["row"] = i;
    t["col"] = i;
    rank_one.push_back(std::move(t));
  }
  j["rank_one"] = std::move(rank_one);
  j["dense"] = ordered_json::array();
  const std::string op = path_in_scratch("big_diag.json");
  spit(op, j.dump(2) + "\n");
  CHECK(run_cli("verify --op " + op).status == 0);
  CHECK(run_cli("verify --op " + op + " --choi").status == 2);
}

TEST_CASE("sweep: truncated sum lattice") {
  const std::string csv = path_in_scratch("luka3.csv");
  REQUIRE(run_cli("sweep --what luka --res 3 --out " + csv).status == 0);
  const std::string text = slurp(csv);
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "x,y,value");
  int rows = 0;
  std::string last;
  while (std::getline(lines, line))
    if (!line.empty()) {
      ++rows;
      last = line;
    }
  CHECK(rows == 9);
  CHECK(last == "1,1,1");
}

TEST_CASE("sweep: quadratic approximant at the center") {
  const std::string csv = path_in_scratch("poly3.csv");
  REQUIRE(run_cli("sweep --what luka_poly --res 3 --out " + csv).status == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  bool found = false;
  while (std::getline(lines, line))
    if (line.rfind("0.5,0.5,", 0) == 0) {
      found = true;
      const double v = std::stod(line.substr(8));
      CHECK(v == doctest::Approx(11.0 / 12.0).epsilon(1e-12));
    }
  CHECK(found);
}

TEST_CASE("sweep: difference grid reports the worst point") {
  const std::string csv = path_in_scratch("diff.csv");
  const CmdResult r = run_cli("sweep --what diff --res 101 --out " + csv);
  REQUIRE(r.status == 0);
  REQUIRE(r.out.rfind("max ", 0) == 0);
  std::istringstream head(r.out);
  std::string word;
  double max_v = 0.0;
  head >> word >> max_v;
  CHECK(max_v == doctest::Approx(1.0 / 12.0).epsilon(1e-9));

  // Deterministic output: identical bytes on a second run.
  const std::string csv2 = path_in_scratch("diff2.csv");
  REQUIRE(run_cli("sweep --what diff --res 101 --out " + csv2).status == 0);
  CHECK(slurp(csv) == slurp(csv2));

  CHECK(run_cli("sweep --what nosuch --res 3 --out " + path_in_scratch("x.csv")).status == 1);
  CHECK(run_cli("sweep --what luka --res 1 --out " + path_in_scratch("y.csv")).status == 1);
}

TEST_CASE("bare invocation is a usage error") {
  CHECK(run_cli("").status == 1);
  CHECK(run_cli("frobnicate").status == 1);
}
