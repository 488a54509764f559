// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface over the qmeas library. Exit codes: 0 success,
// 1 verification failure, 2 input error.

#include <array>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmeas/builders.hpp"
#include "qmeas/designs.hpp"
#include "qmeas/fidelity.hpp"
#include "qmeas/povm_json.hpp"
#include "qmeas/qubit.hpp"
#include "qmeas/scans.hpp"
#include "qmeas/verify.hpp"

namespace {

using nlohmann::json;
using namespace qmeas;

// POVM arguments are file paths, or builder specs of the form name(args):
//   basis(d) fourier(d) trivial(d) tetrahedron() sic3(phi)
//   mub4(x,y,z,index) qubit(alpha,ax,ay,az) cmub(d,index)
//   random(d,m,seed) random-rank1(d,m,seed)
Povm resolve_povm(const std::string& arg) {
  const size_t open = arg.find('(');
  if (open == std::string::npos || arg.back() != ')') return load_povm(arg);

  const std::string name = arg.substr(0, open);
  std::vector<double> params;
  std::string body = arg.substr(open + 1, arg.size() - open - 2);
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string token = body.substr(pos, comma - pos);
    if (!token.empty()) {
      try {
        params.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw ParseError(arg + ": cannot parse parameter '" + token + "'");
      }
    }
    pos = comma + 1;
  }
  auto want = [&](size_t n) {
    if (params.size() != n)
      throw ParseError(arg + ": expected " + std::to_string(n) + " parameters");
  };

  if (name == "basis") {
    want(1);
    return computational_basis(static_cast<int>(params[0]));
  }
  if (name == "fourier") {
    want(1);
    return fourier_basis(static_cast<int>(params[0]));
  }
  if (name == "trivial") {
    want(1);
    return trivial_povm(static_cast<int>(params[0]));
  }
  if (name == "tetrahedron") {
    want(0);
    return sic_d2_tetrahedron();
  }
  if (name == "sic3") {
    want(1);
    return sic_d3(params[0]);
  }
  if (name == "mub4") {
    want(4);
    const int index = static_cast<int>(params[3]);
    if (index < 0 || index > 2) throw ParseError(arg + ": basis index must be 0, 1, or 2");
    return mub_triple_d4({params[0], params[1], params[2]})[index];
  }
  if (name == "qubit") {
    want(4);
    return qubit_binary_povm(params[0], {params[1], params[2], params[3]});
  }
  if (name == "cmub") {
    want(2);
    const auto family = cmub_family(static_cast<int>(params[0]));
    const int index = static_cast<int>(params[1]);
    if (index < 0 || index >= static_cast<int>(family.size()))
      throw ParseError(arg + ": basis index out of range");
    return family[index];
  }
  if (name == "random") {
    want(3);
    return random_povm(static_cast<int>(params[0]), static_cast<int>(params[1]),
                       static_cast<std::uint64_t>(params[2]));
  }
  if (name == "random-rank1") {
    want(3);
    return random_rank1_povm(static_cast<int>(params[0]), static_cast<int>(params[1]),
                             static_cast<std::uint64_t>(params[2]));
  }
  throw ParseError(arg + ": unknown builder '" + name + "'");
}

json constants_to_json(const FidelityConstants& c, int copies) {
  json j;
  j["d"] = c.d;
  j["f1"] = c.f1;
  j["f2_iid"] = c.f2_iid;
  j["f2_sep"] = c.f2_sep;
  j["f3_proj"] = c.f3_proj;
  j["n_copy_upper_bound"] = c.n_copy_upper_bound(copies);
  return j;
}

int cmd_fidelity(const std::vector<std::string>& files, int copies, bool oracle) {
  std::vector<Povm> factors;
  for (const std::string& f : files) factors.push_back(resolve_povm(f));
  if (factors.size() == 1 && copies > 1)
    factors.assign(static_cast<size_t>(copies), factors.front());
  if (factors.size() > 3 && !oracle) oracle = true;

  const FidelityResult r = estimation_fidelity(factors, oracle);
  json out;
  out["value"] = r.value;
  out["copies"] = r.copies;
  out["denominator"] = r.denominator;
  out["per_element_norms"] = r.per_element_norms;
  out["constants"] = constants_to_json(fidelity_constants(factors.front().dim()), r.copies);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_frame_potential(const std::string& file, double t, const std::string& cross) {
  const Povm p = resolve_povm(file);
  double value;
  if (cross.empty()) {
    value = povm_frame_potential(p, t);
  } else {
    const Povm q = resolve_povm(cross);
    value = povm_cross_frame_potential(p, q, t);
  }
  std::cout << format_real(value) << "\n";
  return 0;
}

int cmd_witness(const std::string& file_a, const std::string& file_b) {
  const Povm a = resolve_povm(file_a);
  const Povm b = resolve_povm(file_b);
  const WitnessResult w = incompatibility_witness(a, b);
  json out;
  out["verdict"] = to_string(w.verdict);
  out["fidelity"] = w.fidelity;
  out["incompatible_threshold"] = w.incompatible_threshold;
  out["noncommuting_threshold"] = w.noncommuting_threshold;
  out["saturates_incompatible_threshold"] =
      std::abs(w.fidelity - w.incompatible_threshold) <= kTol.saturation;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_scan_mub4(int grid, const std::string& out_path) {
  const std::vector<ScanPoint3> rows = scan_mub_triple(grid);
  CsvWriter csv({"x", "y", "z", "fidelity"});
  for (const ScanPoint3& r : rows) csv.add_row({r.x, r.y, r.z, r.fidelity});
  csv.write(out_path);
  std::cerr << "wrote " << csv.rows() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_scan_sic3(int grid, const std::string& out_path) {
  const std::vector<ScanPoint1> rows = scan_sic_phase(grid);
  CsvWriter csv({"phi", "fidelity"});
  for (const ScanPoint1& r : rows) csv.add_row({r.phi, r.fidelity});
  csv.write(out_path);

  const SicScanDiagnostics diag = sic_scan_diagnostics(rows);
  json side;
  side["period"] = diag.period;
  side["max_period_deviation"] = diag.max_period_deviation;
  side["increasing_first_half"] = diag.increasing_first_half;
  side["decreasing_second_half"] = diag.decreasing_second_half;
  side["argmin_phi"] = diag.argmin_phi;
  side["argmax_phi"] = diag.argmax_phi;
  std::ofstream side_out(out_path + ".sidecar.json");
  side_out << side.dump(2) << "\n";
  std::cerr << "wrote " << csv.rows() << " rows to " << out_path << " (+ sidecar)\n";
  return 0;
}

int cmd_scan_figures(const std::string& which, int dmax, int samples, const std::string& out_path) {
  if (dmax > 16) throw ParseError("scan-figures: dmax must not exceed 16");
  FigureDataset data;
  if (which == "fp_half")
    data = figure_half_potentials(dmax);
  else if (which == "fid_iid")
    data = figure_iid_fidelities(dmax);
  else if (which == "fid_settings")
    data = figure_setting_fidelities(dmax);
  else if (which == "qubit_commutator")
    data = figure_qubit_commutator(samples);
  else if (which == "mes_curve")
    data = figure_entropy_curve(samples);
  else
    throw ParseError("scan-figures: unknown figure '" + which + "'");

  CsvWriter csv(data.columns);
  for (const auto& row : data.rows) csv.add_row(row);
  csv.write(out_path);
  std::cerr << "wrote " << csv.rows() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials) {
  std::vector<verify::Check> checks;
  if (suite == "bounds")
    checks = verify::bounds_suite(seed, trials);
  else if (suite == "oracle")
    checks = verify::oracle_suite(seed, trials);
  else if (suite == "table1")
    checks = verify::table1_suite(seed, trials);
  else
    throw ParseError("verify: unknown suite '" + suite + "'");

  bool all = true;
  json report;
  report["suite"] = suite;
  report["seed"] = seed;
  report["trials"] = trials;
  json items = json::array();
  for (const verify::Check& c : checks) {
    json item;
    item["name"] = c.name;
    item["passed"] = c.passed;
    item["worst"] = c.worst;
    if (!c.detail.empty()) item["detail"] = c.detail;
    items.push_back(std::move(item));
    all = all && c.passed;
  }
  report["checks"] = std::move(items);
  report["passed"] = all;
  std::cout << report.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"POVM calculus, frame potentials, and estimation-fidelity scans"};
  app.require_subcommand(1);

  std::vector<std::string> povm_files;
  int copies = 1;
  bool oracle = false;
  auto* fid = app.add_subcommand("fidelity", "Estimation fidelity of a product measurement");
  fid->add_option("povm", povm_files, "1-3 POVM files or builder specs")->required();
  fid->add_option("--copies", copies, "Identical copies of a single input")->default_val(1);
  fid->add_flag("--oracle", oracle, "Force the permutation-sum route");

  std::string fp_file, fp_cross;
  double fp_t = 1.0;
  auto* fp = app.add_subcommand("frame-potential", "Frame potential of a measurement");
  fp->add_option("povm", fp_file, "POVM file or builder spec")->required();
  fp->add_option("--t", fp_t, "Potential order t > 0")->required();
  fp->add_option("--cross", fp_cross, "Second POVM for the cross potential");

  std::string wa, wb;
  auto* wit = app.add_subcommand("witness", "Incompatibility detection from two-copy fidelity");
  wit->add_option("povmA", wa)->required();
  wit->add_option("povmB", wb)->required();

  int grid_mub = 24;
  std::string out_mub;
  auto* smub = app.add_subcommand("scan-mub4", "Three-basis fidelity scan in dimension 4");
  smub->add_option("--grid", grid_mub, "Points per axis over [0, pi)")->default_val(24);
  smub->add_option("--out", out_mub, "Output CSV path")->required();

  int grid_sic = 90;
  std::string out_sic;
  auto* ssic = app.add_subcommand("scan-sic3", "Phase scan over the dimension-3 SIC family");
  ssic->add_option("--grid", grid_sic, "Samples over one period [0, 2pi/9)")->default_val(90);
  ssic->add_option("--out", out_sic, "Output CSV path")->required();

  std::string which, out_fig;
  int dmax = 16, samples = 50;
  auto* sfig = app.add_subcommand("scan-figures", "Reference curve datasets");
  sfig->add_option("--which", which,
                   "One of: fp_half, fid_iid, fid_settings, qubit_commutator, mes_curve")
      ->required();
  sfig->add_option("--dmax", dmax, "Largest dimension for d-indexed curves")->default_val(16);
  sfig->add_option("--samples", samples, "Sample count for angle-indexed curves")->default_val(50);
  sfig->add_option("--out", out_fig, "Output CSV path")->required();

  std::string suite;
  std::uint64_t seed = 20260801;
  int trials = 100;
  auto* ver = app.add_subcommand("verify", "Seeded verification suites");
  ver->add_option("--suite", suite, "One of: bounds, oracle, table1")->required();
  ver->add_option("--seed", seed)->default_val(20260801);
  ver->add_option("--trials", trials)->default_val(100);

  CLI11_PARSE(app, argc, argv);

  try {
    if (fid->parsed()) return cmd_fidelity(povm_files, copies, oracle);
    if (fp->parsed()) return cmd_frame_potential(fp_file, fp_t, fp_cross);
    if (wit->parsed()) return cmd_witness(wa, wb);
    if (smub->parsed()) return cmd_scan_mub4(grid_mub, out_mub);
    if (ssic->parsed()) return cmd_scan_sic3(grid_sic, out_sic);
    if (sfig->parsed()) return cmd_scan_figures(which, dmax, samples, out_fig);
    if (ver->parsed()) return cmd_verify(suite, seed, trials);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
