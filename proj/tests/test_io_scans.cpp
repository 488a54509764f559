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

#include <cstdlib>
#include <sstream>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>

#include "qmeas/builders.hpp"
#include "qmeas/povm_json.hpp"
#include "qmeas/scans.hpp"

using namespace qmeas;
using Catch::Matchers::WithinAbs;

TEST_CASE("measurement documents round-trip exactly") {
  const Povm sic = sic_d3(0.456);
  const nlohmann::json doc = povm_to_json(sic);
  const Povm back = povm_from_json(doc);
  REQUIRE(back.dim() == 3);
  REQUIRE(back.size() == 9);
  for (int j = 0; j < 9; ++j)
    REQUIRE((back.element(j) - sic.element(j)).max_abs() == 0.0);
  REQUIRE(back.labels() == sic.labels());
}

TEST_CASE("document rejection carries a field diagnostic") {
  nlohmann::json doc = povm_to_json(computational_basis(2));

  nlohmann::json wrong_version = doc;
  wrong_version["schema_version"] = "povm/2";
  REQUIRE_THROWS_WITH(povm_from_json(wrong_version),
                      Catch::Matchers::ContainsSubstring("schema_version"));

  nlohmann::json short_row = doc;
  short_row["elements"][0][1] = nlohmann::json::array();
  REQUIRE_THROWS_WITH(povm_from_json(short_row),
                      Catch::Matchers::ContainsSubstring("elements[0][1]"));

  nlohmann::json bad_cell = doc;
  bad_cell["elements"][1][0][1] = {1.0};
  REQUIRE_THROWS_WITH(povm_from_json(bad_cell),
                      Catch::Matchers::ContainsSubstring("elements[1][0][1]"));

  nlohmann::json incomplete = doc;
  incomplete["elements"][0][0][0][0] = 2.0;  // breaks the resolution of identity
  REQUIRE_THROWS_WITH(povm_from_json(incomplete),
                      Catch::Matchers::ContainsSubstring("validation"));
}

TEST_CASE("real formatting survives a parse round trip") {
  for (double v : {1.0 / 3.0, kPi, 0.1, 5e-17, 1234.5678901234567}) {
    REQUIRE(std::stod(format_real(v)) == v);
  }
}

TEST_CASE("csv output is deterministic") {
  auto render = [] {
    CsvWriter csv({"a", "b"});
    csv.add_row({1.0 / 3.0, 2.0 / 7.0});
    csv.add_row({kPi, std::sqrt(2.0)});
    return csv.str();
  };
  REQUIRE(render() == render());
  REQUIRE(render().find("\r") == std::string::npos);
  REQUIRE(render().substr(0, 4) == "a,b\n");
}

TEST_CASE("triple-basis scan grid shape and recomputation") {
  const auto rows = scan_mub_triple(4);  // even grid carries the anchors
  REQUIRE(rows.size() == 64);
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    REQUIRE(std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z));
  }
  bool anchor = false;
  for (const auto& r : rows)
    if (r.x == kPi / 2.0 && r.y == 0.0 && r.z == 0.0) {
      anchor = true;
      REQUIRE_THAT(r.fidelity, WithinAbs(0.5, 1e-9));
    }
  REQUIRE(anchor);

  // Odd grids append the two reference rows instead.
  const auto odd = scan_mub_triple(3);
  REQUIRE(odd.size() == 27 + 2);
  REQUIRE_THAT(odd[27].fidelity, WithinAbs(0.5, 1e-9));
  REQUIRE_THAT(odd[28].fidelity, WithinAbs((46.0 + 5.0 * std::sqrt(3.0)) / 105.0, 1e-9));

  // A 1% row sample recomputes to the stored values.
  for (size_t i = 0; i < rows.size(); i += 97)
    REQUIRE_THAT(mub_triple_fidelity(rows[i].x, rows[i].y, rows[i].z),
                 WithinAbs(rows[i].fidelity, 1e-12));
}

TEST_CASE("phase scan diagnostics") {
  const auto rows = scan_sic_phase(18);
  REQUIRE(rows.size() == 18);
  const SicScanDiagnostics diag = sic_scan_diagnostics(rows);
  REQUIRE(diag.max_period_deviation <= 1e-9);
  REQUIRE(diag.increasing_first_half);
  REQUIRE(diag.decreasing_second_half);
  REQUIRE_THAT(diag.argmin_phi, WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(diag.argmax_phi, WithinAbs(kPi / 9.0, 1e-12));
  REQUIRE_THROWS_AS(scan_sic_phase(5), DomainError);
}

TEST_CASE("figure datasets") {
  const FigureDataset fp = figure_half_potentials(6);
  REQUIRE(fp.columns.size() == 5);
  REQUIRE(fp.rows.size() == 5);
  // d = 3 row: basis 3, sic 5, cmub (3 + 3^{5/2})/4.
  REQUIRE_THAT(fp.rows[1][1], WithinAbs(3.0, 1e-12));
  REQUIRE_THAT(fp.rows[1][2], WithinAbs(5.0, 1e-12));
  REQUIRE_THAT(fp.rows[1][3], WithinAbs((3.0 + std::pow(3.0, 2.5)) / 4.0, 1e-12));
  REQUIRE_THAT(fp.rows[1][4], WithinAbs(haar_frame_potential(3, 0.5), 1e-12));

  const FigureDataset settings = figure_setting_fidelities(4);
  // Collective column is (N+1)/(N+d) at N = 2.
  REQUIRE_THAT(settings.rows[0][1], WithinAbs(3.0 / 4.0, 1e-12));
  REQUIRE_THAT(settings.rows[1][1], WithinAbs(3.0 / 5.0, 1e-12));

  const FigureDataset commutator = figure_qubit_commutator(11);
  for (const auto& row : commutator.rows)
    REQUIRE_THAT(row[2], WithinAbs((3.0 + std::sqrt(1.0 + row[1])) / 6.0, 1e-12));

  // Identical-pair curves: the basis column reproduces f1 and the symmetric
  // column reproduces the two-copy ceiling.
  const FigureDataset iid = figure_iid_fidelities(5);
  for (size_t i = 0; i < iid.rows.size(); ++i) {
    const int d = static_cast<int>(iid.rows[i][0]);
    REQUIRE_THAT(iid.rows[i][1], WithinAbs(fidelity_constants(d).f1, 1e-12));
    REQUIRE_THAT(iid.rows[i][2], WithinAbs(fidelity_constants(d).f2_iid, 1e-12));
  }
}

TEST_CASE("scan sharding does not change results") {
  const auto sequential = scan_mub_triple(3);
#ifdef _WIN32
  return;
#else
  setenv("QMEAS_THREADS", "4", 1);
  const auto sharded = scan_mub_triple(3);
  unsetenv("QMEAS_THREADS");
#endif
  REQUIRE(sequential.size() == sharded.size());
  for (size_t i = 0; i < sequential.size(); ++i)
    REQUIRE(sequential[i].fidelity == sharded[i].fidelity);
}
