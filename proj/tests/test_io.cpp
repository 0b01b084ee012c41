// Copyright 2026 The corrbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corrbound/io.hpp"
#include "corrbound/random.hpp"

using namespace corrbound;

namespace {

std::string invariant_of(const Json& j) {
  try {
    state_from_json(j);
  } catch (const InvalidInput& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(format_machine(0.1) == "0.10000000000000001");
  CHECK(format_human(0.1) == "0.1");
  CHECK(format_human(1.0 / 3.0) == "0.333333333333");
  Json j;
  j["x"] = 1.0 / 3.0;
  j["n"] = 3;
  j["bad"] = std::nan("");
  const auto s = dump_json(j);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("\"n\": 3") != std::string::npos);
  CHECK(s.find("\"bad\": null") != std::string::npos);
  CHECK(Json::parse(s)["x"].get<double>() == 1.0 / 3.0);
}

TEST_CASE("state files round-trip") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto rho = random_mixed_ginibre(DimSplit::bipartite(2, 3), 3, s);
    const auto parsed = Json::parse(dump_json(state_to_json(rho)));
    CHECK(matrix_from_json(parsed["matrix"], 6, 6) == rho.matrix());
    const auto back = state_from_json(parsed);
    CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-15);
    CHECK(back.split() == rho.split());
  }
  const auto path = std::filesystem::temp_directory_path() / "corrbound_io_state.json";
  {
    std::ofstream f(path);
    f << dump_json(state_to_json(werner(0.5)));
  }
  CHECK(read_state_file(path).matrix() == werner(0.5).matrix());
  std::filesystem::remove(path);
}

TEST_CASE("state file errors") {
  Json good = state_to_json(bell_phi_plus());
  CHECK(invariant_of(good).empty());

  Json v2 = good;
  v2["schema_version"] = "2.0";
  CHECK(invariant_of(v2) == "schema_version");
  Json v11 = good;
  v11["schema_version"] = "1.1";
  CHECK(invariant_of(v11).empty());
  Json nover = good;
  nover.erase("schema_version");
  CHECK(invariant_of(nover) == "format");
  Json junkver = good;
  junkver["schema_version"] = "one";
  CHECK(invariant_of(junkver) == "schema_version");

  Json short_matrix = good;
  short_matrix["matrix"].erase(0);
  CHECK(invariant_of(short_matrix) == "format");
  Json bad_dims = good;
  bad_dims["dims"] = {2, 0};
  CHECK(invariant_of(bad_dims) == "format");
  Json not_psd = good;
  not_psd["matrix"][0] = {-0.5, 0.0};
  not_psd["matrix"][15] = {1.5, 0.0};
  CHECK(invariant_of(not_psd) == "psd");

  CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), InvalidInput);
  const auto path = std::filesystem::temp_directory_path() / "corrbound_io_garbage.json";
  {
    std::ofstream f(path);
    f << "{not json";
  }
  try {
    read_state_file(path);
    FAIL("expected a parse error");
  } catch (const InvalidInput& e) {
    CHECK(e.invariant() == "file");
  }
  std::filesystem::remove(path);
}

TEST_CASE("POVM files") {
  const auto m = trine_povm();
  const auto back = povm_from_json(Json::parse(dump_json(povm_to_json(m))));
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(back[k] == m[k]);

  Json broken = povm_to_json(Povm::computational(2));
  broken["elements"][0][0] = {0.5, 0.0};
  CHECK_THROWS_WITH_AS(povm_from_json(broken), doctest::Contains("completeness"), InvalidInput);
  Json future = povm_to_json(m);
  future["schema_version"] = "3.0";
  CHECK_THROWS_AS(povm_from_json(future), InvalidInput);
}

TEST_CASE("correlation report serialization") {
  OptimizerOptions o;
  o.restarts = 2;
  const auto r = quantum_discord(bell_phi_plus(), o);
  const auto j = report_to_json(r);
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["kind"] == "correlation_report");
  CHECK(j["classical_j"].get<double>() == r.classical_j);
  CHECK(j["best_measurement"]["elements"].size() == 2);
  CHECK(j["best_measurement"].contains("bloch_angles"));
  const auto text = report_to_text(r);
  CHECK(text.find("mutual_information   2\n") != std::string::npos);
}

TEST_CASE("proof trace serialization") {
  const auto t = build_proof_trace(bell_phi_plus(), Povm::computational(2));
  const auto v = verify_proof(t);
  const auto brief = proof_to_json(t, v, false);
  CHECK(brief["construction"] == "rank1");
  CHECK(brief["all_required_passed"] == true);
  CHECK(brief["checks"].size() == v.checks.size());
  CHECK_FALSE(brief.contains("states"));
  const auto full = proof_to_json(t, v, true);
  REQUIRE(full.contains("states"));
  CHECK(full["states"]["rho_abbc_prime"]["matrix"].size() == t.rho_abbc_prime.dim() * t.rho_abbc_prime.dim());
  CHECK(proof_to_text(t, v).find("all required checks passed") != std::string::npos);
}

TEST_CASE("scan CSV") {
  OptimizerOptions o;
  o.restarts = 2;
  const auto r = quantum_discord(werner(0.3), o);
  const auto row = scan_row(4, 99, r);
  CHECK(row.d_minus_sa_sign == -1);
  std::ostringstream os;
  write_scan_csv(os, {row});
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  CHECK(header == "index,seed,dims,s_a,s_b,s_ab,mi,j,discord,bound_margin,discord_sb_margin,d_minus_sa_sign");
  CHECK(line.rfind("4,99,2x2,", 0) == 0);
  CHECK(std::count(line.begin(), line.end(), ',') == 11);
}
