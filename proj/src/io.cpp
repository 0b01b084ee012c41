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

#include "corrbound/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace corrbound {

namespace {

void dump_value(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_machine(x) : "null";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays ([re, im] pairs, dims) stay on one line
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump_value(e, indent, depth + 1, out);
        first = false;
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_value(value, indent, depth + 1, out);
        first = false;
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

std::size_t positive_size(const Json& j, const char* field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw InvalidInput("format", fmt::format("'{}' must be a positive integer", field));
  }
  const auto v = j.get<std::int64_t>();
  if (v <= 0) throw InvalidInput("format", fmt::format("'{}' must be a positive integer", field));
  return static_cast<std::size_t>(v);
}

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) throw InvalidInput("format", fmt::format("missing field '{}'", field));
  return j.at(field);
}

Json vector_to_json(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json complex_vector_to_json(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
  return a;
}

Json measurement_to_json(const MeasurementRecord& m) {
  Json j;
  j["class"] = to_string(m.measurement_class);
  j["chart"] = m.chart;
  j["candidate"] = m.candidate;
  j["parameters"] = vector_to_json(m.parameters);
  if (m.bloch_angles) j["bloch_angles"] = {{"theta", m.bloch_angles->first}, {"phi", m.bloch_angles->second}};
  Json el = Json::array();
  for (const auto& e : m.elements) el.push_back(matrix_to_json(e));
  j["elements"] = std::move(el);
  return j;
}

}  // namespace

std::string format_machine(double x) { return fmt::format("{:.17g}", x); }
std::string format_human(double x) { return fmt::format("{:.12g}", x); }

void check_schema_version(const Json& j) {
  const Json& v = require(j, "schema_version");
  if (!v.is_string()) throw InvalidInput("schema_version", "schema_version must be a string like \"1.0\"");
  const auto s = v.get<std::string>();
  const auto dot = s.find('.');
  int major = -1;
  try {
    std::size_t used = 0;
    major = std::stoi(s.substr(0, dot), &used);
    if (used != s.substr(0, dot).size()) major = -1;
  } catch (const std::exception&) {
    major = -1;
  }
  if (major != kSchemaMajor) {
    throw InvalidInput("schema_version", fmt::format("unsupported schema_version '{}' (expected {}.x)", s, kSchemaMajor));
  }
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) { return complex_vector_to_json(m.entries()); }

ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols) {
    throw InvalidInput("format", fmt::format("matrix must be an array of {} [re, im] pairs", rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InvalidInput("format", "matrix entries must be [re, im] number pairs");
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dims"] = rho.split().dims();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  check_schema_version(j);
  const Json& dims = require(j, "dims");
  if (!dims.is_array() || dims.size() != 2) throw InvalidInput("format", "'dims' must be [d_a, d_b]");
  const std::size_t da = positive_size(dims[0], "dims");
  const std::size_t db = positive_size(dims[1], "dims");
  const std::size_t n = da * db;
  return DensityMatrix::from_matrix(matrix_from_json(require(j, "matrix"), n, n), DimSplit::bipartite(da, db));
}

Json povm_to_json(const Povm& m) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = m.dim();
  Json el = Json::array();
  for (const auto& e : m.elements()) el.push_back(matrix_to_json(e));
  j["elements"] = std::move(el);
  return j;
}

Povm povm_from_json(const Json& j) {
  check_schema_version(j);
  const std::size_t d = positive_size(require(j, "dim"), "dim");
  const Json& el = require(j, "elements");
  if (!el.is_array() || el.empty()) throw InvalidInput("format", "'elements' must be a non-empty array of matrices");
  std::vector<ComplexMatrix> elements;
  for (const auto& e : el) elements.push_back(matrix_from_json(e, d, d));
  return Povm::from_elements(std::move(elements));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("file", fmt::format("cannot read '{}'", path.string()));
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("file", fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

DensityMatrix read_state_file(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }
Povm read_povm_file(const std::filesystem::path& path) { return povm_from_json(read_json_file(path)); }

Json report_to_json(const CorrelationReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "correlation_report";
  j["dims"] = r.dims;
  j["measurement_class"] = to_string(r.measurement_class);
  j["optimizer_restarts"] = r.optimizer_restarts;
  j["seed"] = r.seed;
  j["s_a"] = r.s_a;
  j["s_b"] = r.s_b;
  j["s_ab"] = r.s_ab;
  j["mutual_information"] = r.mutual_information;
  j["classical_j"] = r.classical_j;
  j["discord"] = r.discord;
  j["bound_margin"] = r.bound_margin;
  j["discord_sb_margin"] = r.discord_sb_margin;
  j["discord_minus_sa"] = r.discord_minus_sa;
  j["best_measurement"] = measurement_to_json(r.best_measurement);
  return j;
}

std::string report_to_text(const CorrelationReport& r) {
  std::string s;
  const auto line = [&](const char* name, double v) { s += fmt::format("{:<20} {}\n", name, format_human(v)); };
  s += fmt::format("{:<20} {}\n", "dims", r.dims);
  s += fmt::format("{:<20} {}\n", "measurement_class", to_string(r.measurement_class));
  s += fmt::format("{:<20} {}\n", "optimizer_restarts", r.optimizer_restarts);
  s += fmt::format("{:<20} {}\n", "seed", r.seed);
  line("s_a", r.s_a);
  line("s_b", r.s_b);
  line("s_ab", r.s_ab);
  line("mutual_information", r.mutual_information);
  line("classical_j", r.classical_j);
  line("discord", r.discord);
  line("bound_margin", r.bound_margin);
  line("discord_sb_margin", r.discord_sb_margin);
  line("discord_minus_sa", r.discord_minus_sa);
  if (const auto& a = r.best_measurement.bloch_angles) {
    s += fmt::format("{:<20} theta={} phi={}\n", "best_bloch_angles", format_human(a->first), format_human(a->second));
  }
  return s;
}

Json proof_to_json(const ProofTrace& t, const ProofVerdict& v, bool full) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "proof_trace";
  j["construction"] = to_string(t.neumark.construction);
  j["dims"] = {{"a", t.dim_a}, {"b", t.dim_b}, {"ancilla", t.ancilla_dim}, {"register", t.c_dim}};
  j["input_outcomes"] = t.povm.size();
  j["dilated_outcomes"] = t.neumark.source.size();
  j["omega"] = complex_vector_to_json(t.neumark.omega);
  j["probabilities"] = vector_to_json(t.ensemble.probabilities);
  j["dropped_outcomes"] = t.ensemble.dropped;
  j["entropies"] = {
      {"s_a", t.s_a},
      {"s_b", t.s_b},
      {"s_bb", t.s_bb},
      {"s_ac_prime", t.s_ac_prime},
      {"s_a_prime", t.s_a_prime},
      {"s_bbc_prime", t.s_bbc_prime},
      {"s_bb_prime", t.s_bb_prime},
      {"shannon_p", t.shannon_p},
      {"average_conditional_entropy", t.average_conditional_entropy},
      {"bb_block_entropy", t.bb_block_entropy},
  };
  const auto& r = t.residuals;
  j["residuals"] = {
      {"neumark_compression", r.neumark_compression},
      {"neumark_probability", r.neumark_probability},
      {"neumark_conditional", r.neumark_conditional},
      {"double_sum_vs_unitary", r.double_sum_vs_unitary},
      {"ac_block_form", r.ac_block_form},
      {"a_prime_vs_a", r.a_prime_vs_a},
      {"ensemble_average_vs_a", r.ensemble_average_vs_a},
      {"bbc_spectrum", r.bbc_spectrum},
      {"rank_one_identity", r.rank_one_identity},
      {"literal_vs_luders", r.literal_vs_luders},
  };
  j["ssa_slack"] = t.ssa_slack;
  j["final_margin_sb"] = t.final_margin_sb;
  j["final_margin_sa"] = t.final_margin_sa;
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    checks.push_back({
        {"name", c.name},
        {"description", c.description},
        {"kind", c.is_bound ? "bound" : "equality"},
        {"value", c.value},
        {"tolerance", c.tolerance},
        {"required", c.required},
        {"passed", c.passed},
    });
  }
  j["checks"] = std::move(checks);
  j["all_required_passed"] = v.all_required_passed;
  if (full) {
    Json states;
    const auto put = [&](const char* name, const DensityMatrix& rho) {
      states[name] = {{"dims", rho.split().dims()}, {"matrix", matrix_to_json(rho.matrix())}};
    };
    put("rho_ab", t.rho_ab);
    put("rho_a", t.rho_a);
    put("rho_b", t.rho_b);
    put("rho_abb", t.rho_abb);
    put("rho_bb", t.rho_bb);
    put("rho_abb_prime", t.rho_abb_prime);
    put("rho_ab_prime", t.rho_ab_prime);
    put("rho_abbc_prime", t.rho_abbc_prime);
    put("rho_ac_prime", t.rho_ac_prime);
    put("rho_a_prime", t.rho_a_prime);
    put("rho_bbc_prime", t.rho_bbc_prime);
    put("rho_bb_prime", t.rho_bb_prime);
    j["states"] = std::move(states);
    j["povm"] = povm_to_json(t.povm);
    Json projectors = Json::array();
    for (const auto& p : t.neumark.projectors.projectors()) projectors.push_back(matrix_to_json(p));
    j["neumark_projectors"] = std::move(projectors);
    j["stinespring_unitary"] = matrix_to_json(t.stinespring.unitary_u);
  }
  return j;
}

std::string proof_to_text(const ProofTrace& t, const ProofVerdict& v) {
  std::string s;
  s += fmt::format("construction {}  dims A={} B={} ancilla={} register={}\n", to_string(t.neumark.construction),
                   t.dim_a, t.dim_b, t.ancilla_dim, t.c_dim);
  s += fmt::format("ssa_slack {}  final_margin_sb {}  final_margin_sa {}\n", format_human(t.ssa_slack),
                   format_human(t.final_margin_sb), format_human(t.final_margin_sa));
  for (const auto& c : v.checks) {
    const char* status = c.passed ? "pass" : (c.required ? "FAIL" : "info");
    s += fmt::format("  [{}] {:<24} {:>20}  tol {}  {}\n", status, c.name, format_human(c.value), format_human(c.tolerance),
                     c.description);
  }
  s += v.all_required_passed ? "all required checks passed\n" : "some required checks FAILED\n";
  return s;
}

ScanRow scan_row(std::size_t index, std::uint64_t seed, const CorrelationReport& r) {
  return ScanRow{
      .index = index,
      .seed = seed,
      .dims = r.dims,
      .s_a = r.s_a,
      .s_b = r.s_b,
      .s_ab = r.s_ab,
      .mutual_information = r.mutual_information,
      .classical_j = r.classical_j,
      .discord = r.discord,
      .bound_margin = r.bound_margin,
      .discord_sb_margin = r.discord_sb_margin,
      .d_minus_sa_sign = sign_with_tolerance(r.discord_minus_sa),
  };
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << kScanCsvHeader << '\n';
  for (const auto& r : rows) {
    os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.index, r.seed, r.dims, format_machine(r.s_a),
                      format_machine(r.s_b), format_machine(r.s_ab), format_machine(r.mutual_information),
                      format_machine(r.classical_j), format_machine(r.discord), format_machine(r.bound_margin),
                      format_machine(r.discord_sb_margin), r.d_minus_sa_sign);
  }
}

}  // namespace corrbound
