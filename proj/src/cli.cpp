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

#include "corrbound/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "corrbound/correlations.hpp"
#include "corrbound/dilation_proof.hpp"
#include "corrbound/io.hpp"
#include "corrbound/parallel.hpp"
#include "corrbound/random.hpp"

namespace corrbound {

namespace {

constexpr double kViolationTol = 1e-9;
constexpr std::uint64_t kPovmStream = 0x9077;

struct StateSource {
  std::string preset;
  std::optional<double> param;
  std::string file;

  void add_to(CLI::App& app) {
    auto* p = app.add_option("--preset", preset, "Named state: bell, werner, product, classical, maximally_mixed");
    auto* f = app.add_option("--state", file, "State file (JSON)");
    p->excludes(f);
    app.add_option("--param", param, "Family parameter (werner z, product/classical p)");
  }

  DensityMatrix load() const {
    if (!file.empty()) return read_state_file(file);
    if (preset.empty()) throw InvalidInput("state", "give --preset NAME or --state FILE");
    return family(preset, param.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
};

// Writes to --out when set, otherwise to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("file", fmt::format("cannot write '{}'", path));
  f << text;
  if (!f) throw InvalidInput("file", fmt::format("failed writing '{}'", path));
}

Povm generate_povm(const std::string& name, std::size_t dim, std::uint64_t seed, std::size_t outcomes) {
  CounterRng rng(seed, kPovmStream);
  if (name == "computational") return Povm::computational(dim);
  if (name == "trine") {
    if (dim != 2) throw InvalidInput("dimension", "the trine POVM acts on a qubit (d_B = 2)");
    return trine_povm();
  }
  if (name == "random2") return random_two_outcome_povm(dim, rng);
  if (name == "random_rank1") return random_rank_one_povm(dim, outcomes ? outcomes : dim * dim, rng);
  if (name == "random_projective") return random_projective(dim, rng).as_povm();
  throw InvalidInput("povm",
                     fmt::format("unknown POVM '{}' (computational, trine, random2, random_rank1, random_projective)", name));
}

// ---------------------------------------------------------------------------

struct ComputeArgs {
  StateSource state;
  std::string measurement_class = "projective";
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::size_t povm_outcomes = 0;
  std::size_t workers = 1;
  std::string format = "json";
  std::string out;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = a.state.load();
  OptimizerOptions opts;
  opts.measurement_class = parse_measurement_class(a.measurement_class);
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  opts.povm_outcomes = a.povm_outcomes;
  opts.workers = a.workers;
  err << fmt::format("compute: {} state, {} class, {} restarts\n", rho.split().label(), a.measurement_class, a.restarts);
  const auto report = quantum_discord(rho, opts);
  emit(a.out, a.format == "text" ? report_to_text(report) : dump_json(report_to_json(report)) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ScanArgs {
  std::string ensemble = "ginibre";
  std::string dims = "2x2";
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::size_t rank = 0;
  std::string measurement_class = "projective";
  std::size_t restarts = 32;
  std::size_t workers = 1;
  std::string out;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  if (a.ensemble != "ginibre" && a.ensemble != "haar_pure" && a.ensemble != "werner-sweep") {
    throw InvalidInput("ensemble", fmt::format("unknown ensemble '{}' (ginibre, haar_pure, werner-sweep)", a.ensemble));
  }
  const bool sweep = a.ensemble == "werner-sweep";
  const DimSplit split = sweep ? DimSplit::bipartite(2, 2) : parse_dims(a.dims);
  if (!split.is_bipartite()) throw InvalidInput("dims", "scan dims must name two subsystems, e.g. 2x3");
  if (a.count == 0) throw InvalidInput("count", "count must be positive");
  if (sweep && a.count < 2) throw InvalidInput("count", "werner-sweep needs count >= 2");
  const std::size_t rank = a.rank ? a.rank : split.total();
  OptimizerOptions base;
  base.measurement_class = parse_measurement_class(a.measurement_class);
  base.restarts = a.restarts;

  err << fmt::format("scan: {} x {} ({}), {} restarts each\n", a.count, a.ensemble, split.label(), a.restarts);
  const auto rows = parallel_map(a.count, a.workers, [&](std::size_t i) {
    const std::uint64_t member_seed = a.seed ^ static_cast<std::uint64_t>(i);
    DensityMatrix rho = sweep ? werner(static_cast<double>(i) / static_cast<double>(a.count - 1))
                        : a.ensemble == "haar_pure" ? random_pure_haar(split, member_seed)
                                                    : random_mixed_ginibre(split, rank, member_seed);
    OptimizerOptions opts = base;
    opts.seed = member_seed;
    return scan_row(i, member_seed, quantum_discord(rho, opts));
  });

  double min_bound = std::numeric_limits<double>::infinity();
  double min_dsb = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::size_t d_above_sa = 0;
  for (const auto& r : rows) {
    min_bound = std::min(min_bound, r.bound_margin);
    min_dsb = std::min(min_dsb, r.discord_sb_margin);
    if (r.bound_margin < -kViolationTol) ++violations;
    if (r.d_minus_sa_sign > 0) ++d_above_sa;
  }
  std::ostringstream csv;
  write_scan_csv(csv, rows);
  emit(a.out, csv.str(), out);

  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["kind"] = "scan_summary";
  summary["ensemble"] = a.ensemble;
  summary["dims"] = split.label();
  summary["count"] = a.count;
  summary["seed"] = a.seed;
  summary["restarts"] = a.restarts;
  summary["min_bound_margin"] = min_bound;
  summary["min_discord_sb_margin"] = min_dsb;
  summary["violations"] = violations;
  summary["discord_above_s_a"] = d_above_sa;
  (a.out.empty() ? err : out) << dump_json(summary) << "\n";
  return violations == 0 ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  StateSource state;
  std::string povm = "computational";
  std::string povm_file;
  std::uint64_t povm_seed = 0;
  std::size_t outcomes = 0;
  std::string construction = "rank1";
  std::size_t cap = 4096;
  bool full = false;
  std::string format = "json";
  std::string out;
};

int cmd_verify_proof(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = a.state.load();
  if (!rho.split().is_bipartite()) throw InvalidInput("bipartite", "state must have two subsystems");
  const Povm m = a.povm_file.empty() ? generate_povm(a.povm, rho.split().dim_b(), a.povm_seed, a.outcomes)
                                     : read_povm_file(a.povm_file);
  ProofOptions opts;
  opts.construction = parse_construction(a.construction);
  opts.dimension_cap = a.cap;
  err << fmt::format("verify-proof: {} state, {}-outcome POVM, {} construction\n", rho.split().label(), m.size(),
                     a.construction);
  const auto trace = build_proof_trace(rho, m, opts);
  const auto verdict = verify_proof(trace);
  emit(a.out, a.format == "text" ? proof_to_text(trace, verdict) : dump_json(proof_to_json(trace, verdict, a.full)) + "\n",
       out);
  for (const auto& c : verdict.checks)
    if (c.required && !c.passed) err << fmt::format("check failed: {} ({})\n", c.name, format_human(c.value));
  return verdict.all_required_passed ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------

struct StateGenArgs {
  std::string family_name;
  std::optional<double> param;
  std::string dims;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_state_gen(const StateGenArgs& a, std::ostream& out, std::ostream&) {
  const auto split = [&] { return parse_dims(a.dims.empty() ? "2x2" : a.dims); };
  std::optional<DensityMatrix> rho;
  if (a.family_name == "ginibre") {
    const DimSplit s = split();
    rho = random_mixed_ginibre(s, a.rank ? a.rank : s.total(), a.seed);
  } else if (a.family_name == "haar_pure") {
    rho = random_pure_haar(split(), a.seed);
  } else if (a.family_name == "maximally_mixed" && !a.dims.empty()) {
    rho = maximally_mixed(split());
  } else {
    rho = family(a.family_name, a.param.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  emit(a.out, dump_json(state_to_json(*rho)) + "\n", out);
  return kExitOk;
}

}  // namespace

DimSplit parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto x = text.find('x', pos);
    const std::string part = text.substr(pos, x == std::string::npos ? std::string::npos : x - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 6) {
      throw InvalidInput("dims", fmt::format("cannot parse dims '{}'; expected e.g. 2x3", text));
    }
    const auto d = std::stoul(part);
    if (d == 0) throw InvalidInput("dims", fmt::format("dims '{}' has a zero factor", text));
    dims.push_back(d);
    if (x == std::string::npos) break;
    pos = x + 1;
  }
  return DimSplit(std::move(dims));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical correlations, discord and dilation-proof checks for bipartite states", "corrbound"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Mutual information, J(A:B) and discord of one state");
  compute.state.add_to(*c);
  c->add_option("--class", compute.measurement_class, "Measurement class on B")->check(CLI::IsMember({"projective", "povm"}));
  c->add_option("--restarts", compute.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  c->add_option("--seed", compute.seed, "Optimizer seed");
  c->add_option("--outcomes", compute.povm_outcomes, "POVM outcomes for --class povm (default d_B^2)");
  c->add_option("--workers", compute.workers, "Threads for restarts")->check(CLI::PositiveNumber);
  c->add_option("--format", compute.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  c->add_option("--out", compute.out, "Write the report here instead of stdout");

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "Evaluate the correlation bound over a state ensemble (CSV)");
  s->add_option("--ensemble", scan.ensemble, "ginibre, haar_pure or werner-sweep");
  s->add_option("--dims", scan.dims, "Subsystem dimensions, e.g. 2x3");
  s->add_option("--count", scan.count, "Ensemble size");
  s->add_option("--seed", scan.seed, "Base seed; member i uses seed XOR i");
  s->add_option("--rank", scan.rank, "Ginibre rank (default full)");
  s->add_option("--class", scan.measurement_class, "Measurement class on B")->check(CLI::IsMember({"projective", "povm"}));
  s->add_option("--restarts", scan.restarts, "Optimizer restarts per member")->check(CLI::PositiveNumber);
  s->add_option("--workers", scan.workers, "Threads over members")->check(CLI::PositiveNumber);
  s->add_option("--out", scan.out, "Write the CSV here; the summary then goes to stdout");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify-proof", "Build both dilations and check every step of the entropy bound");
  verify.state.add_to(*v);
  auto* povm_name = v->add_option("--povm", verify.povm, "computational, trine, random2, random_rank1, random_projective");
  auto* povm_file = v->add_option("--povm-file", verify.povm_file, "POVM file (JSON)");
  povm_name->excludes(povm_file);
  v->add_option("--povm-seed", verify.povm_seed, "Seed for random POVMs");
  v->add_option("--outcomes", verify.outcomes, "Outcomes for random_rank1 (default d_B^2)");
  v->add_option("--construction", verify.construction, "Neumark construction")->check(CLI::IsMember({"rank1", "canonical"}));
  v->add_option("--cap", verify.cap, "Largest allowed dilated dimension");
  v->add_flag("--full", verify.full, "Include every intermediate matrix");
  v->add_option("--format", verify.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  v->add_option("--out", verify.out, "Write the report here instead of stdout");

  StateGenArgs gen;
  auto* st = app.add_subcommand("state", "State files");
  st->require_subcommand(1);
  auto* g = st->add_subcommand("gen", "Write a state file");
  g->add_option("--family", gen.family_name, "bell, werner, product, classical, maximally_mixed, ginibre, haar_pure")
      ->required();
  g->add_option("--param", gen.param, "Family parameter");
  g->add_option("--dims", gen.dims, "Dimensions for ginibre, haar_pure, maximally_mixed");
  g->add_option("--rank", gen.rank, "Ginibre rank (default full)");
  g->add_option("--seed", gen.seed, "Seed for random families");
  g->add_option("--out", gen.out, "Write here instead of stdout");

  std::vector<const char*> argv{"corrbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (c->parsed()) return cmd_compute(compute, out, err);
    if (s->parsed()) return cmd_scan(scan, out, err);
    if (v->parsed()) return cmd_verify_proof(verify, out, err);
    if (g->parsed()) return cmd_state_gen(gen, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace corrbound
