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

// File formats and report serialization.
//
// State file:  {"schema_version": "1.0", "dims": [da, db],
//               "matrix": [[re, im], ...]}        (row-major, da*db squared pairs)
// POVM file:   {"schema_version": "1.0", "dim": d,
//               "elements": [[[re, im], ...], ...]}
//
// Machine output writes every double with 17 significant digits.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrbound/correlations.hpp"
#include "corrbound/dilation_proof.hpp"
#include "corrbound/measurement.hpp"
#include "corrbound/state_library.hpp"

namespace corrbound {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr int kSchemaMajor = 1;

/// Throws InvalidInput("schema_version") for a missing or unsupported major.
void check_schema_version(const Json& j);

/// Serializes with 17 significant digits per double; non-finite doubles
/// become null.
std::string dump_json(const Json& j, int indent = 2);

/// Row-major [[re, im], ...].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const Json& j);
Json povm_to_json(const Povm& m);
Povm povm_from_json(const Json& j);

/// Throws InvalidInput("file") when unreadable or not JSON.
Json read_json_file(const std::filesystem::path& path);
DensityMatrix read_state_file(const std::filesystem::path& path);
Povm read_povm_file(const std::filesystem::path& path);

Json report_to_json(const CorrelationReport& r);
/// 12 significant digits, one field per line.
std::string report_to_text(const CorrelationReport& r);

/// Scalars, residuals and checks; every stored state too when `full`.
Json proof_to_json(const ProofTrace& t, const ProofVerdict& v, bool full);
std::string proof_to_text(const ProofTrace& t, const ProofVerdict& v);

struct ScanRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string dims;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double mutual_information = 0.0;
  double classical_j = 0.0;
  double discord = 0.0;
  double bound_margin = 0.0;
  double discord_sb_margin = 0.0;
  int d_minus_sa_sign = 0;
};

ScanRow scan_row(std::size_t index, std::uint64_t seed, const CorrelationReport& r);

inline constexpr const char* kScanCsvHeader =
    "index,seed,dims,s_a,s_b,s_ab,mi,j,discord,bound_margin,discord_sb_margin,d_minus_sa_sign";

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

/// "%.17g" of `x`.
std::string format_machine(double x);
/// "%.12g" of `x`.
std::string format_human(double x);

}  // namespace corrbound
