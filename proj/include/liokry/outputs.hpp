// Copyright 2026 The liokry Authors
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

// Artifact emission: sweep CSV, Wigner CSVs, spectrum CSV and run manifest.
// Missing values are written as the literal NA.

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liokry/config.hpp"
#include "liokry/sweep.hpp"

namespace liokry {

inline constexpr const char* kSweepCsvHeader =
    "g,alpha_sq_mf,gap_oracle,gap_krylov_mean,gap_krylov_min,gap_krylov_max,cond_s,kept_rank,non_normality,"
    "eigvec_cond,tau,D,wall_time_ms";

/// Shortest round-trip decimal for finite values, "inf"/"-inf", "NA" when empty.
std::string format_value(std::optional<double> value);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_wall_time);
void write_wigner_csv(std::ostream& out, const WignerMap& map);
void write_spectrum_csv(std::ostream& out, const std::vector<Complex>& eigenvalues);

/// File name of the CSV for one Wigner request, e.g. wigner_g0.5_slow_oracle.csv.
std::string wigner_file_name(const WignerRequest& request);

struct EmittedArtifacts {
  std::filesystem::path sweep_csv;
  std::vector<std::filesystem::path> wigner_csvs;
  std::optional<std::filesystem::path> sweep_json;
  std::filesystem::path manifest;
};

/// Writes every artifact into `directory`, creating it if needed. Throws
/// IoError naming the path on failure.
EmittedArtifacts emit_outputs(const std::vector<SweepRow>& rows, const std::vector<WignerResult>& wigner_maps,
                              const RunConfig& cfg, const std::filesystem::path& directory,
                              const std::vector<std::string>& wigner_failures = {});

}  // namespace liokry
