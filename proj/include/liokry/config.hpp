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

// Strictly validated JSON run configuration. Every default is materialised
// in the parsed RunConfig, and to_json emits a document parse_config accepts.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "liokry/catmodel.hpp"
#include "liokry/fock.hpp"
#include "liokry/krylov.hpp"
#include "liokry/wigner.hpp"

namespace liokry {

enum class SweepScale { linear, log };

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
  SweepScale scale = SweepScale::linear;

  /// steps values from start to stop inclusive (start only when steps = 1).
  std::vector<double> values() const;
};

struct KrylovRunSettings {
  int dim_d = 20;
  std::vector<double> tau_list{5.0};
  double threshold = 1e-12;
  GevpMethod method = GevpMethod::transfer_matrix;
  int repetitions = 3;
  std::uint64_t seed = 1234;
  int n_pairs = 4;
  SamplerBasis sampler = SamplerBasis::symmetry_broken;
};

struct OutputSettings {
  std::string directory = "liokry_out";
  std::vector<std::string> formats{"csv"};  // "csv" always; "json" adds sweep.json
  bool wall_time = false;                   // wall_time_ms column; NA keeps CSVs reproducible
};

enum class WignerStateKind { steady, slow };
enum class WignerSource { oracle, krylov };

struct WignerRequest {
  double g = 0.0;
  WignerStateKind state = WignerStateKind::steady;
  WignerSource source = WignerSource::oracle;
};

struct RunConfig {
  int n_levels = 30;
  double kappa_1ph = 1.0;
  double delta = 0.2;
  double kerr = 0.05;
  SweepRange g_sweep;
  KrylovRunSettings krylov;
  OutputSettings outputs;
  bool oracle_enabled = true;
  std::vector<WignerRequest> wigner_requests;
  PhaseSpaceGrid wigner_grid;

  KerrCatParams params_at(double g) const { return {delta, kerr, g, kappa_1ph}; }
  KrylovConfig krylov_config(double tau) const;
};

std::string_view to_string(WignerStateKind kind);
WignerStateKind wigner_state_from_string(std::string_view name);

/// Throws ConfigError naming the offending key path.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace liokry
