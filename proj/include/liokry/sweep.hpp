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

// Drive sweep orchestration: one row per (g, tau), computed on a worker pool
// and returned in grid order.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liokry/config.hpp"
#include "liokry/wigner.hpp"

namespace liokry {

enum class PointStatus { ok, partial, na };

std::string_view to_string(PointStatus status);

struct SweepRow {
  std::size_t g_index = 0;
  double g = 0.0;
  double tau = 0.0;
  int dim_d = 0;
  std::optional<double> alpha_sq_mf;
  std::optional<double> gap_oracle;
  std::vector<double> gap_krylov;  // one per successful repetition
  std::optional<double> cond_s;    // largest over repetitions
  std::optional<int> kept_rank;    // smallest over repetitions
  std::optional<double> non_normality;
  std::optional<double> eigvec_cond;
  double wall_time_ms = 0.0;
  PointStatus status = PointStatus::na;
  std::string reason;  // failures, joined with "; "

  std::optional<double> gap_krylov_mean() const;
  std::optional<double> gap_krylov_min() const;
  std::optional<double> gap_krylov_max() const;
};

struct SweepOptions {
  int workers = 0;  // 0 selects the available hardware concurrency
};

/// Seed of the sampler used at sweep point `g_index`.
std::uint64_t derived_seed(std::uint64_t base_seed, std::size_t g_index);

/// |g grid| x |tau list| rows, including NA rows. Never throws for per-point failures.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepOptions& options = {});

/// True when no row carries any gap value.
bool all_points_na(const std::vector<SweepRow>& rows);

struct WignerResult {
  WignerRequest request;
  WignerMap map;
};

/// Evaluates one Wigner request of the configuration.
WignerResult compute_wigner(const RunConfig& cfg, const WignerRequest& request);

}  // namespace liokry
