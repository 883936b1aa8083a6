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

#include "liokry/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "liokry/catmodel.hpp"
#include "liokry/errors.hpp"
#include "liokry/krylov.hpp"
#include "liokry/liouville.hpp"

namespace liokry {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void append_reason(std::string& reason, const std::string& what) {
  if (!reason.empty()) reason += "; ";
  reason += what;
}

// Work shared by every tau at one drive strength.
struct PointContext {
  std::optional<double> alpha_sq_mf;
  std::optional<double> gap_oracle;
  std::optional<double> non_normality;
  std::optional<double> eigvec_cond;
  std::string reason;
  bool complete = true;
};

std::vector<SweepRow> evaluate_point(const RunConfig& cfg, std::size_t g_index, double g) {
  const auto start = Clock::now();
  const FockSpace space(cfg.n_levels);
  const KerrCatParams params = cfg.params_at(g);
  const auto& taus = cfg.krylov.tau_list;

  std::vector<SweepRow> rows(taus.size());
  for (std::size_t t = 0; t < taus.size(); ++t) {
    rows[t].g_index = g_index;
    rows[t].g = g;
    rows[t].tau = taus[t];
    rows[t].dim_d = cfg.krylov.dim_d;
  }

  PointContext ctx;
  std::optional<Superoperator> liouvillian;
  try {
    liouvillian = kerr_cat_liouvillian(space, params);
    ctx.non_normality = non_normality(*liouvillian);
  } catch (const std::exception& e) {
    append_reason(ctx.reason, std::string("liouvillian: ") + e.what());
    ctx.complete = false;
  }
  try {
    ctx.alpha_sq_mf = mean_field_steady_photons(params, {.n_levels = cfg.n_levels});
  } catch (const std::exception& e) {
    append_reason(ctx.reason, std::string("mean field: ") + e.what());
    ctx.complete = false;
  }
  if (cfg.oracle_enabled && liouvillian) {
    try {
      const auto spectrum = full_spectrum_oracle(*liouvillian);
      ctx.gap_oracle = spectrum.gap;
      ctx.eigvec_cond = spectrum.eigvec_condition;
    } catch (const std::exception& e) {
      append_reason(ctx.reason, std::string("oracle: ") + e.what());
      ctx.complete = false;
    }
  }
  const double shared_ms = elapsed_ms(start);

  for (std::size_t t = 0; t < taus.size(); ++t) {
    const auto tau_start = Clock::now();
    SweepRow& row = rows[t];
    row.alpha_sq_mf = ctx.alpha_sq_mf;
    row.gap_oracle = ctx.gap_oracle;
    row.non_normality = ctx.non_normality;
    row.eigvec_cond = ctx.eigvec_cond;
    row.reason = ctx.reason;
    bool complete = ctx.complete;

    if (liouvillian) {
      try {
        const KrylovConfig kcfg = cfg.krylov_config(taus[t]);
        const Propagator propagator(*liouvillian, kcfg.tau);
        TraceZeroSampler sampler(derived_seed(cfg.krylov.seed, g_index), cfg.krylov.n_pairs, cfg.krylov.sampler);
        for (int rep = 0; rep < cfg.krylov.repetitions; ++rep) {
          try {
            const Superket rho0 = sampler.sample(space, params);
            const KrylovData data = build_basis(*liouvillian, propagator, rho0, kcfg);
            const GapEstimate est = solve_gevp(data, kcfg);
            row.gap_krylov.push_back(est.gap);
            row.cond_s = std::max(row.cond_s.value_or(0.0), est.cond_s);
            row.kept_rank = std::min(row.kept_rank.value_or(est.kept_rank), est.kept_rank);
          } catch (const std::exception& e) {
            append_reason(row.reason, "repetition " + std::to_string(rep) + ": " + e.what());
            complete = false;
          }
        }
      } catch (const std::exception& e) {
        append_reason(row.reason, std::string("krylov: ") + e.what());
        complete = false;
      }
    }

    if (row.gap_krylov.empty() && !row.gap_oracle)
      row.status = PointStatus::na;
    else
      row.status = complete ? PointStatus::ok : PointStatus::partial;
    row.wall_time_ms = shared_ms + elapsed_ms(tau_start);
  }
  return rows;
}

}  // namespace

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::ok:
      return "ok";
    case PointStatus::partial:
      return "partial";
    case PointStatus::na:
      return "na";
  }
  return "unknown";
}

std::optional<double> SweepRow::gap_krylov_mean() const {
  if (gap_krylov.empty()) return std::nullopt;
  return std::accumulate(gap_krylov.begin(), gap_krylov.end(), 0.0) / static_cast<double>(gap_krylov.size());
}

std::optional<double> SweepRow::gap_krylov_min() const {
  if (gap_krylov.empty()) return std::nullopt;
  return *std::min_element(gap_krylov.begin(), gap_krylov.end());
}

std::optional<double> SweepRow::gap_krylov_max() const {
  if (gap_krylov.empty()) return std::nullopt;
  return *std::max_element(gap_krylov.begin(), gap_krylov.end());
}

std::uint64_t derived_seed(std::uint64_t base_seed, std::size_t g_index) {
  return base_seed + static_cast<std::uint64_t>(g_index);
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepOptions& options) {
  const std::vector<double> drives = cfg.g_sweep.values();
  std::vector<std::vector<SweepRow>> per_point(drives.size());

  int workers = options.workers > 0 ? options.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(drives.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < drives.size(); i = next++) per_point[i] = evaluate_point(cfg, i, drives[i]);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<SweepRow> rows;
  rows.reserve(drives.size() * cfg.krylov.tau_list.size());
  for (auto& point : per_point)
    for (auto& row : point) rows.push_back(std::move(row));
  return rows;
}

bool all_points_na(const std::vector<SweepRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == PointStatus::na; });
}

WignerResult compute_wigner(const RunConfig& cfg, const WignerRequest& request) {
  const FockSpace space(cfg.n_levels);
  const KerrCatParams params = cfg.params_at(request.g);
  const Superoperator l = kerr_cat_liouvillian(space, params);
  ComplexMatrix rho;
  if (request.source == WignerSource::oracle) {
    const auto spectrum = full_spectrum_oracle(l);
    rho = devectorize(request.state == WignerStateKind::steady ? steady_state(spectrum, space)
                                                               : slow_mode(spectrum, space));
  } else {
    const KrylovConfig kcfg = cfg.krylov_config(cfg.krylov.tau_list.front());
    TraceZeroSampler sampler(cfg.krylov.seed, cfg.krylov.n_pairs, cfg.krylov.sampler);
    const KrylovData data = build_basis(l, sampler.sample(space, params), kcfg);
    const GapEstimate est = solve_gevp(data, kcfg);
    rho = devectorize(reconstruct_eigenstate(data, est, est.slow_index));
  }
  return {request, wigner_of(rho, cfg.wigner_grid)};
}

}  // namespace liokry
