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

#include "liokry/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "liokry/errors.hpp"

#ifndef LIOKRY_VERSION
#define LIOKRY_VERSION "unknown"
#endif

namespace liokry {
namespace {

namespace fs = std::filesystem;

std::string format_int(std::optional<int> value) { return value ? std::to_string(*value) : "NA"; }

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

nlohmann::ordered_json optional_json(std::optional<double> v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

}  // namespace

std::string format_value(std::optional<double> value) {
  if (!value || std::isnan(*value)) return "NA";
  if (std::isinf(*value)) return *value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), *value);
  return {buf, res.ptr};
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_wall_time) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_value(r.g) << ',' << format_value(r.alpha_sq_mf) << ',' << format_value(r.gap_oracle) << ','
        << format_value(r.gap_krylov_mean()) << ',' << format_value(r.gap_krylov_min()) << ','
        << format_value(r.gap_krylov_max()) << ',' << format_value(r.cond_s) << ',' << format_int(r.kept_rank) << ','
        << format_value(r.non_normality) << ',' << format_value(r.eigvec_cond) << ',' << format_value(r.tau) << ','
        << r.dim_d << ',' << (include_wall_time ? format_value(r.wall_time_ms) : std::string("NA")) << '\n';
  }
}

void write_wigner_csv(std::ostream& out, const WignerMap& map) {
  out << "x,p,w\n";
  const auto& g = map.grid;
  for (int i = 0; i < g.x_points; ++i)
    for (int j = 0; j < g.p_points; ++j)
      out << format_value(g.x(i)) << ',' << format_value(g.p(j)) << ',' << format_value(map.values(i, j)) << '\n';
}

void write_spectrum_csv(std::ostream& out, const std::vector<Complex>& eigenvalues) {
  out << "re_lambda,im_lambda\n";
  for (const Complex lambda : eigenvalues) out << format_value(lambda.real()) << ',' << format_value(lambda.imag()) << '\n';
}

std::string wigner_file_name(const WignerRequest& request) {
  return "wigner_g" + format_value(request.g) + "_" + std::string(to_string(request.state)) + "_" +
         (request.source == WignerSource::oracle ? "oracle" : "krylov") + ".csv";
}

EmittedArtifacts emit_outputs(const std::vector<SweepRow>& rows, const std::vector<WignerResult>& wigner_maps,
                              const RunConfig& cfg, const fs::path& directory,
                              const std::vector<std::string>& wigner_failures) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec || !fs::is_directory(directory))
    throw IoError("cannot create output directory '" + directory.string() + "': " + ec.message());

  EmittedArtifacts artifacts;
  artifacts.sweep_csv = directory / "sweep.csv";
  write_file(artifacts.sweep_csv, [&](std::ostream& out) { write_sweep_csv(out, rows, cfg.outputs.wall_time); });

  for (const auto& w : wigner_maps) {
    const fs::path path = directory / wigner_file_name(w.request);
    write_file(path, [&](std::ostream& out) { write_wigner_csv(out, w.map); });
    artifacts.wigner_csvs.push_back(path);
  }

  auto points = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    points.push_back({{"g_index", r.g_index},
                      {"g", r.g},
                      {"tau", r.tau},
                      {"status", std::string(to_string(r.status))},
                      {"reason", r.reason},
                      {"gap_oracle", optional_json(r.gap_oracle)},
                      {"gap_krylov", r.gap_krylov},
                      {"cond_s", optional_json(r.cond_s)},
                      {"kept_rank", r.kept_rank ? nlohmann::ordered_json(*r.kept_rank) : nullptr},
                      {"seed", derived_seed(cfg.krylov.seed, r.g_index)},
                      {"wall_time_ms", r.wall_time_ms}});
  }

  if (std::find(cfg.outputs.formats.begin(), cfg.outputs.formats.end(), "json") != cfg.outputs.formats.end()) {
    artifacts.sweep_json = directory / "sweep.json";
    write_file(*artifacts.sweep_json, [&](std::ostream& out) { out << points.dump(2) << '\n'; });
  }

  artifacts.manifest = directory / "manifest.json";
  nlohmann::ordered_json manifest;
  manifest["version"] = LIOKRY_VERSION;
  manifest["seed"] = cfg.krylov.seed;
  manifest["config"] = to_json(cfg);
  manifest["points"] = points;
  auto files = nlohmann::ordered_json::array();
  files.push_back(artifacts.sweep_csv.filename().string());
  for (const auto& p : artifacts.wigner_csvs) files.push_back(p.filename().string());
  if (artifacts.sweep_json) files.push_back(artifacts.sweep_json->filename().string());
  manifest["artifacts"] = files;
  manifest["wigner_failures"] = wigner_failures;
  write_file(artifacts.manifest, [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });
  return artifacts;
}

}  // namespace liokry
