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

// liokry command line: drive sweeps, oracle spectra and Wigner maps.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure (every
// sweep point NA), 3 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "liokry/config.hpp"
#include "liokry/errors.hpp"
#include "liokry/liouville.hpp"
#include "liokry/outputs.hpp"
#include "liokry/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3 };

struct RunArgs {
  std::string config;
  std::string out;
  int workers = 0;
  bool no_oracle = false;
};

struct PointArgs {
  std::string config;
  double g = 0.0;
  std::string state = "steady";
  std::string out;
};

// Writes to `path`, or to stdout when empty.
template <typename Writer>
void write_target(const std::string& path, Writer&& writer) {
  if (path.empty()) {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw liokry::IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw liokry::IoError("cannot open '" + path + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw liokry::IoError("failed writing '" + path + "'");
}

int run_command(const RunArgs& args) {
  liokry::RunConfig cfg = liokry::load_config(args.config);
  if (args.no_oracle) cfg.oracle_enabled = false;
  if (!args.out.empty()) cfg.outputs.directory = args.out;

  const auto rows = liokry::run_sweep(cfg, {.workers = args.workers});

  std::vector<liokry::WignerResult> maps;
  std::vector<std::string> failures;
  for (const auto& request : cfg.wigner_requests) {
    try {
      maps.push_back(liokry::compute_wigner(cfg, request));
    } catch (const liokry::Error& e) {
      failures.push_back(liokry::wigner_file_name(request) + ": " + e.what());
      std::cerr << "liokry: wigner request failed: " << failures.back() << '\n';
    }
  }

  const auto artifacts = liokry::emit_outputs(rows, maps, cfg, cfg.outputs.directory, failures);
  std::cerr << "liokry: wrote " << rows.size() << " rows to " << artifacts.sweep_csv.string() << '\n';
  for (const auto& row : rows)
    if (row.status != liokry::PointStatus::ok)
      std::cerr << "liokry: g=" << row.g << " tau=" << row.tau << " " << liokry::to_string(row.status) << ": "
                << row.reason << '\n';
  if (liokry::all_points_na(rows)) {
    std::cerr << "liokry: every sweep point is NA\n";
    return kRuntimeError;
  }
  return kOk;
}

int oracle_command(const PointArgs& args) {
  const liokry::RunConfig cfg = liokry::load_config(args.config);
  const liokry::FockSpace space(cfg.n_levels);
  const auto spectrum = liokry::full_spectrum_oracle(liokry::kerr_cat_liouvillian(space, cfg.params_at(args.g)),
                                                     {.eigvec_condition = false});
  write_target(args.out, [&](std::ostream& out) { liokry::write_spectrum_csv(out, spectrum.eigenvalues); });
  return kOk;
}

int wigner_command(const PointArgs& args) {
  const liokry::RunConfig cfg = liokry::load_config(args.config);
  liokry::WignerRequest request;
  request.g = args.g;
  request.state = liokry::wigner_state_from_string(args.state);
  const auto result = liokry::compute_wigner(cfg, request);
  write_target(args.out, [&](std::ostream& out) { liokry::write_wigner_csv(out, result.map); });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov estimation of Liouvillian gaps for the Kerr cat resonator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Sweep the two-photon drive and emit CSV, Wigner maps and a manifest");
  run->add_option("--config", run_args.config, "JSON run configuration")->required();
  run->add_option("--out", run_args.out, "Output directory (overrides outputs.directory)");
  run->add_option("--workers", run_args.workers, "Worker threads (default: available cores)")
      ->check(CLI::NonNegativeNumber);
  run->add_flag("--no-oracle", run_args.no_oracle, "Skip the dense reference spectrum");

  PointArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Dump the full Liouvillian spectrum as re_lambda,im_lambda");
  oracle->add_option("--config", oracle_args.config, "JSON run configuration")->required();
  oracle->add_option("--g", oracle_args.g, "Two-photon drive strength")->required();
  oracle->add_option("--out", oracle_args.out, "Output file (default: stdout)");

  PointArgs wigner_args;
  auto* wigner = app.add_subcommand("wigner", "Wigner map x,p,w of the steady state or the slow mode");
  wigner->add_option("--config", wigner_args.config, "JSON run configuration")->required();
  wigner->add_option("--g", wigner_args.g, "Two-photon drive strength")->required();
  wigner->add_option("--state", wigner_args.state, "steady or slow")
      ->check(CLI::IsMember({"steady", "slow"}))
      ->required();
  wigner->add_option("--out", wigner_args.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return run_command(run_args);
    if (*oracle) return oracle_command(oracle_args);
    if (*wigner) return wigner_command(wigner_args);
  } catch (const liokry::ConfigError& e) {
    std::cerr << "liokry: " << e.what() << '\n';
    return kConfigError;
  } catch (const liokry::IoError& e) {
    std::cerr << "liokry: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "liokry: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
