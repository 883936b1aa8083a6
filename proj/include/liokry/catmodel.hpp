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

// Kerr cat specifics: trace-zero initial superkets built from Hamiltonian
// eigenstates, the mean-field order-parameter ODE and the Landau functional.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "liokry/fock.hpp"
#include "liokry/liouville.hpp"

namespace liokry {

enum class SamplerBasis {
  /// Pairs (psi_2j + psi_2j+1)/sqrt2, (psi_2j - psi_2j+1)/sqrt2: parity-broken projectors.
  symmetry_broken,
  /// Pairs psi_2j, psi_2j+1 of H eigenstates: parity-even projectors only.
  eigenstates,
};

/// Eigenvectors of H ordered by descending energy, each with its largest
/// component made real positive.
HermitianEigenDecomposition ordered_eigenbasis(const FockSpace& space, const KerrCatParams& p);

/// Draws rho = sum_j c_j (|phi_a><phi_a| - |phi_b><phi_b|), c_j ~ U[0, 1), over
/// pairs (a, b) = (2j, 2j + 1); projects out the trace, Hermitises and
/// normalises the superket. Not shareable across threads.
class TraceZeroSampler {
 public:
  explicit TraceZeroSampler(std::uint64_t seed, int n_pairs = 4, SamplerBasis basis = SamplerBasis::symmetry_broken);

  std::uint64_t seed() const noexcept { return seed_; }
  int n_pairs() const noexcept { return n_pairs_; }
  SamplerBasis basis() const noexcept { return basis_; }

  Superket sample(const FockSpace& space, const KerrCatParams& p);

  /// Same construction with explicit coefficients (one per pair); consumes no randomness.
  Superket compose(const FockSpace& space, const KerrCatParams& p, const std::vector<double>& coefficients) const;

  TraceZeroSampler clone_with_seed(std::uint64_t seed) const;

 private:
  double uniform();

  std::uint64_t seed_;
  int n_pairs_;
  SamplerBasis basis_;
  std::mt19937_64 engine_;
};

struct MeanFieldState {
  Complex alpha;
  double time = 0.0;
};

/// i(delta a + 2K |a|^2 a - 2 g conj(a)) - kappa a / 2.
Complex mean_field_rhs(const MeanFieldState& s, const KerrCatParams& p);

/// Fixed-step RK4 from alpha0. Records every `record_every`-th step plus the
/// final state. Throws BlowUpError when |alpha|^2 exceeds 10 * n_levels.
std::vector<MeanFieldState> mean_field_evolve(Complex alpha0, const KerrCatParams& p, double t_final, double dt,
                                              int n_levels = 30, int record_every = 1);

struct MeanFieldOptions {
  Complex alpha0{0.1, 0.0};
  double t_final = 400.0;
  double dt = 1e-3;
  int n_levels = 30;
};

/// Steady |alpha|^2. Integrates from alpha0 when kappa > 0; a conservative
/// (kappa = 0) flow never settles, so the fixed-point branch
/// |alpha|^2 = max(0, (2g - delta) / 2K) is returned instead.
double mean_field_steady_photons(const KerrCatParams& p, const MeanFieldOptions& options = {});

/// K/4 |alpha|^4 - g/2 |alpha|^2.
double landau_functional(Complex alpha, const KerrCatParams& p);

struct OnsetEstimate {
  std::optional<double> onset_g;  // empty when no grid point reaches the threshold
  double rule_of_thumb = 0.0;     // kappa / 4
  std::vector<double> drives;
  std::vector<double> steady_photons;
};

/// Smallest g whose steady |alpha|^2 exceeds fraction * g / K.
OnsetEstimate cat_regime_onset(const std::vector<KerrCatParams>& p_grid, double fraction = 0.5,
                               const MeanFieldOptions& options = {});

}  // namespace liokry
