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

// Real-time Krylov subspace diagonalisation of a Liouvillian.
//
// The basis is the ladder rho_k = P^k rho_0 with P = exp(L tau). Columns are
// kept unnormalised; the overlap S, projected generator Lbar and shifted
// overlap S' are formed from the raw columns, then a thresholded SVD of S
// whitens the generalised eigenproblem before it is solved.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "liokry/liouville.hpp"
#include "liokry/numerics.hpp"

namespace liokry {

enum class GevpMethod {
  projected_generator,  // eigenvalues of W^dag Lbar W approximate lambda directly
  transfer_matrix,      // eigenvalues mu of W^dag S' W, lambda = log(mu) / tau
};

std::string_view to_string(GevpMethod method);
GevpMethod gevp_method_from_string(std::string_view name);

struct KrylovConfig {
  int dim_d = 20;
  double tau = 5.0;
  double threshold = 1e-12;
  GevpMethod method = GevpMethod::transfer_matrix;
  /// Ritz values with |lambda| <= steady_rtol * |L|_F are steady-state images.
  double steady_rtol = 1e-9;
  /// Ritz values with Re(lambda) > stability_rtol * |L|_F are discarded as spurious.
  double stability_rtol = 1e-10;
  /// transfer_matrix: |mu| > 1 + growth_tol is nonphysical.
  double growth_tol = 1e-6;

  void validate() const;
};

/// exp(L tau), computed once and shared by every basis built with that tau.
class Propagator {
 public:
  Propagator(const Superoperator& l, double tau, const NumericSettings& settings = {});
  double tau() const noexcept { return tau_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  double tau_;
  ComplexMatrix matrix_;
};

struct KrylovData {
  std::optional<FockSpace> space;  // absent for hand-assembled test data
  ComplexMatrix basis;             // N^2 x D, raw columns rho_0 .. rho_{D-1}
  ComplexVector next_column;       // rho_D, feeds the last column of S'
  ComplexMatrix overlap;           // S_ij = <<rho_i|rho_j>>
  ComplexMatrix projected_generator;  // Lbar_ij = <<rho_i|L|rho_j>>
  ComplexMatrix shifted_overlap;      // S'_ij = <<rho_i|rho_{j+1}>>
  std::vector<double> column_norms;
  double tau = 0.0;
  double generator_norm = 0.0;  // |L|_F, scale for the ritz tolerances

  int dim() const noexcept { return static_cast<int>(overlap.rows()); }
};

struct GapEstimate {
  std::vector<Complex> ritz_values;  // accepted: Re <= tol
  ComplexMatrix ritz_weights;        // column k: weights w over the raw basis for ritz_values[k]
  std::vector<Complex> raw_ritz_values;  // everything the projected problem returned
  std::size_t slow_index = 0;        // into ritz_values
  double gap = 0.0;
  int kept_rank = 0;
  double cond_s = 0.0;
  ComplexVector filter_weights;  // weights of the slow mode
};

KrylovData build_basis(const Superoperator& l, const Superket& rho0, const KrylovConfig& cfg);
KrylovData build_basis(const Superoperator& l, const Propagator& propagator, const Superket& rho0,
                       const KrylovConfig& cfg);

/// Leading d x d sub-problem of a larger basis (nested Krylov spaces share their prefix).
KrylovData truncate(const KrylovData& data, int d);

/// kappa(S). Uses kappa(K)^2 from the Krylov matrix when a basis is present.
double overlap_condition(const KrylovData& data);

/// Thresholded, whitened projected eigenproblem before any gap filtering.
struct RitzSpectrum {
  std::vector<Complex> values;  // lambda estimates; transfer_matrix values are ln(mu) / tau
  ComplexMatrix weights;        // column k: w over the raw basis, W y_k
  int kept_rank = 0;
};

RitzSpectrum ritz_spectrum(const KrylovData& data, const KrylovConfig& cfg);

GapEstimate solve_gevp(const KrylovData& data, const KrylovConfig& cfg);

/// sum_i w_i rho_i for ritz value `which`, Hermitised and unit-normalised.
Superket reconstruct_eigenstate(const KrylovData& data, const GapEstimate& est, std::size_t which);

/// |sum_k w_k exp(lambda tau k)|^2 at each eigenvalue.
std::vector<double> filter_profile(const ComplexVector& weights, double tau, const std::vector<Complex>& eigenvalues);

struct ConditioningRow {
  int dim_d = 0;
  double tau = 0.0;
  double cond_s = 0.0;
  int kept_rank = 0;
  std::optional<double> gap_estimate;
  std::string failure;  // set when the GEVP failed for this row
  double oracle_gap = 0.0;
  double oracle_eigvec_condition = 0.0;
};

/// One row per configuration. Configurations sharing tau reuse one propagator
/// and one basis of the largest D among them.
std::vector<ConditioningRow> conditioning_report(const Superoperator& l, const Superket& rho0,
                                                 const std::vector<KrylovConfig>& cfg_grid,
                                                 const LiouvilleSpectrum* oracle = nullptr);

}  // namespace liokry
