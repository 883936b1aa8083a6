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

// Vectorised Lindblad superoperators and the dense spectral oracle.
//
// Flattening is row-major: rho(i, j) sits at index i * N + j. Under this
// convention vec(A rho B) = (A kron B^T) vec(rho), which every assembly
// routine below relies on.

#pragma once

#include <optional>
#include <vector>

#include "liokry/fock.hpp"
#include "liokry/numerics.hpp"

namespace liokry {

class Superket {
 public:
  Superket(FockSpace space, ComplexVector vec);

  const FockSpace& space() const noexcept { return space_; }
  const ComplexVector& vec() const noexcept { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  FockSpace space_;
  ComplexVector vec_;
};

class Superoperator {
 public:
  Superoperator(FockSpace space, ComplexMatrix matrix);

  const FockSpace& space() const noexcept { return space_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  Superket apply(const Superket& rho) const;

  friend Superoperator operator+(const Superoperator& x, const Superoperator& y);

 private:
  FockSpace space_;
  ComplexMatrix matrix_;
};

Superket vectorize(const FockSpace& space, const ComplexMatrix& m);
ComplexMatrix devectorize(const Superket& s);

/// |I>>, so that <<I|rho>> = Tr rho.
Superket identity_superket(const FockSpace& space);

/// <<a|b>> = Tr(a^dag b).
Complex inner(const Superket& a, const Superket& b);

/// |<<a|b>>| / (|a| |b|); the overlap fidelity used for eigen-operator comparisons.
double superket_overlap(const Superket& a, const Superket& b);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two density matrices.
double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Removes the arbitrary complex phase of an eigen-operator whose underlying
/// operator is Hermitian up to that phase, then returns (X + X^dag) / 2.
ComplexMatrix hermitian_representative(const ComplexMatrix& x);

/// rho -> -i (H rho - rho H). Requires H Hermitian.
Superoperator hamiltonian_superop(const FockOperator& h, const NumericSettings& settings = {});

/// rho -> rate (l rho l^dag - {l^dag l, rho} / 2). Requires rate >= 0.
Superoperator dissipator_superop(const FockOperator& l, double rate);

/// -i[H_KCQ, .] + kappa_1ph D[a].
Superoperator kerr_cat_liouvillian(const FockSpace& space, const KerrCatParams& p);

struct OracleOptions {
  bool left_eigenvectors = false;
  bool eigvec_condition = true;
  /// tol_ss = rtol * |L|_F identifies the null eigenvalue.
  double steady_rtol = 1e-9;
  /// Re(lambda) > rtol * |L|_F is reported as an unstable spectrum.
  double stability_rtol = 1e-10;
  NumericSettings numerics{};
};

struct LiouvilleSpectrum {
  std::vector<Complex> eigenvalues;  // descending real part
  ComplexMatrix right_superkets;     // column k pairs with eigenvalues[k]
  std::optional<ComplexMatrix> left_superkets;
  std::size_t steady_state_index = 0;
  std::size_t slow_mode_index = 0;
  double gap = 0.0;
  double eigvec_condition = 0.0;
  double tol_ss = 0.0;
};

/// Exact reference spectrum by dense eigendecomposition.
LiouvilleSpectrum full_spectrum_oracle(const Superoperator& l, const OracleOptions& options = {});

/// |L^dag L - L L^dag|_F / |L|_F.
double non_normality(const Superoperator& l);

/// Trace-one null vector of L, Hermitised. Warns on a degenerate null space
/// and on eigenvalues below -1e-10.
Superket steady_state(const Superoperator& l, const OracleOptions& options = {});

/// Same as steady_state but reuses an oracle spectrum.
Superket steady_state(const LiouvilleSpectrum& spectrum, const FockSpace& space);

/// Slow-mode eigen-operator from an oracle spectrum, phase-fixed and Hermitised, unit norm.
Superket slow_mode(const LiouvilleSpectrum& spectrum, const FockSpace& space);

}  // namespace liokry
