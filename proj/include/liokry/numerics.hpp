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

// Dense complex linear algebra shared by every other module. Storage is
// Eigen; the spectral factorisations go through LAPACK.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace liokry {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerances threaded through every numerics call. Defaults match the
/// documented contracts; callers loosen or tighten them per study.
struct NumericSettings {
  /// Per-pair residual bound |Av - lv| <= rtol * |A|_F * |v| for eig_general.
  double eig_residual_rtol = 1e-10;
  /// Hermiticity precondition |A - A^dag|_F <= rtol * |A|_F for eig_hermitian.
  double hermitian_rtol = 1e-12;
  /// |V^dag V - I|_F bound for eig_hermitian eigenvectors.
  double orthonormal_tol = 1e-10;
  /// Relative cutoff below which sigma_min counts as zero in condition_number.
  /// Zero selects max(rows, cols) * machine epsilon.
  double singular_rtol = 0.0;
  /// |A|_1 above which expm refuses to scale-and-square.
  double expm_max_norm = 1e15;
  /// Verify post-conditions (residuals, orthonormality) after each factorisation.
  bool verify = true;
};

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;
  ComplexMatrix right_eigenvectors;  // columns, unit 2-norm
  std::optional<ComplexMatrix> left_eigenvectors;  // columns u with u^dag A = l u^dag
};

struct HermitianEigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns
};

struct SvdDecomposition {
  std::vector<double> singular_values;  // descending
  ComplexMatrix left_vectors;   // U, thin
  ComplexMatrix right_vectors;  // V (not V^dag), thin
};

enum class EigenvectorSides { right, both };

/// Full spectrum of a general (non-Hermitian, possibly defective) matrix.
EigenDecomposition eig_general(const ComplexMatrix& a, const NumericSettings& settings = {},
                               EigenvectorSides sides = EigenvectorSides::right);

/// Eigenvalues only; skips eigenvector work for large oracles that need just the spectrum.
std::vector<Complex> eigenvalues_general(const ComplexMatrix& a);

HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& a, const NumericSettings& settings = {});

SvdDecomposition svd(const ComplexMatrix& a, const NumericSettings& settings = {});

/// Singular values only, descending.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Matrix exponential by Pade scaling-and-squaring.
ComplexMatrix expm(const ComplexMatrix& a, const NumericSettings& settings = {});

/// sigma_max / sigma_min; +infinity when sigma_min is numerically zero.
double condition_number(const ComplexMatrix& a, const NumericSettings& settings = {});

/// Condition number from an already computed descending singular-value list.
double condition_from_singular_values(const std::vector<double>& sigma, double rtol);

/// max(rows, cols) * eps unless settings override it.
double effective_singular_rtol(const NumericSettings& settings, Eigen::Index rows, Eigen::Index cols);

bool all_finite(const ComplexMatrix& a);

}  // namespace liokry
