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

// Single bosonic mode truncated to the photon numbers 0..N-1.

#pragma once

#include <utility>

#include "liokry/numerics.hpp"

namespace liokry {

class FockSpace {
 public:
  explicit FockSpace(int n_levels);
  int n_levels() const noexcept { return n_levels_; }
  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int n_levels_;
};

class FockOperator {
 public:
  FockOperator(FockSpace space, ComplexMatrix matrix);

  const FockSpace& space() const noexcept { return space_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  FockOperator adjoint() const { return {space_, matrix_.adjoint()}; }

  friend FockOperator operator+(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator-(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator*(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator*(Complex c, const FockOperator& x);

 private:
  FockSpace space_;
  ComplexMatrix matrix_;
};

/// Two-photon-driven Kerr resonator with single-photon loss. Rates are in
/// units of kappa_1ph.
struct KerrCatParams {
  double delta = 0.2;
  double kerr = 0.05;
  double drive = 0.0;
  double kappa_1ph = 1.0;

  void validate() const;
};

FockOperator identity(const FockSpace& space);
FockOperator destroy(const FockSpace& space);
FockOperator create(const FockSpace& space);
FockOperator number(const FockSpace& space);
FockOperator parity(const FockSpace& space);

/// H = delta a^dag a - K a^dag^2 a^2 + g (a^dag^2 + a^2), built from truncated a.
FockOperator kerr_cat_hamiltonian(const FockSpace& space, const KerrCatParams& p);

/// Normalised truncated coherent state. Warns ("coherent-tail") when the
/// untruncated weight beyond N-1 exceeds 1e-8.
ComplexVector coherent_state(const FockSpace& space, Complex alpha);

/// Weight of the untruncated coherent state on photon numbers >= N.
double coherent_tail_weight(const FockSpace& space, Complex alpha);

/// Even (sign = +1) or odd (sign = -1) cat state N(|alpha> +- |-alpha>).
ComplexVector cat_state(const FockSpace& space, Complex alpha, int sign);

/// Logical (Z, X) = (a / alpha, Pi) of the cat code.
std::pair<FockOperator, FockOperator> logical_operators(const FockSpace& space, double alpha);

}  // namespace liokry
