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

// Wigner quasi-probability W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(-alpha)]
// with alpha = x + i p. The vacuum peaks at 2/pi.

#pragma once

#include <Eigen/Dense>

#include "liokry/numerics.hpp"

namespace liokry {

struct PhaseSpaceGrid {
  int x_points = 121;
  int p_points = 121;
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;

  void validate() const;
  double x(int i) const { return x_min + (x_max - x_min) * i / (x_points - 1); }
  double p(int j) const { return p_min + (p_max - p_min) * j / (p_points - 1); }
  double dx() const { return (x_max - x_min) / (x_points - 1); }
  double dp() const { return (p_max - p_min) / (p_points - 1); }
};

struct WignerMap {
  PhaseSpaceGrid grid;
  Eigen::MatrixXd values;       // values(i, j) at (x(i), p(j))
  double max_imag_leakage = 0;  // largest |Im| discarded
};

/// Requires rho Hermitian to 1e-10 relative. Warns "wigner-coverage" when the
/// grid does not enclose the state's photon-number support.
WignerMap wigner_of(const ComplexMatrix& rho, const PhaseSpaceGrid& grid = {});

/// Trapezoidal integral of the map over its grid.
double wigner_integral(const WignerMap& map);

struct PhaseSpacePoint {
  double x = 0.0;
  double p = 0.0;
  double value = 0.0;
};

struct WignerExtrema {
  PhaseSpacePoint maximum;
  PhaseSpacePoint minimum;
};

WignerExtrema wigner_extrema(const WignerMap& map);

}  // namespace liokry
