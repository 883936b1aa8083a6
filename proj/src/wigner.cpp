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

#include "liokry/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liokry/diagnostics.hpp"
#include "liokry/errors.hpp"

namespace liokry {
namespace {

constexpr double kHermitianRtol = 1e-10;
constexpr double kCoverageMargin = 1.5;

// Photon number weighted by |rho_mn|^2; meaningful for traceless operators too.
double support_photons(const ComplexMatrix& rho) {
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index m = 0; m < rho.rows(); ++m)
    for (Eigen::Index n = 0; n < rho.cols(); ++n) {
      const double w = std::norm(rho(m, n));
      num += 0.5 * static_cast<double>(m + n) * w;
      den += w;
    }
  return den > 0.0 ? num / den : 0.0;
}

void check_coverage(const ComplexMatrix& rho, const PhaseSpaceGrid& grid) {
  const double reach = std::sqrt(support_photons(rho)) + kCoverageMargin;
  const double half_width = std::min({-grid.x_min, grid.x_max, -grid.p_min, grid.p_max});
  if (half_width < reach) {
    std::ostringstream os;
    os << "grid half-width " << half_width << " is smaller than the state support radius " << reach
       << " estimated from <a^dag a>";
    warn("wigner-coverage", os.str());
  }
}

// Sum over the Laguerre ladder X_mn(alpha) of the displaced-parity matrix
// elements, exact for any |alpha| (no truncated displacement).
Complex displaced_parity_sum(const ComplexMatrix& rho, Complex alpha, std::vector<Complex>& ladder) {
  const auto n_levels = static_cast<int>(rho.rows());
  const Complex a2 = 2.0 * alpha;
  const Complex a2c = std::conj(a2);
  ladder[0] = std::exp(-2.0 * std::norm(alpha));
  Complex total = rho(0, 0) * ladder[0];
  for (int n = 1; n < n_levels; ++n) {
    ladder[n] = a2 * ladder[n - 1] / std::sqrt(static_cast<double>(n));
    total += rho(0, n) * ladder[n] + rho(n, 0) * std::conj(ladder[n]);
  }
  for (int m = 1; m < n_levels; ++m) {
    const double sm = std::sqrt(static_cast<double>(m));
    Complex prev_row = ladder[m];
    ladder[m] = (a2c * prev_row - sm * ladder[m - 1]) / sm;
    total += rho(m, m) * ladder[m];
    for (int n = m + 1; n < n_levels; ++n) {
      const Complex next = (a2 * ladder[n - 1] - sm * prev_row) / std::sqrt(static_cast<double>(n));
      prev_row = ladder[n];
      ladder[n] = next;
      total += rho(m, n) * ladder[n] + rho(n, m) * std::conj(ladder[n]);
    }
  }
  return total;
}

}  // namespace

void PhaseSpaceGrid::validate() const {
  if (x_points < 2 || p_points < 2) throw PreconditionError("PhaseSpaceGrid: need at least 2 points per axis");
  if (!(x_max > x_min) || !(p_max > p_min)) throw PreconditionError("PhaseSpaceGrid: ranges must be nonempty");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(p_min) || !std::isfinite(p_max))
    throw PreconditionError("PhaseSpaceGrid: ranges must be finite");
}

WignerMap wigner_of(const ComplexMatrix& rho, const PhaseSpaceGrid& grid) {
  grid.validate();
  if (rho.rows() != rho.cols() || rho.rows() < 1) throw DimensionError("wigner_of: rho must be square");
  const double scale = rho.norm();
  if ((rho - rho.adjoint()).norm() > kHermitianRtol * scale)
    throw PreconditionError("wigner_of: rho must be Hermitian (Hermitise eigenstate reconstructions first)");
  check_coverage(rho, grid);

  WignerMap map;
  map.grid = grid;
  map.values.resize(grid.x_points, grid.p_points);
  std::vector<Complex> ladder(static_cast<std::size_t>(rho.rows()));
  const double prefactor = 2.0 / std::numbers::pi;
  for (int i = 0; i < grid.x_points; ++i)
    for (int j = 0; j < grid.p_points; ++j) {
      const Complex w = prefactor * displaced_parity_sum(rho, {grid.x(i), grid.p(j)}, ladder);
      map.values(i, j) = w.real();
      map.max_imag_leakage = std::max(map.max_imag_leakage, std::abs(w.imag()));
    }
  if (!map.values.allFinite()) throw Error("wigner_of: non-finite values");
  return map;
}

double wigner_integral(const WignerMap& map) {
  const auto& g = map.grid;
  double sum = 0.0;
  for (int i = 0; i < g.x_points; ++i) {
    const double wx = (i == 0 || i == g.x_points - 1) ? 0.5 : 1.0;
    for (int j = 0; j < g.p_points; ++j) {
      const double wp = (j == 0 || j == g.p_points - 1) ? 0.5 : 1.0;
      sum += wx * wp * map.values(i, j);
    }
  }
  return sum * g.dx() * g.dp();
}

WignerExtrema wigner_extrema(const WignerMap& map) {
  Eigen::Index imax = 0, jmax = 0, imin = 0, jmin = 0;
  const double vmax = map.values.maxCoeff(&imax, &jmax);
  const double vmin = map.values.minCoeff(&imin, &jmin);
  const auto& g = map.grid;
  return {{g.x(static_cast<int>(imax)), g.p(static_cast<int>(jmax)), vmax},
          {g.x(static_cast<int>(imin)), g.p(static_cast<int>(jmin)), vmin}};
}

}  // namespace liokry
