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

#include "liokry/catmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liokry/errors.hpp"

namespace liokry {

HermitianEigenDecomposition ordered_eigenbasis(const FockSpace& space, const KerrCatParams& p) {
  const auto eig = eig_hermitian(kerr_cat_hamiltonian(space, p).matrix());
  const int n = space.n_levels();
  HermitianEigenDecomposition out;
  out.eigenvalues.assign(eig.eigenvalues.rbegin(), eig.eigenvalues.rend());
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    ComplexVector v = eig.eigenvectors.col(n - 1 - k);
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    v *= std::conj(v(top)) / std::abs(v(top));
    out.eigenvectors.col(k) = v;
  }
  return out;
}

TraceZeroSampler::TraceZeroSampler(std::uint64_t seed, int n_pairs, SamplerBasis basis)
    : seed_(seed), n_pairs_(n_pairs), basis_(basis), engine_(seed) {
  if (n_pairs < 1) throw PreconditionError("TraceZeroSampler: n_pairs must be >= 1");
}

double TraceZeroSampler::uniform() {
  // 53 high bits of one 64-bit draw: identical on every platform, unlike std::uniform_real_distribution.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Superket TraceZeroSampler::sample(const FockSpace& space, const KerrCatParams& p) {
  std::vector<double> c(static_cast<std::size_t>(n_pairs_));
  for (double& x : c) x = uniform();
  return compose(space, p, c);
}

Superket TraceZeroSampler::compose(const FockSpace& space, const KerrCatParams& p,
                                   const std::vector<double>& coefficients) const {
  const int n = space.n_levels();
  if (2 * n_pairs_ > n) {
    std::ostringstream os;
    os << "TraceZeroSampler: " << n_pairs_ << " pairs need " << 2 * n_pairs_ << " eigenstates, only " << n
       << " available";
    throw PreconditionError(os.str());
  }
  if (coefficients.size() != static_cast<std::size_t>(n_pairs_))
    throw DimensionError("TraceZeroSampler: need one coefficient per pair");

  const auto basis = ordered_eigenbasis(space, p);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n_pairs_; ++j) {
    ComplexVector a = basis.eigenvectors.col(2 * j);
    ComplexVector b = basis.eigenvectors.col(2 * j + 1);
    if (basis_ == SamplerBasis::symmetry_broken) {
      const ComplexVector plus = r * (a + b);
      const ComplexVector minus = r * (a - b);
      a = plus;
      b = minus;
    }
    rho += coefficients[static_cast<std::size_t>(j)] * (a * a.adjoint() - b * b.adjoint());
  }
  rho -= (rho.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double norm = rho.norm();
  if (!(norm > 0.0)) throw PreconditionError("TraceZeroSampler: all coefficients vanished");
  return vectorize(space, rho / norm);
}

TraceZeroSampler TraceZeroSampler::clone_with_seed(std::uint64_t seed) const {
  return TraceZeroSampler(seed, n_pairs_, basis_);
}

Complex mean_field_rhs(const MeanFieldState& s, const KerrCatParams& p) {
  const Complex a = s.alpha;
  const Complex i(0.0, 1.0);
  return i * (p.delta * a + 2.0 * p.kerr * std::norm(a) * a - 2.0 * p.drive * std::conj(a)) - 0.5 * p.kappa_1ph * a;
}

std::vector<MeanFieldState> mean_field_evolve(Complex alpha0, const KerrCatParams& p, double t_final, double dt,
                                              int n_levels, int record_every) {
  if (!(dt > 0.0)) throw PreconditionError("mean_field_evolve: dt must be > 0");
  if (!(t_final > 0.0)) throw PreconditionError("mean_field_evolve: t_final must be > 0");
  if (record_every < 1) throw PreconditionError("mean_field_evolve: record_every must be >= 1");
  if (!std::isfinite(alpha0.real()) || !std::isfinite(alpha0.imag()))
    throw PreconditionError("mean_field_evolve: alpha0 must be finite");

  const auto steps = static_cast<long long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);
  const double limit = 10.0 * n_levels;
  auto f = [&p](Complex a) { return mean_field_rhs({a, 0.0}, p); };

  std::vector<MeanFieldState> out;
  out.reserve(static_cast<std::size_t>(steps / record_every + 2));
  Complex a = alpha0;
  out.push_back({a, 0.0});
  for (long long k = 1; k <= steps; ++k) {
    const Complex k1 = f(a);
    const Complex k2 = f(a + 0.5 * h * k1);
    const Complex k3 = f(a + 0.5 * h * k2);
    const Complex k4 = f(a + h * k3);
    a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(k) * h;
    if (!(std::norm(a) <= limit)) {
      std::ostringstream os;
      os << "mean_field_evolve: |alpha|^2 = " << std::norm(a) << " exceeds 10 N = " << limit << " at t = " << t
         << "; the N-level truncation is no longer meaningful";
      throw BlowUpError(os.str());
    }
    if (k % record_every == 0 || k == steps) out.push_back({a, t});
  }
  return out;
}

double mean_field_steady_photons(const KerrCatParams& p, const MeanFieldOptions& options) {
  p.validate();
  if (p.kappa_1ph == 0.0) {
    if (!(p.kerr > 0.0)) throw PreconditionError("mean_field_steady_photons: conservative branch needs kerr > 0");
    return std::max(0.0, (2.0 * p.drive - p.delta) / (2.0 * p.kerr));
  }
  const int stride = std::max(1, static_cast<int>(options.t_final / options.dt));
  const auto traj = mean_field_evolve(options.alpha0, p, options.t_final, options.dt, options.n_levels, stride);
  return std::norm(traj.back().alpha);
}

double landau_functional(Complex alpha, const KerrCatParams& p) {
  const double r2 = std::norm(alpha);
  return 0.25 * p.kerr * r2 * r2 - 0.5 * p.drive * r2;
}

OnsetEstimate cat_regime_onset(const std::vector<KerrCatParams>& p_grid, double fraction,
                               const MeanFieldOptions& options) {
  if (p_grid.empty()) throw PreconditionError("cat_regime_onset: empty parameter grid");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw PreconditionError("cat_regime_onset: fraction must lie in (0, 1]");
  OnsetEstimate est;
  est.rule_of_thumb = 0.25 * p_grid.front().kappa_1ph;
  for (const auto& p : p_grid) {
    if (!(p.kerr > 0.0)) throw PreconditionError("cat_regime_onset: kerr must be > 0");
    const double photons = mean_field_steady_photons(p, options);
    est.drives.push_back(p.drive);
    est.steady_photons.push_back(photons);
    if (!est.onset_g && p.drive > 0.0 && photons > fraction * p.drive / p.kerr) est.onset_g = p.drive;
  }
  return est;
}

}  // namespace liokry
