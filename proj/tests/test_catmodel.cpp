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

#include <cmath>

#include "doctest.h"
#include "liokry/catmodel.hpp"
#include "liokry/errors.hpp"
#include "test_support.hpp"

using namespace liokry;

namespace {

KerrCatParams paper_params(double g) { return {.delta = 0.2, .kerr = 0.05, .drive = g, .kappa_1ph = 1.0}; }

// Real 2x2 Jacobian of the mean-field flow in (Re alpha, Im alpha), by central differences.
Eigen::Matrix2d numeric_jacobian(Complex alpha, const KerrCatParams& p) {
  const double h = 1e-6;
  Eigen::Matrix2d j;
  const Complex steps[2] = {Complex(h, 0.0), Complex(0.0, h)};
  for (int c = 0; c < 2; ++c) {
    const Complex d = (mean_field_rhs({alpha + steps[c], 0.0}, p) - mean_field_rhs({alpha - steps[c], 0.0}, p)) / (2 * h);
    j(0, c) = d.real();
    j(1, c) = d.imag();
  }
  return j;
}

double max_growth_rate(const Eigen::Matrix2d& j) {
  return Eigen::EigenSolver<Eigen::Matrix2d>(j).eigenvalues().real().maxCoeff();
}

// Newton iteration on rhs(alpha) = 0.
Complex newton_fixed_point(Complex alpha, const KerrCatParams& p) {
  for (int it = 0; it < 50; ++it) {
    const Complex f = mean_field_rhs({alpha, 0.0}, p);
    if (std::abs(f) < 1e-14) break;
    const Eigen::Vector2d step = numeric_jacobian(alpha, p).lu().solve(Eigen::Vector2d(f.real(), f.imag()));
    alpha -= Complex(step(0), step(1));
  }
  return alpha;
}

std::vector<KerrCatParams> drive_grid(double kappa, double delta, double g_lo, double g_hi, int steps) {
  std::vector<KerrCatParams> grid;
  for (int k = 0; k < steps; ++k) {
    const double g = g_lo + (g_hi - g_lo) * k / (steps - 1);
    grid.push_back({.delta = delta, .kerr = 0.05, .drive = g, .kappa_1ph = kappa});
  }
  return grid;
}

}  // namespace

TEST_SUITE("catmodel") {
  TEST_CASE("ordered eigenbasis is orthonormal, descending and phase fixed") {
    const FockSpace space(12);
    const auto basis = ordered_eigenbasis(space, paper_params(0.4));
    const ComplexMatrix& v = basis.eigenvectors;
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(12, 12)).norm() <= 1e-12);
    for (std::size_t k = 1; k < basis.eigenvalues.size(); ++k) CHECK(basis.eigenvalues[k] <= basis.eigenvalues[k - 1]);
    const ComplexMatrix h = kerr_cat_hamiltonian(space, paper_params(0.4)).matrix();
    for (int k = 0; k < 12; ++k) {
      CHECK((h * v.col(k) - basis.eigenvalues[static_cast<std::size_t>(k)] * v.col(k)).norm() <= 1e-10 * h.norm());
      Eigen::Index top = 0;
      v.col(k).cwiseAbs().maxCoeff(&top);
      CHECK(v(top, k).imag() == doctest::Approx(0.0));
      CHECK(v(top, k).real() > 0.0);
    }
  }

  TEST_CASE("sampler outputs are Hermitian, traceless and unit norm") {
    const FockSpace space(16);
    for (auto mode : {SamplerBasis::symmetry_broken, SamplerBasis::eigenstates}) {
      TraceZeroSampler sampler(77, 4, mode);
      for (int draw = 0; draw < 10; ++draw) {
        const Superket rho = sampler.sample(space, paper_params(0.3));
        const ComplexMatrix m = devectorize(rho);
        CHECK(std::abs(inner(identity_superket(space), rho)) <= 1e-14);
        CHECK((m - m.adjoint()).norm() == 0.0);
        CHECK(rho.norm() == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("single pair gives the normalised projector difference") {
    const FockSpace space(8);
    const KerrCatParams p = paper_params(0.3);
    const TraceZeroSampler sampler(1, 1, SamplerBasis::eigenstates);
    const auto basis = ordered_eigenbasis(space, p);
    const ComplexVector psi0 = basis.eigenvectors.col(0);
    const ComplexVector psi1 = basis.eigenvectors.col(1);
    const ComplexMatrix expected = (psi0 * psi0.adjoint() - psi1 * psi1.adjoint()) / std::sqrt(2.0);
    CHECK((devectorize(sampler.compose(space, p, {1.0})) - expected).norm() <= 1e-14);
    CHECK_THROWS_AS(sampler.compose(space, p, {1.0, 2.0}), DimensionError);
  }

  TEST_CASE("sampler is deterministic per seed and clones restart the stream") {
    const FockSpace space(10);
    const KerrCatParams p = paper_params(0.5);
    TraceZeroSampler first(2024), second(2024), other(2025);
    const Superket a = first.sample(space, p);
    CHECK(a.vec() == second.sample(space, p).vec());
    CHECK(a.vec() != other.sample(space, p).vec());
    CHECK(first.sample(space, p).vec() != a.vec());
    TraceZeroSampler clone = other.clone_with_seed(2024);
    CHECK(clone.sample(space, p).vec() == a.vec());
    CHECK(clone.n_pairs() == other.n_pairs());
  }

  TEST_CASE("sampler rejects more pairs than eigenstates") {
    TraceZeroSampler sampler(1, 3);
    CHECK_THROWS_AS(sampler.sample(FockSpace(5), paper_params(0.2)), PreconditionError);
    CHECK_NOTHROW(sampler.sample(FockSpace(6), paper_params(0.2)));
    CHECK_THROWS_AS(TraceZeroSampler(1, 0), PreconditionError);
  }

  TEST_CASE("parity-even samples carry no weight on a parity-odd slow mode") {
    const FockSpace space(16);
    const KerrCatParams p = paper_params(0.4);
    OracleOptions options;
    options.left_eigenvectors = true;
    const auto spectrum = full_spectrum_oracle(kerr_cat_liouvillian(space, p), options);
    const ComplexMatrix pi = parity(space).matrix();
    const ComplexMatrix mode = devectorize(slow_mode(spectrum, space));
    REQUIRE((pi * mode * pi + mode).norm() <= 1e-8 * mode.norm());
    const ComplexVector left = spectrum.left_superkets->col(static_cast<Eigen::Index>(spectrum.slow_mode_index));
    TraceZeroSampler even(5, 4, SamplerBasis::eigenstates), broken(5, 4, SamplerBasis::symmetry_broken);
    for (int draw = 0; draw < 5; ++draw) {
      CHECK(std::abs(left.dot(even.sample(space, p).vec())) <= 1e-10);
      CHECK(std::abs(left.dot(broken.sample(space, p).vec())) >= 1e-3);
    }
  }

  TEST_CASE("mean-field right-hand side") {
    const KerrCatParams lossless{.delta = 0.0, .kerr = 0.05, .drive = 0.5, .kappa_1ph = 0.0};
    CHECK(mean_field_rhs({0.0, 0.0}, paper_params(0.5)) == Complex(0.0, 0.0));
    CHECK(std::abs(mean_field_rhs({std::sqrt(0.5 / 0.05), 0.0}, lossless)) <= 1e-14);
    // Direct transcription check at an arbitrary point.
    const Complex a(0.3, -0.7);
    const KerrCatParams p = paper_params(0.4);
    const Complex expected = Complex(0, 1) * (p.delta * a + 2 * p.kerr * std::norm(a) * a - 2 * p.drive * std::conj(a)) -
                             0.5 * p.kappa_1ph * a;
    CHECK(std::abs(mean_field_rhs({a, 1.0}, p) - expected) <= 1e-15);
  }

  TEST_CASE("origin loses stability above g = kappa/4 at zero detuning") {
    for (double kappa : {0.5, 1.0, 2.0}) {
      for (double ratio : {0.5, 0.9, 1.1, 2.0}) {
        const double g = ratio * kappa / 4.0;
        const KerrCatParams p{.delta = 0.0, .kerr = 0.05, .drive = g, .kappa_1ph = kappa};
        const Eigen::Matrix2d j = numeric_jacobian(0.0, p);
        // Closed form: [[-k/2, -2g], [-2g, -k/2]] with eigenvalues -k/2 +- 2g.
        Eigen::Matrix2d closed;
        closed << -kappa / 2, -2 * g, -2 * g, -kappa / 2;
        CHECK((j - closed).norm() <= 1e-8);
        CHECK((max_growth_rate(j) > 0.0) == (ratio > 1.0));
      }
    }
  }

  TEST_CASE("undriven lossy evolution decays to the origin") {
    const KerrCatParams p{.delta = 0.2, .kerr = 0.05, .drive = 0.0, .kappa_1ph = 1.0};
    for (Complex a0 : {Complex(0.1, 0.0), Complex(2.0, -1.0), Complex(0.0, 3.0)}) {
      const auto traj = mean_field_evolve(a0, p, 40.0, 1e-3, 30, 1000);
      CHECK(traj.front().alpha == a0);
      CHECK(traj.back().time == doctest::Approx(40.0));
      CHECK(std::abs(traj.back().alpha) <= std::abs(a0) * std::exp(-0.5 * 40.0) * 1.01);
    }
  }

  TEST_CASE("RK4 matches the closed-form linear solution") {
    // K = g = 0: alpha(t) = alpha0 exp((i delta - kappa/2) t).
    const KerrCatParams p{.delta = 0.7, .kerr = 0.0, .drive = 0.0, .kappa_1ph = 0.4};
    const Complex a0(1.0, 0.5);
    const auto traj = mean_field_evolve(a0, p, 5.0, 1e-2);
    const Complex exact = a0 * std::exp(Complex(-0.2, 0.7) * 5.0);
    CHECK(std::abs(traj.back().alpha - exact) <= 1e-9);
    CHECK(traj.size() == 501);
  }

  TEST_CASE("detuning renormalises the steady amplitude; Newton agrees with the integrator") {
    const KerrCatParams p = paper_params(0.5);
    const double photons = mean_field_steady_photons(p);
    CHECK(std::abs(photons - 0.5 / 0.05) > 0.05);
    const auto traj = mean_field_evolve(0.1, p, 400.0, 1e-3, 30, 400000);
    const Complex root = newton_fixed_point(traj.back().alpha, p);
    CHECK(std::abs(mean_field_rhs({root, 0.0}, p)) <= 1e-12);
    CHECK(std::norm(root) == doctest::Approx(photons).epsilon(1e-6));
    CHECK(max_growth_rate(numeric_jacobian(root, p)) < 0.0);
  }

  TEST_CASE("flipping the initial condition flips the trajectory") {
    const KerrCatParams p = paper_params(0.6);
    const auto plus = mean_field_evolve(Complex(0.2, 0.1), p, 50.0, 1e-3, 30, 100);
    const auto minus = mean_field_evolve(Complex(-0.2, -0.1), p, 50.0, 1e-3, 30, 100);
    REQUIRE(plus.size() == minus.size());
    for (std::size_t k = 0; k < plus.size(); ++k) CHECK(std::abs(plus[k].alpha + minus[k].alpha) <= 1e-12);
  }

  TEST_CASE("mean-field evolution guards its inputs and reports blow-up") {
    const KerrCatParams p = paper_params(0.3);
    CHECK_THROWS_AS(mean_field_evolve(0.1, p, 1.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(mean_field_evolve(0.1, p, -1.0, 1e-3), PreconditionError);
    CHECK_THROWS_AS(mean_field_evolve(Complex(NAN, 0.0), p, 1.0, 1e-3), PreconditionError);
    // Without Kerr saturation the parametric drive grows without bound.
    const KerrCatParams runaway{.delta = 0.0, .kerr = 0.0, .drive = 1.0, .kappa_1ph = 0.0};
    CHECK_THROWS_AS(mean_field_evolve(0.1, runaway, 100.0, 1e-3, 10), BlowUpError);
  }

  TEST_CASE("lossless steady photons follow the fixed-point branch") {
    CHECK(mean_field_steady_photons({.delta = 0.0, .kerr = 0.05, .drive = 0.5, .kappa_1ph = 0.0}) ==
          doctest::Approx(10.0));
    CHECK(mean_field_steady_photons({.delta = 0.2, .kerr = 0.05, .drive = 0.5, .kappa_1ph = 0.0}) ==
          doctest::Approx(8.0));
    CHECK(mean_field_steady_photons({.delta = 0.2, .kerr = 0.05, .drive = 0.05, .kappa_1ph = 0.0}) == 0.0);
  }

  TEST_CASE("Landau functional") {
    const KerrCatParams p{.delta = 0.0, .kerr = 0.05, .drive = 0.5, .kappa_1ph = 1.0};
    CHECK(landau_functional(0.0, p) == 0.0);
    const double r_star = std::sqrt(p.drive / p.kerr);
    CHECK(landau_functional(r_star, p) == doctest::Approx(-p.drive * p.drive / (4 * p.kerr)));
    for (double r : {0.5 * r_star, 0.9 * r_star, 1.1 * r_star, 2.0 * r_star})
      CHECK(landau_functional(r, p) > landau_functional(r_star, p));
    // Minimiser magnitude matches the cat amplitude of the fock constructions.
    CHECK(std::norm(Complex(r_star, 0.0)) == doctest::Approx(p.drive / p.kerr));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    for (int draw = 0; draw < 20; ++draw) {
      const Complex a(normal(rng), normal(rng));
      CHECK(landau_functional(a, p) == landau_functional(-a, p));
    }
  }

  TEST_CASE("cat regime onset sits near kappa/4") {
    const auto est = cat_regime_onset(drive_grid(1.0, 0.0, 0.05, 1.0, 96));
    REQUIRE(est.onset_g.has_value());
    CHECK(est.rule_of_thumb == doctest::Approx(0.25));
    CHECK(*est.onset_g >= 0.15);
    CHECK(*est.onset_g <= 0.35);
    CHECK(std::abs(*est.onset_g - 0.25) <= 0.2 * 0.25);
    CHECK(est.drives.size() == 96);
    CHECK(est.steady_photons.size() == 96);
  }

  TEST_CASE("without loss any drive breaks the symmetry") {
    const auto grid = drive_grid(0.0, 0.0, 0.01, 0.5, 10);
    const auto est = cat_regime_onset(grid);
    REQUIRE(est.onset_g.has_value());
    CHECK(*est.onset_g == doctest::Approx(grid.front().drive));
  }

  TEST_CASE("onset is not found below threshold and bad grids are rejected") {
    const auto est = cat_regime_onset(drive_grid(1.0, 0.0, 0.02, 0.2, 10));
    CHECK_FALSE(est.onset_g.has_value());
    CHECK_THROWS_AS(cat_regime_onset({}), PreconditionError);
    CHECK_THROWS_AS(cat_regime_onset(drive_grid(1.0, 0.0, 0.1, 0.2, 3), 0.0), PreconditionError);
    KerrCatParams no_kerr = paper_params(0.3);
    no_kerr.kerr = 0.0;
    CHECK_THROWS_AS(cat_regime_onset({no_kerr}), PreconditionError);
  }
}
