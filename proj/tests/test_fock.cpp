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
#include "liokry/errors.hpp"
#include "liokry/fock.hpp"
#include "test_support.hpp"

using namespace liokry;

namespace {

KerrCatParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {.delta = 2.0 * u(rng) - 1.0, .kerr = 0.2 * u(rng), .drive = 2.0 * u(rng), .kappa_1ph = u(rng)};
}

double norm_of(const FockOperator& op) { return op.matrix().norm(); }

}  // namespace

TEST_SUITE("fock") {
  TEST_CASE("destroy has sqrt(n) on the superdiagonal") {
    const auto a = destroy(FockSpace(3)).matrix();
    CHECK(a(0, 1) == Complex(1.0, 0.0));
    CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(a.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));
  }

  TEST_CASE("destroy annihilates the vacuum and a^dag a counts photons") {
    const FockSpace space(6);
    const auto a = destroy(space).matrix();
    ComplexVector vac = ComplexVector::Zero(6);
    vac(0) = 1.0;
    CHECK((a * vac).norm() == 0.0);
    const ComplexMatrix n_op = a.adjoint() * a;
    for (int n = 0; n < 5; ++n) {
      ComplexVector ket = ComplexVector::Zero(6);
      ket(n) = 1.0;
      CHECK((n_op * ket - static_cast<double>(n) * ket).norm() < 1e-14);
    }
    CHECK((number(space).matrix() - n_op).norm() < 1e-14);
  }

  TEST_CASE("commutator [a, a^dag] is the identity except for the truncation corner") {
    const int n = 7;
    const FockSpace space(n);
    const auto a = destroy(space).matrix();
    const ComplexMatrix c = a * a.adjoint() - a.adjoint() * a;
    for (int k = 0; k < n - 1; ++k) CHECK(std::abs(c(k, k) - 1.0) < 1e-14);
    CHECK(std::abs(c(n - 1, n - 1) + static_cast<double>(n - 1)) < 1e-14);
  }

  TEST_CASE("parity is diag((-1)^n), squares to identity and anticommutes with a") {
    const auto p3 = parity(FockSpace(3)).matrix();
    CHECK(p3(0, 0) == Complex(1.0));
    CHECK(p3(1, 1) == Complex(-1.0));
    CHECK(p3(2, 2) == Complex(1.0));
    const FockSpace space(30);
    const auto pi = parity(space);
    const auto a = destroy(space);
    CHECK(((pi * pi).matrix() - identity(space).matrix()).norm() == 0.0);
    CHECK(norm_of(pi * a + a * pi) <= 1e-14 * norm_of(a));
  }

  TEST_CASE("kerr_cat_hamiltonian matrix elements") {
    const FockSpace space(8);
    const auto h = kerr_cat_hamiltonian(space, {.delta = 1.0, .kerr = 0.0, .drive = 0.0, .kappa_1ph = 0.0}).matrix();
    ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
    for (int k = 0; k < 8; ++k) expected(k, k) = static_cast<double>(k);
    CHECK((h - expected).norm() < 1e-14);
    const double g = 0.37;
    const auto hg = kerr_cat_hamiltonian(space, {.delta = 0.0, .kerr = 0.0, .drive = g, .kappa_1ph = 0.0}).matrix();
    CHECK(std::abs(hg(2, 0) - g * std::sqrt(2.0)) < 1e-15);
  }

  TEST_CASE("kerr_cat_hamiltonian is Hermitian and parity symmetric for random parameters") {
    std::mt19937_64 rng(41);
    const FockSpace space(30);
    const auto pi = parity(space);
    for (int draw = 0; draw < 50; ++draw) {
      const auto h = kerr_cat_hamiltonian(space, random_params(rng));
      CHECK((h.matrix() - h.matrix().adjoint()).norm() <= 1e-13 * norm_of(h));
      CHECK(norm_of(pi * h - h * pi) <= 1e-13 * norm_of(h));
    }
  }

  TEST_CASE("factorised form -K(a^dag2 - g/K)(a^2 - g/K) + g^2/K agrees at zero detuning") {
    const int n = 20;
    const FockSpace space(n);
    const double kerr = 0.05, g = 0.4;
    const auto h = kerr_cat_hamiltonian(space, {.delta = 0.0, .kerr = kerr, .drive = g, .kappa_1ph = 1.0}).matrix();
    const auto a = destroy(space).matrix();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix b_dag = a.adjoint() * a.adjoint() - (g / kerr) * id;
    const ComplexMatrix b = a * a - (g / kerr) * id;
    const ComplexMatrix factorised = -kerr * b_dag * b + (g * g / kerr) * id;
    CHECK((h - factorised).topLeftCorner(n - 2, n - 2).norm() <= 1e-12 * h.norm());
  }

  TEST_CASE("KerrCatParams validation") {
    CHECK_THROWS_AS(KerrCatParams({.delta = 0, .kerr = -1, .drive = 0, .kappa_1ph = 1}).validate(), PreconditionError);
    CHECK_THROWS_AS(KerrCatParams({.delta = 0, .kerr = 1, .drive = 0, .kappa_1ph = -1}).validate(), PreconditionError);
    CHECK_THROWS_AS(FockSpace(1), PreconditionError);
    CHECK_THROWS_AS(FockOperator(FockSpace(3), ComplexMatrix::Zero(2, 2)), DimensionError);
  }

  TEST_CASE("coherent states") {
    const FockSpace space(30);
    const ComplexVector vac = coherent_state(space, 0.0);
    CHECK(std::abs(vac(0) - 1.0) < 1e-15);
    CHECK(vac.tail(29).norm() == 0.0);

    const Complex alpha(1.2, -1.6);  // |alpha|^2 = 4
    const ComplexVector ket = coherent_state(space, alpha);
    const Complex mean = ket.dot(destroy(space).matrix() * ket);
    CHECK(std::abs(mean - alpha) <= 1e-8);

    // Closed form <-b|b> = exp(-2|b|^2) for real b.
    const double b = std::sqrt(2.0);
    const Complex overlap = coherent_state(space, -b).dot(coherent_state(space, b));
    CHECK(std::abs(overlap - std::exp(-2.0 * b * b)) <= 1e-8);
  }

  TEST_CASE("coherent_state warns when the truncation tail is heavy") {
    liokry::testing::WarningCapture capture;
    (void)coherent_state(FockSpace(30), 2.0);
    CHECK_FALSE(capture.saw("coherent-tail"));
    (void)coherent_state(FockSpace(30), 4.5);
    CHECK(capture.saw("coherent-tail"));
  }

  TEST_CASE("cat states have definite parity and the closed-form normalisation") {
    const FockSpace space(30);
    const auto pi = parity(space).matrix();
    CHECK(std::abs(cat_state(space, 0.0, +1)(0) - 1.0) < 1e-15);
    CHECK_THROWS_AS(cat_state(space, 0.0, -1), PreconditionError);
    const double alpha = 1.5;
    for (int sign : {+1, -1}) {
      const ComplexVector c = cat_state(space, alpha, sign);
      CHECK((pi * c - static_cast<double>(sign) * c).norm() <= 1e-12);
      // N_pm = [2(1 pm e^{-2|a|^2})]^{-1/2} applied to |a> pm |-a>.
      const ComplexVector plus = coherent_state(space, alpha);
      const ComplexVector minus = coherent_state(space, -alpha);
      const double n_pm = 1.0 / std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * alpha * alpha)));
      const ComplexVector reference = n_pm * (plus + static_cast<double>(sign) * minus);
      CHECK(std::abs(reference.norm() - 1.0) <= 1e-8);
      CHECK((c - reference).norm() <= 1e-8);
    }
  }

  TEST_CASE("logical operators act as Z and X on coherent states") {
    const FockSpace space(30);
    const double alpha = 2.0;
    const auto [z, x] = logical_operators(space, alpha);
    const ComplexVector plus = coherent_state(space, alpha);
    const ComplexVector minus = coherent_state(space, -alpha);
    CHECK((z.matrix() * plus - plus).norm() <= 1e-6);
    CHECK((z.matrix() * minus + minus).norm() <= 1e-6);
    CHECK((x.matrix() * plus - minus).norm() <= 1e-8);
    CHECK((x.matrix() * minus - plus).norm() <= 1e-8);
    CHECK(norm_of(x * z + z * x) <= 1e-13 * norm_of(destroy(space)) / alpha);
    CHECK_THROWS_AS(logical_operators(space, 0.0), PreconditionError);
  }
}
