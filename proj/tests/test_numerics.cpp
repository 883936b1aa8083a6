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

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "liokry/errors.hpp"
#include "liokry/fock.hpp"
#include "liokry/numerics.hpp"
#include "test_support.hpp"

using namespace liokry;
using liokry::testing::random_hermitian;
using liokry::testing::random_matrix;

namespace {

bool contains(const std::vector<Complex>& values, Complex target, double tol) {
  return std::any_of(values.begin(), values.end(), [&](Complex v) { return std::abs(v - target) <= tol; });
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// det(lambda I - A) = sum_k c[k] lambda^(n-k), c[0] = 1.
std::vector<Complex> characteristic_polynomial(const ComplexMatrix& a) {
  const auto n = a.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  c[0] = 1.0;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(k - 1)] * ComplexMatrix::Identity(n, n);
    c[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

Complex evaluate(const std::vector<Complex>& c, Complex x) {
  Complex acc = 0.0;
  for (const Complex coeff : c) acc = acc * x + coeff;
  return acc;
}

Complex evaluate_derivative(const std::vector<Complex>& c, Complex x) {
  Complex acc = 0.0;
  const auto n = c.size() - 1;
  for (std::size_t k = 0; k < n; ++k) acc = acc * x + c[k] * static_cast<double>(n - k);
  return acc;
}

// Amplitude damping on a qubit, assembled by hand in the row-major flattening.
ComplexMatrix damped_qubit(double kappa) {
  ComplexMatrix l = ComplexMatrix::Zero(4, 4);
  // rho00' = kappa rho11, rho11' = -kappa rho11, coherences decay at kappa/2.
  l(0, 3) = kappa;
  l(3, 3) = -kappa;
  l(1, 1) = -kappa / 2;
  l(2, 2) = -kappa / 2;
  return l;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("eig_general returns the diagonal of a diagonal matrix") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = Complex(0.0, 2.0);
    a(2, 2) = -3.0;
    const auto eig = eig_general(a);
    REQUIRE(eig.eigenvalues.size() == 3);
    CHECK(contains(eig.eigenvalues, 1.0, 1e-14));
    CHECK(contains(eig.eigenvalues, Complex(0.0, 2.0), 1e-14));
    CHECK(contains(eig.eigenvalues, -3.0, 1e-14));
  }

  TEST_CASE("eig_general handles a defective Jordan block") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    const auto eig = eig_general(a);
    for (const Complex v : eig.eigenvalues) CHECK(std::abs(v) < 1e-7);
    for (int k = 0; k < 2; ++k) {
      const ComplexVector v = eig.right_eigenvectors.col(k);
      CHECK((a * v - eig.eigenvalues[static_cast<std::size_t>(k)] * v).norm() <= 1e-10 * a.norm() * v.norm());
    }
  }

  TEST_CASE("eig_general meets the residual contract on random matrices") {
    std::mt19937_64 rng(11);
    const ComplexMatrix a = random_matrix(40, 40, rng);
    const auto eig = eig_general(a, {}, EigenvectorSides::both);
    REQUIRE(eig.left_eigenvectors.has_value());
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
      const ComplexVector v = eig.right_eigenvectors.col(static_cast<Eigen::Index>(k));
      const ComplexVector u = eig.left_eigenvectors->col(static_cast<Eigen::Index>(k));
      CHECK((a * v - eig.eigenvalues[k] * v).norm() <= 1e-10 * a.norm() * v.norm());
      CHECK((u.adjoint() * a - eig.eigenvalues[k] * u.adjoint()).norm() <= 1e-10 * a.norm() * u.norm());
    }
  }

  TEST_CASE("eig_general rejects non-square input") {
    CHECK_THROWS_AS(eig_general(ComplexMatrix::Zero(2, 3)), DimensionError);
  }

  TEST_CASE("damped qubit spectrum matches the roots of its characteristic polynomial") {
    const double kappa = 0.7;
    const ComplexMatrix l = damped_qubit(kappa);
    const auto c = characteristic_polynomial(l);
    // Independent reference: 0, -kappa are simple roots, -kappa/2 is a double root.
    CHECK(std::abs(evaluate(c, 0.0)) < 1e-14);
    CHECK(std::abs(evaluate(c, -kappa)) < 1e-14);
    CHECK(std::abs(evaluate(c, -kappa / 2)) < 1e-14);
    CHECK(std::abs(evaluate_derivative(c, -kappa / 2)) < 1e-14);
    const auto eig = eig_general(l);
    std::vector<double> re;
    for (const Complex v : eig.eigenvalues) {
      CHECK(std::abs(evaluate(c, v)) < 1e-12);
      CHECK(std::abs(v.imag()) < 1e-14);
      re.push_back(v.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-kappa).epsilon(1e-12));
    CHECK(re[1] == doctest::Approx(-kappa / 2).epsilon(1e-12));
    CHECK(re[2] == doctest::Approx(-kappa / 2).epsilon(1e-12));
    CHECK(std::abs(re[3]) < 1e-14);
  }

  TEST_CASE("eig_hermitian sorts eigenvalues ascending") {
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    const auto eig = eig_hermitian(a);
    CHECK(eig.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});
  }

  TEST_CASE("eig_hermitian of the Pauli-x analog") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 1) = a(1, 0) = 1.0;
    const auto eig = eig_hermitian(a);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
  }

  TEST_CASE("eig_hermitian of a pure Kerr Hamiltonian is -K n(n-1)") {
    const FockSpace space(4);
    const auto h = kerr_cat_hamiltonian(space, {.delta = 0.0, .kerr = 1.0, .drive = 0.0, .kappa_1ph = 0.0});
    const auto eig = eig_hermitian(h.matrix());
    const std::vector<double> expected{-6.0, -2.0, 0.0, 0.0};
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(eig.eigenvalues[k] - expected[k]) < 1e-13);
  }

  TEST_CASE("eig_hermitian returns orthonormal eigenvectors and rejects non-Hermitian input") {
    std::mt19937_64 rng(3);
    const ComplexMatrix h = random_hermitian(25, rng);
    const auto eig = eig_hermitian(h);
    const auto n = h.rows();
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - ComplexMatrix::Identity(n, n)).norm() <= 1e-10);
    ComplexMatrix bad = h;
    bad(0, 1) += 1e-3;
    CHECK_THROWS_AS(eig_hermitian(bad), PreconditionError);
  }

  TEST_CASE("svd of identity and of a rank-one outer product") {
    const auto id = svd(ComplexMatrix::Identity(3, 3));
    for (double s : id.singular_values) CHECK(s == doctest::Approx(1.0));
    std::mt19937_64 rng(5);
    ComplexVector u = random_matrix(6, 1, rng).col(0);
    ComplexVector v = random_matrix(4, 1, rng).col(0);
    u.normalize();
    v.normalize();
    const auto sv = singular_values(u * v.adjoint());
    CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t k = 1; k < sv.size(); ++k) CHECK(sv[k] < 1e-15);
  }

  TEST_CASE("svd reconstructs its input and sorts singular values descending") {
    std::mt19937_64 rng(9);
    const ComplexMatrix a = random_matrix(30, 12, rng);
    const auto f = svd(a);
    CHECK(std::is_sorted(f.singular_values.rbegin(), f.singular_values.rend()));
    Eigen::VectorXd s(static_cast<Eigen::Index>(f.singular_values.size()));
    for (std::size_t k = 0; k < f.singular_values.size(); ++k) s(static_cast<Eigen::Index>(k)) = f.singular_values[k];
    const ComplexMatrix rebuilt = f.left_vectors * s.asDiagonal() * f.right_vectors.adjoint();
    CHECK((a - rebuilt).norm() <= 1e-10 * f.singular_values.front() * std::sqrt(12.0));
  }

  TEST_CASE("condition_number agrees with an independent 1-norm estimate") {
    // kappa_2 / n <= kappa_1 = |A|_1 |A^-1|_1 <= n kappa_2.
    std::mt19937_64 rng(17);
    const ComplexMatrix a = random_matrix(8, 8, rng) + 4.0 * ComplexMatrix::Identity(8, 8);
    const double kappa2 = condition_number(a);
    const auto norm1 = [](const ComplexMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); };
    const double kappa1 = norm1(a) * norm1(a.inverse());
    CHECK(kappa1 >= kappa2 / 8.0);
    CHECK(kappa1 <= kappa2 * 8.0);
  }

  TEST_CASE("expm of zero, diagonal and rotation generators") {
    CHECK((expm(ComplexMatrix::Zero(5, 5)) - ComplexMatrix::Identity(5, 5)).norm() == 0.0);
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = Complex(-1.0, 2.0);
    d(1, 1) = 0.5;
    d(2, 2) = -30.0;
    const ComplexMatrix ed = expm(d);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ed(k, k) - std::exp(d(k, k))) <= 1e-12 * std::abs(std::exp(d(k, k))));
    const double t = 2.3;
    ComplexMatrix r = ComplexMatrix::Zero(2, 2);
    r(0, 1) = t;
    r(1, 0) = -t;
    const ComplexMatrix er = expm(r);
    CHECK(std::abs(er(0, 0) - std::cos(t)) < 1e-14);
    CHECK(std::abs(er(0, 1) - std::sin(t)) < 1e-14);
    CHECK(std::abs(er(1, 0) + std::sin(t)) < 1e-14);
    CHECK(std::abs(er(1, 1) - std::cos(t)) < 1e-14);
  }

  TEST_CASE("expm matches the spectral formula on Hermitian generators") {
    std::mt19937_64 rng(23);
    const ComplexMatrix h = random_hermitian(20, rng);
    const auto eig = eig_hermitian(h);
    ComplexVector phases(20);
    for (int k = 0; k < 20; ++k) phases(k) = std::exp(Complex(0.0, -1.7 * eig.eigenvalues[static_cast<std::size_t>(k)]));
    const ComplexMatrix reference = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    const ComplexMatrix u = expm(Complex(0.0, -1.7) * h);
    CHECK((u - reference).norm() <= 1e-10 * reference.norm());
  }

  TEST_CASE("expm group property on anti-Hermitian generators") {
    std::mt19937_64 rng(29);
    for (int draw = 0; draw < 5; ++draw) {
      const ComplexMatrix a = Complex(0.0, 1.0) * random_hermitian(12, rng);
      const double t = 0.7, s = 1.9;
      const ComplexMatrix lhs = expm(a * (t + s));
      CHECK((lhs - expm(a * t) * expm(a * s)).norm() <= 1e-8 * lhs.norm());
    }
  }

  TEST_CASE("expm refuses norms beyond the scaling ladder") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1e300;
    CHECK_THROWS_AS(expm(a), ScalingError);
  }

  TEST_CASE("condition_number examples and scale invariance") {
    CHECK(condition_number(ComplexMatrix::Identity(4, 4)) == doctest::Approx(1.0));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 1e-8;
    CHECK(condition_number(d) == doctest::Approx(1e8).epsilon(1e-10));
    std::mt19937_64 rng(31);
    const ComplexMatrix a = random_matrix(6, 6, rng);
    CHECK(condition_number(Complex(-3.0, 2.0) * a) == doctest::Approx(condition_number(a)).epsilon(1e-10));
    ComplexMatrix singular = ComplexMatrix::Zero(3, 3);
    singular(0, 0) = 1.0;
    CHECK(std::isinf(condition_number(singular)));
  }
}
