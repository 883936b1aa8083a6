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

#include "liokry/fock.hpp"

#include <cmath>
#include <sstream>

#include "liokry/diagnostics.hpp"
#include "liokry/errors.hpp"

namespace liokry {
namespace {

constexpr double kTailWarning = 1e-8;

void require_same_space(const FockOperator& x, const FockOperator& y) {
  if (!(x.space() == y.space())) throw DimensionError("FockOperator: operands live on different Fock spaces");
}

// Unnormalised alpha^n / sqrt(n!) for n < N.
ComplexVector coherent_amplitudes(int n_levels, Complex alpha) {
  ComplexVector c(n_levels);
  c(0) = 1.0;
  for (int n = 1; n < n_levels; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

void warn_on_tail(const FockSpace& space, Complex alpha) {
  const double tail = coherent_tail_weight(space, alpha);
  if (tail > kTailWarning) {
    std::ostringstream os;
    os << "coherent state |alpha|^2 = " << std::norm(alpha) << " loses weight " << tail << " beyond N-1 = "
       << space.n_levels() - 1;
    warn("coherent-tail", os.str());
  }
}

}  // namespace

FockSpace::FockSpace(int n_levels) : n_levels_(n_levels) {
  if (n_levels < 2) throw PreconditionError("FockSpace: need at least 2 levels, got " + std::to_string(n_levels));
}

FockOperator::FockOperator(FockSpace space, ComplexMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.n_levels() || matrix_.cols() != space_.n_levels()) {
    std::ostringstream os;
    os << "FockOperator: matrix is " << matrix_.rows() << "x" << matrix_.cols() << " on a space of "
       << space_.n_levels() << " levels";
    throw DimensionError(os.str());
  }
}

FockOperator operator+(const FockOperator& x, const FockOperator& y) {
  require_same_space(x, y);
  return {x.space(), x.matrix() + y.matrix()};
}

FockOperator operator-(const FockOperator& x, const FockOperator& y) {
  require_same_space(x, y);
  return {x.space(), x.matrix() - y.matrix()};
}

FockOperator operator*(const FockOperator& x, const FockOperator& y) {
  require_same_space(x, y);
  return {x.space(), x.matrix() * y.matrix()};
}

FockOperator operator*(Complex c, const FockOperator& x) { return {x.space(), c * x.matrix()}; }

void KerrCatParams::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(kerr) || !std::isfinite(drive) || !std::isfinite(kappa_1ph))
    throw PreconditionError("KerrCatParams: non-finite parameter");
  if (kerr < 0.0) throw PreconditionError("KerrCatParams: kerr must be >= 0");
  if (kappa_1ph < 0.0) throw PreconditionError("KerrCatParams: kappa_1ph must be >= 0");
}

FockOperator identity(const FockSpace& space) {
  const int n = space.n_levels();
  return {space, ComplexMatrix::Identity(n, n)};
}

FockOperator destroy(const FockSpace& space) {
  const int n = space.n_levels();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {space, std::move(a)};
}

FockOperator create(const FockSpace& space) { return destroy(space).adjoint(); }

FockOperator number(const FockSpace& space) {
  const int n = space.n_levels();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return {space, std::move(m)};
}

FockOperator parity(const FockSpace& space) {
  const int n = space.n_levels();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return {space, std::move(m)};
}

FockOperator kerr_cat_hamiltonian(const FockSpace& space, const KerrCatParams& p) {
  p.validate();
  const ComplexMatrix a = destroy(space).matrix();
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix ad2 = ad * ad;
  ComplexMatrix h = p.delta * (ad * a) - p.kerr * (ad2 * a2) + p.drive * (ad2 + a2);
  // Remove round-off asymmetry so downstream Hermiticity checks see an exact Hermitian matrix.
  h = 0.5 * (h + h.adjoint()).eval();
  return {space, std::move(h)};
}

double coherent_tail_weight(const FockSpace& space, Complex alpha) {
  const double x = std::norm(alpha);
  // Poisson tail P(n >= N) accumulated from the top to avoid 1 - (1 - tiny).
  const int n_levels = space.n_levels();
  double term = std::exp(-x);
  double head = term;
  for (int n = 1; n < n_levels; ++n) {
    term *= x / n;
    head += term;
  }
  return std::max(0.0, 1.0 - head);
}

ComplexVector coherent_state(const FockSpace& space, Complex alpha) {
  warn_on_tail(space, alpha);
  ComplexVector c = coherent_amplitudes(space.n_levels(), alpha);
  c.normalize();
  return c;
}

ComplexVector cat_state(const FockSpace& space, Complex alpha, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("cat_state: sign must be +1 or -1");
  if (sign == -1 && alpha == Complex(0.0, 0.0))
    throw PreconditionError("cat_state: odd cat is undefined at alpha = 0");
  warn_on_tail(space, alpha);
  ComplexVector c = coherent_amplitudes(space.n_levels(), alpha);
  for (int n = 0; n < space.n_levels(); ++n) {
    const bool even = n % 2 == 0;
    if ((sign == 1) != even) c(n) = 0.0;
  }
  const double norm = c.norm();
  if (!(norm > 0.0)) throw PreconditionError("cat_state: state vanishes after truncation");
  return c / norm;
}

std::pair<FockOperator, FockOperator> logical_operators(const FockSpace& space, double alpha) {
  if (alpha == 0.0) throw PreconditionError("logical_operators: alpha must be nonzero (Z = a / alpha)");
  if (!(alpha > 0.0)) throw PreconditionError("logical_operators: alpha must be positive");
  return {Complex(1.0 / alpha, 0.0) * destroy(space), parity(space)};
}

}  // namespace liokry
