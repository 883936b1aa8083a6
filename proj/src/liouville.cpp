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

#include "liokry/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "liokry/diagnostics.hpp"
#include "liokry/errors.hpp"

namespace liokry {
namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::Index superdim(const FockSpace& space) {
  return static_cast<Eigen::Index>(space.n_levels()) * space.n_levels();
}

// Columns of an eigenvector matrix reordered by descending real part; ties
// go to the smaller |Im| so oscillatory partners sort after real modes.
std::vector<std::size_t> spectral_order(const std::vector<Complex>& w) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (w[x].real() != w[y].real()) return w[x].real() > w[y].real();
    if (std::abs(w[x].imag()) != std::abs(w[y].imag())) return std::abs(w[x].imag()) < std::abs(w[y].imag());
    return w[x].imag() > w[y].imag();
  });
  return idx;
}

ComplexMatrix trace_normalised_hermitian(const ComplexMatrix& rho) {
  const Complex tr = rho.trace();
  if (std::abs(tr) == 0.0) throw OracleError("steady_state: null vector has zero trace");
  ComplexMatrix out = rho / tr;
  return 0.5 * (out + out.adjoint());
}

void check_positive(const ComplexMatrix& rho) {
  const auto eig = eig_hermitian(rho);
  const double floor = eig.eigenvalues.front();
  if (floor < -1e-10) {
    std::ostringstream os;
    os << "steady state has eigenvalue " << floor << " below -1e-10";
    warn("steady-state-positivity", os.str());
  }
}

}  // namespace

Superket::Superket(FockSpace space, ComplexVector vec) : space_(space), vec_(std::move(vec)) {
  if (vec_.size() != superdim(space_)) {
    std::ostringstream os;
    os << "Superket: length " << vec_.size() << " does not match N^2 = " << superdim(space_);
    throw DimensionError(os.str());
  }
  if (!all_finite(vec_)) throw PreconditionError("Superket: non-finite entries");
}

Superoperator::Superoperator(FockSpace space, ComplexMatrix matrix) : space_(space), matrix_(std::move(matrix)) {
  const Eigen::Index d = superdim(space_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    std::ostringstream os;
    os << "Superoperator: matrix is " << matrix_.rows() << "x" << matrix_.cols() << ", expected " << d << "x" << d;
    throw DimensionError(os.str());
  }
}

Superket Superoperator::apply(const Superket& rho) const {
  if (!(rho.space() == space_)) throw DimensionError("Superoperator::apply: superket lives on another space");
  return {space_, matrix_ * rho.vec()};
}

Superoperator operator+(const Superoperator& x, const Superoperator& y) {
  if (!(x.space() == y.space())) throw DimensionError("Superoperator: operands live on different spaces");
  return {x.space(), x.matrix() + y.matrix()};
}

Superket vectorize(const FockSpace& space, const ComplexMatrix& m) {
  const int n = space.n_levels();
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << "vectorize: matrix is " << m.rows() << "x" << m.cols() << ", expected " << n << "x" << n;
    throw DimensionError(os.str());
  }
  ComplexVector v(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(static_cast<Eigen::Index>(i) * n + j) = m(i, j);
  return {space, std::move(v)};
}

ComplexMatrix devectorize(const Superket& s) {
  const int n = s.space().n_levels();
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s.vec()(static_cast<Eigen::Index>(i) * n + j);
  return m;
}

Superket identity_superket(const FockSpace& space) {
  const int n = space.n_levels();
  return vectorize(space, ComplexMatrix::Identity(n, n));
}

Complex inner(const Superket& a, const Superket& b) {
  if (!(a.space() == b.space())) throw DimensionError("inner: superkets live on different spaces");
  return a.vec().dot(b.vec());  // Eigen's dot conjugates the left operand
}

double superket_overlap(const Superket& a, const Superket& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw PreconditionError("superket_overlap: zero superket");
  return std::abs(inner(a, b)) / (na * nb);
}

double state_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionError("state_fidelity: shape mismatch");
  NumericSettings loose;
  loose.hermitian_rtol = 1e-8;
  const auto er = eig_hermitian(0.5 * (rho + rho.adjoint()), loose);
  Eigen::VectorXd root(er.eigenvalues.size());
  for (std::size_t k = 0; k < er.eigenvalues.size(); ++k)
    root(static_cast<Eigen::Index>(k)) = std::sqrt(std::max(0.0, er.eigenvalues[k]));
  const ComplexMatrix sqrt_rho = er.eigenvectors * root.asDiagonal() * er.eigenvectors.adjoint();
  ComplexMatrix m = sqrt_rho * (0.5 * (sigma + sigma.adjoint())) * sqrt_rho;
  m = 0.5 * (m + m.adjoint()).eval();
  const auto em = eig_hermitian(m, loose);
  double tr = 0.0;
  for (double x : em.eigenvalues) tr += std::sqrt(std::max(0.0, x));
  return tr * tr;
}

ComplexMatrix hermitian_representative(const ComplexMatrix& x) {
  // For X = e^{-i theta} Y with Y Hermitian, Tr(X X) = e^{-2 i theta} |Y|_F^2.
  const Complex t = (x * x).trace();
  ComplexMatrix y = x;
  if (std::abs(t) > 0.0) y *= std::polar(1.0, -0.5 * std::arg(t));
  return 0.5 * (y + y.adjoint());
}

Superoperator hamiltonian_superop(const FockOperator& h, const NumericSettings& settings) {
  const ComplexMatrix& hm = h.matrix();
  const double asym = (hm - hm.adjoint()).norm();
  if (asym > settings.hermitian_rtol * std::max(hm.norm(), 1.0))
    throw PreconditionError("hamiltonian_superop: H is not Hermitian (|H - H^dag|_F = " + std::to_string(asym) + ")");
  const int n = h.space().n_levels();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const Complex minus_i(0.0, -1.0);
  return {h.space(), minus_i * (kron(hm, id) - kron(id, hm.transpose()))};
}

Superoperator dissipator_superop(const FockOperator& l, double rate) {
  if (!(rate >= 0.0)) throw PreconditionError("dissipator_superop: rate must be >= 0, got " + std::to_string(rate));
  const int n = l.space().n_levels();
  const ComplexMatrix& lm = l.matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix ldl = lm.adjoint() * lm;
  ComplexMatrix d = kron(lm, lm.conjugate()) - 0.5 * kron(ldl, id) - 0.5 * kron(id, ldl.transpose());
  return {l.space(), rate * d};
}

Superoperator kerr_cat_liouvillian(const FockSpace& space, const KerrCatParams& p) {
  p.validate();
  return hamiltonian_superop(kerr_cat_hamiltonian(space, p)) + dissipator_superop(destroy(space), p.kappa_1ph);
}

LiouvilleSpectrum full_spectrum_oracle(const Superoperator& l, const OracleOptions& options) {
  const double lnorm = l.matrix().norm();
  const auto sides = options.left_eigenvectors ? EigenvectorSides::both : EigenvectorSides::right;
  auto eig = eig_general(l.matrix(), options.numerics, sides);

  const auto order = spectral_order(eig.eigenvalues);
  const Eigen::Index d = l.dim();
  LiouvilleSpectrum out;
  out.tol_ss = options.steady_rtol * lnorm;
  out.eigenvalues.resize(order.size());
  out.right_superkets.resize(d, d);
  if (eig.left_eigenvectors) out.left_superkets = ComplexMatrix(d, d);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    out.eigenvalues[k] = eig.eigenvalues[order[k]];
    out.right_superkets.col(static_cast<Eigen::Index>(k)) = eig.right_eigenvectors.col(src);
    if (out.left_superkets) out.left_superkets->col(static_cast<Eigen::Index>(k)) = eig.left_eigenvectors->col(src);
  }

  const double stability_tol = options.stability_rtol * lnorm;
  if (out.eigenvalues.front().real() > stability_tol) {
    std::ostringstream os;
    os << "full_spectrum_oracle: eigenvalue " << out.eigenvalues.front() << " has positive real part beyond "
       << stability_tol;
    throw OracleError(os.str());
  }

  std::size_t ss = 0;
  for (std::size_t k = 1; k < out.eigenvalues.size(); ++k)
    if (std::abs(out.eigenvalues[k]) < std::abs(out.eigenvalues[ss])) ss = k;
  if (std::abs(out.eigenvalues[ss]) > out.tol_ss) {
    std::ostringstream os;
    os << "full_spectrum_oracle: no eigenvalue within " << out.tol_ss << " of zero (closest " << out.eigenvalues[ss]
       << "); is the generator trace preserving?";
    throw OracleError(os.str());
  }
  out.steady_state_index = ss;

  // Largest real part excluding the steady state; ties (within tol_ss) resolved by smallest |Im|.
  std::optional<std::size_t> slow;
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
    if (k == ss) continue;
    if (!slow) {
      slow = k;
      continue;
    }
    const Complex cand = out.eigenvalues[k];
    const Complex best = out.eigenvalues[*slow];
    if (cand.real() < best.real() - out.tol_ss) break;
    if (std::abs(cand.imag()) < std::abs(best.imag())) slow = k;
  }
  if (!slow) throw OracleError("full_spectrum_oracle: spectrum has a single eigenvalue");
  const double gap = -out.eigenvalues[*slow].real();
  if (!(gap > out.tol_ss)) {
    std::ostringstream os;
    os << "full_spectrum_oracle: no decaying mode (slowest non-steady eigenvalue " << out.eigenvalues[*slow] << ")";
    throw OracleError(os.str());
  }
  out.slow_mode_index = *slow;
  out.gap = gap;
  out.eigvec_condition = options.eigvec_condition ? condition_number(out.right_superkets, options.numerics) : 0.0;
  return out;
}

double non_normality(const Superoperator& l) {
  const ComplexMatrix& m = l.matrix();
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  const ComplexMatrix ad = m.adjoint();
  return (ad * m - m * ad).norm() / norm;
}

namespace {

Superket steady_from_null_vector(const FockSpace& space, const std::vector<Complex>& eigenvalues,
                                 const ComplexMatrix& vectors, std::size_t index, double tol) {
  std::vector<double> magnitudes;
  magnitudes.reserve(eigenvalues.size());
  for (const auto& w : eigenvalues) magnitudes.push_back(std::abs(w));
  std::sort(magnitudes.begin(), magnitudes.end());
  if (magnitudes.size() > 1 && magnitudes[1] <= tol) {
    std::ostringstream os;
    os << "numerical null space is degenerate; secondary eigenvalue magnitude " << magnitudes[1];
    warn("steady-state-degenerate", os.str());
  }
  const Superket raw(space, vectors.col(static_cast<Eigen::Index>(index)));
  const ComplexMatrix rho = trace_normalised_hermitian(devectorize(raw));
  check_positive(rho);
  return vectorize(space, rho);
}

}  // namespace

Superket steady_state(const LiouvilleSpectrum& spectrum, const FockSpace& space) {
  return steady_from_null_vector(space, spectrum.eigenvalues, spectrum.right_superkets, spectrum.steady_state_index,
                                 spectrum.tol_ss);
}

Superket steady_state(const Superoperator& l, const OracleOptions& options) {
  const auto eig = eig_general(l.matrix(), options.numerics);
  std::size_t best = 0;
  for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k)
    if (std::abs(eig.eigenvalues[k]) < std::abs(eig.eigenvalues[best])) best = k;
  const double tol = options.steady_rtol * l.matrix().norm();
  if (std::abs(eig.eigenvalues[best]) > tol)
    throw OracleError("steady_state: generator has no null eigenvalue within tolerance");
  return steady_from_null_vector(l.space(), eig.eigenvalues, eig.right_eigenvectors, best, tol);
}

Superket slow_mode(const LiouvilleSpectrum& spectrum, const FockSpace& space) {
  const Superket raw(space, spectrum.right_superkets.col(static_cast<Eigen::Index>(spectrum.slow_mode_index)));
  ComplexMatrix rho = hermitian_representative(devectorize(raw));
  Superket out = vectorize(space, rho);
  return {space, out.vec() / out.norm()};
}

}  // namespace liokry
