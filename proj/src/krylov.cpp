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

#include "liokry/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "liokry/diagnostics.hpp"
#include "liokry/errors.hpp"

namespace liokry {
namespace {

constexpr double kUnderflow = 1e-300;

}  // namespace

std::string_view to_string(GevpMethod method) {
  switch (method) {
    case GevpMethod::projected_generator:
      return "projected_generator";
    case GevpMethod::transfer_matrix:
      return "transfer_matrix";
  }
  return "unknown";
}

GevpMethod gevp_method_from_string(std::string_view name) {
  if (name == "projected_generator") return GevpMethod::projected_generator;
  if (name == "transfer_matrix") return GevpMethod::transfer_matrix;
  throw PreconditionError("unknown GEVP method '" + std::string(name) + "'");
}

void KrylovConfig::validate() const {
  if (dim_d < 1) throw PreconditionError("KrylovConfig: D must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw PreconditionError("KrylovConfig: tau must be > 0");
  if (!(threshold > 0.0 && threshold < 1.0)) throw PreconditionError("KrylovConfig: threshold must lie in (0, 1)");
}

Propagator::Propagator(const Superoperator& l, double tau, const NumericSettings& settings)
    : tau_(tau), matrix_(expm(l.matrix() * tau, settings)) {
  if (!(tau > 0.0)) throw PreconditionError("Propagator: tau must be > 0");
}

KrylovData build_basis(const Superoperator& l, const Superket& rho0, const KrylovConfig& cfg) {
  cfg.validate();
  return build_basis(l, Propagator(l, cfg.tau), rho0, cfg);
}

KrylovData build_basis(const Superoperator& l, const Propagator& propagator, const Superket& rho0,
                       const KrylovConfig& cfg) {
  cfg.validate();
  if (!(rho0.space() == l.space())) throw DimensionError("build_basis: rho0 and L live on different spaces");
  if (std::abs(rho0.norm() - 1.0) > 1e-10)
    throw PreconditionError("build_basis: rho0 must have unit superket norm, got " + std::to_string(rho0.norm()));
  if (std::abs(propagator.tau() - cfg.tau) > 1e-14 * cfg.tau)
    throw PreconditionError("build_basis: propagator tau does not match the configuration");

  const int d = cfg.dim_d;
  const Eigen::Index dim = l.dim();
  KrylovData data;
  data.space = l.space();
  data.tau = cfg.tau;
  data.generator_norm = l.matrix().norm();
  data.basis.resize(dim, d);
  data.basis.col(0) = rho0.vec();
  for (int k = 1; k < d; ++k) data.basis.col(k) = propagator.matrix() * data.basis.col(k - 1);
  data.next_column = propagator.matrix() * data.basis.col(d - 1);

  data.column_norms.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) data.column_norms[static_cast<std::size_t>(k)] = data.basis.col(k).norm();
  if (d > 1 && data.column_norms.back() < kUnderflow) {
    std::ostringstream os;
    os << "build_basis: column norms underflow (|rho_" << d - 1 << "| = " << data.column_norms.back()
       << "); evolution too long, reduce tau * D = " << cfg.tau * d;
    throw KrylovError(os.str());
  }

  ComplexMatrix shifted(dim, d);
  if (d > 1) shifted.leftCols(d - 1) = data.basis.rightCols(d - 1);
  shifted.col(d - 1) = data.next_column;

  data.overlap = data.basis.adjoint() * data.basis;
  data.projected_generator = data.basis.adjoint() * (l.matrix() * data.basis);
  data.shifted_overlap = data.basis.adjoint() * shifted;
  return data;
}

KrylovData truncate(const KrylovData& data, int d) {
  if (d < 1 || d > data.dim()) throw DimensionError("truncate: requested dimension outside [1, D]");
  KrylovData out;
  out.space = data.space;
  out.tau = data.tau;
  out.generator_norm = data.generator_norm;
  if (data.basis.cols() > 0) {
    out.basis = data.basis.leftCols(d);
    out.next_column = d < data.dim() ? ComplexVector(data.basis.col(d)) : data.next_column;
  }
  out.overlap = data.overlap.topLeftCorner(d, d);
  out.projected_generator = data.projected_generator.topLeftCorner(d, d);
  out.shifted_overlap = data.shifted_overlap.topLeftCorner(d, d);
  out.column_norms.assign(data.column_norms.begin(), data.column_norms.begin() + std::min<std::size_t>(
                                                                                     data.column_norms.size(),
                                                                                     static_cast<std::size_t>(d)));
  return out;
}

double overlap_condition(const KrylovData& data) {
  if (data.basis.cols() == 0) return condition_number(data.overlap);
  // Raw ratio: decaying columns make tiny sigma_min genuine, so no relative cutoff applies.
  const double kappa_k = condition_from_singular_values(singular_values(data.basis), 0.0);
  return kappa_k * kappa_k;
}

RitzSpectrum ritz_spectrum(const KrylovData& data, const KrylovConfig& cfg) {
  cfg.validate();
  const int d = data.dim();
  if (d < 1 || data.projected_generator.rows() != d || data.shifted_overlap.rows() != d)
    throw DimensionError("solve_gevp: inconsistent Krylov matrices");

  const auto factor = svd(data.overlap);
  const double smax = factor.singular_values.front();
  int kept = 0;
  if (smax > 0.0)
    for (double s : factor.singular_values)
      if (s >= cfg.threshold * smax) ++kept;
  if (kept == 0) throw KrylovError("solve_gevp: every singular value of S fell below the threshold");

  Eigen::VectorXd inv_root(kept);
  for (int k = 0; k < kept; ++k) inv_root(k) = 1.0 / std::sqrt(factor.singular_values[static_cast<std::size_t>(k)]);
  const ComplexMatrix whiten = factor.left_vectors.leftCols(kept) * inv_root.asDiagonal();

  const ComplexMatrix& target =
      cfg.method == GevpMethod::projected_generator ? data.projected_generator : data.shifted_overlap;
  const ComplexMatrix reduced = whiten.adjoint() * target * whiten;
  NumericSettings relaxed;
  relaxed.verify = false;
  const auto eig = eig_general(reduced, relaxed);

  RitzSpectrum out;
  out.kept_rank = kept;
  out.weights = whiten * eig.right_eigenvectors;
  out.values = eig.eigenvalues;
  if (cfg.method == GevpMethod::transfer_matrix) {
    bool winding = false;
    for (auto& value : out.values) {
      const Complex mu = value;
      if (std::abs(mu) > 1.0 + cfg.growth_tol) {
        std::ostringstream os;
        os << "solve_gevp: transfer eigenvalue |mu| = " << std::abs(mu) << " > 1 signals nonphysical growth";
        throw KrylovError(os.str());
      }
      if (mu == Complex(0.0, 0.0)) {
        value = Complex(-std::numeric_limits<double>::infinity(), 0.0);
        continue;
      }
      value = std::log(mu) / data.tau;
      if (std::abs(value.imag()) > 0.9 * std::numbers::pi / data.tau) winding = true;
    }
    if (winding)
      warn("ritz-winding", "transfer-matrix ritz frequency within 10% of the Nyquist limit pi/tau; possible aliasing");
  }
  return out;
}

GapEstimate solve_gevp(const KrylovData& data, const KrylovConfig& cfg) {
  const RitzSpectrum ritz = ritz_spectrum(data, cfg);
  const int d = data.dim();
  GapEstimate est;
  est.kept_rank = ritz.kept_rank;
  est.cond_s = overlap_condition(data);
  est.raw_ritz_values = ritz.values;
  const auto& lambdas = ritz.values;

  // Rates below 1/tau are unresolved by the sampling, so 1/tau floors the scale.
  const double scale = std::max(data.generator_norm > 0.0 ? data.generator_norm : data.projected_generator.norm(),
                                data.tau > 0.0 ? 1.0 / data.tau : 0.0);
  const double tol_ss = cfg.steady_rtol * scale;
  const double tol_re = cfg.stability_rtol * scale;

  std::vector<std::size_t> accepted;
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    if (std::isfinite(lambdas[k].real()) && lambdas[k].real() <= tol_re) accepted.push_back(k);

  est.ritz_weights.resize(d, static_cast<Eigen::Index>(accepted.size()));
  std::optional<std::size_t> slow;
  for (std::size_t a = 0; a < accepted.size(); ++a) {
    const std::size_t k = accepted[a];
    est.ritz_values.push_back(lambdas[k]);
    ComplexVector w = ritz.weights.col(static_cast<Eigen::Index>(k));
    // Unit-norm superposition: |K w|^2 = w^dag S w.
    const double norm = std::sqrt(std::max(0.0, (w.adjoint() * data.overlap * w)(0, 0).real()));
    if (norm > 0.0) w /= norm;
    est.ritz_weights.col(static_cast<Eigen::Index>(a)) = w;
    if (std::abs(lambdas[k]) <= tol_ss) continue;
    if (!slow || lambdas[k].real() > est.ritz_values[*slow].real() + tol_ss ||
        (std::abs(lambdas[k].real() - est.ritz_values[*slow].real()) <= tol_ss &&
         std::abs(lambdas[k].imag()) < std::abs(est.ritz_values[*slow].imag())))
      slow = a;
  }
  if (!slow) throw KrylovError("solve_gevp: no decaying ritz value survived the filters");
  if (-est.ritz_values[*slow].real() <= tol_ss)
    throw KrylovError("solve_gevp: slowest ritz value does not decay (gap within tolerance of zero)");
  est.slow_index = *slow;
  est.gap = -est.ritz_values[*slow].real();
  est.filter_weights = est.ritz_weights.col(static_cast<Eigen::Index>(*slow));
  return est;
}

Superket reconstruct_eigenstate(const KrylovData& data, const GapEstimate& est, std::size_t which) {
  if (which >= est.ritz_values.size()) throw PreconditionError("reconstruct_eigenstate: ritz index out of range");
  if (!data.space || data.basis.cols() == 0) throw PreconditionError("reconstruct_eigenstate: data carries no basis");
  if (est.ritz_weights.rows() != data.basis.cols()) throw DimensionError("reconstruct_eigenstate: weight length");
  const Superket raw(*data.space, data.basis * est.ritz_weights.col(static_cast<Eigen::Index>(which)));
  const Superket herm = vectorize(*data.space, hermitian_representative(devectorize(raw)));
  const double norm = herm.norm();
  if (!(norm > 0.0)) throw KrylovError("reconstruct_eigenstate: reconstruction vanished after Hermitisation");
  return {*data.space, herm.vec() / norm};
}

std::vector<double> filter_profile(const ComplexVector& weights, double tau, const std::vector<Complex>& eigenvalues) {
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (const Complex lambda : eigenvalues) {
    Complex f(0.0, 0.0);
    for (Eigen::Index k = 0; k < weights.size(); ++k)
      f += weights(k) * std::exp(lambda * tau * static_cast<double>(k));
    out.push_back(std::norm(f));
  }
  return out;
}

std::vector<ConditioningRow> conditioning_report(const Superoperator& l, const Superket& rho0,
                                                 const std::vector<KrylovConfig>& cfg_grid,
                                                 const LiouvilleSpectrum* oracle) {
  if (cfg_grid.empty()) throw PreconditionError("conditioning_report: empty configuration grid");
  for (const auto& cfg : cfg_grid) cfg.validate();

  std::optional<LiouvilleSpectrum> own_oracle;
  if (!oracle) {
    own_oracle = full_spectrum_oracle(l);
    oracle = &*own_oracle;
  }

  // Largest D requested per tau; smaller D reuse the prefix of that basis.
  std::map<double, int> max_d;
  for (const auto& cfg : cfg_grid) max_d[cfg.tau] = std::max(max_d[cfg.tau], cfg.dim_d);
  std::map<double, KrylovData> bases;
  for (const auto& [tau, d] : max_d) {
    KrylovConfig big;
    big.tau = tau;
    big.dim_d = d;
    bases.emplace(tau, build_basis(l, Propagator(l, tau), rho0, big));
  }

  std::vector<ConditioningRow> rows;
  rows.reserve(cfg_grid.size());
  for (const auto& cfg : cfg_grid) {
    ConditioningRow row;
    row.dim_d = cfg.dim_d;
    row.tau = cfg.tau;
    row.oracle_gap = oracle->gap;
    row.oracle_eigvec_condition = oracle->eigvec_condition;
    const KrylovData data = truncate(bases.at(cfg.tau), cfg.dim_d);
    row.cond_s = overlap_condition(data);
    try {
      const auto est = solve_gevp(data, cfg);
      row.kept_rank = est.kept_rank;
      row.gap_estimate = est.gap;
    } catch (const Error& e) {
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace liokry
