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

#include "liokry/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "liokry/errors.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace liokry {
namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << op << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(os.str());
  }
}

void require_finite(const ComplexMatrix& a, const char* op) {
  if (!all_finite(a)) throw PreconditionError(std::string(op) + ": matrix has non-finite entries");
}

double one_norm(const ComplexMatrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade coefficients b_0..b_m for the [m/m] approximant of exp (Higham 2005).
constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
constexpr std::array<double, 10> kPade9 = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                           2162160.,     110880.,      3960.,        90.,         1.};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800., 129060195264000.,
    10559470521600.,    670442572800.,      33522128640.,      1323241920.,       40840800.,
    960960.,            16380.,             182.,              1.};
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                          2.097847961257068e0, 5.371920351148152e0};

template <std::size_t M>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, M>& b) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ident;
  ComplexMatrix u_even = b[1] * ident;  // odd-degree terms collected before multiplying by A
  ComplexMatrix v = b[0] * ident;
  for (std::size_t k = 2; k < M; k += 2) {
    power = power * a2;
    v += b[k] * power;
    u_even += b[k + 1] * power;
  }
  const ComplexMatrix u = a * u_even;
  return (v - u).partialPivLu().solve(v + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  const auto& b = kPade13;
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const ComplexMatrix u = a * (u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const ComplexMatrix v_inner = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  const ComplexMatrix v = v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

EigenDecomposition eig_general(const ComplexMatrix& a, const NumericSettings& settings, EigenvectorSides sides) {
  require_square(a, "eig_general");
  require_finite(a, "eig_general");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenDecomposition out;
  if (n == 0) return out;

  ComplexMatrix work = a;
  ComplexVector w(n);
  ComplexMatrix vr(n, n);
  ComplexMatrix vl;
  const bool want_left = sides == EigenvectorSides::both;
  if (want_left) vl.resize(n, n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, work.data(), n, w.data(),
                                        want_left ? vl.data() : nullptr, n, vr.data(), n);
  if (info > 0) throw SolverError("eig_general: QR iteration failed to converge after processing eigenvalue " +
                                      std::to_string(info),
                                  info);
  if (info < 0) throw SolverError("eig_general: invalid argument to zgeev", info);

  out.eigenvalues.assign(w.data(), w.data() + n);
  out.right_eigenvectors = std::move(vr);
  if (want_left) out.left_eigenvectors = std::move(vl);

  if (settings.verify) {
    const double bound = settings.eig_residual_rtol * a.norm();
    const ComplexMatrix residual = a * out.right_eigenvectors - out.right_eigenvectors * w.asDiagonal();
    for (lapack_int k = 0; k < n; ++k) {
      const double r = residual.col(k).norm();
      if (!(r <= bound * out.right_eigenvectors.col(k).norm() + std::numeric_limits<double>::min())) {
        std::ostringstream os;
        os << "eig_general: residual " << r << " of pair " << k << " exceeds " << bound;
        throw SolverError(os.str(), static_cast<int>(k));
      }
    }
  }
  return out;
}

std::vector<Complex> eigenvalues_general(const ComplexMatrix& a) {
  require_square(a, "eigenvalues_general");
  require_finite(a, "eigenvalues_general");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  ComplexMatrix work = a;
  ComplexVector w(n);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, w.data(), nullptr, n,
                                        nullptr, n);
  if (info != 0) throw SolverError("eigenvalues_general: zgeev failed", info);
  return {w.data(), w.data() + n};
}

HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& a, const NumericSettings& settings) {
  require_square(a, "eig_hermitian");
  require_finite(a, "eig_hermitian");
  const double scale = a.norm();
  const double asym = (a - a.adjoint()).norm();
  if (asym > settings.hermitian_rtol * scale) {
    std::ostringstream os;
    os << "eig_hermitian: |A - A^dag|_F = " << asym << " exceeds " << settings.hermitian_rtol << " * |A|_F";
    throw PreconditionError(os.str());
  }
  const lapack_int n = static_cast<lapack_int>(a.rows());
  HermitianEigenDecomposition out;
  if (n == 0) return out;
  // Symmetrise exactly so LAPACK sees the Hermitian part only.
  ComplexMatrix work = 0.5 * (a + a.adjoint());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, work.data(), n, w.data());
  if (info != 0) throw SolverError("eig_hermitian: zheevd failed", info);
  out.eigenvalues.assign(w.data(), w.data() + n);
  out.eigenvectors = std::move(work);
  if (settings.verify) {
    const double orth =
        (out.eigenvectors.adjoint() * out.eigenvectors - ComplexMatrix::Identity(n, n)).norm();
    if (orth > settings.orthonormal_tol)
      throw SolverError("eig_hermitian: eigenvectors lost orthonormality, |V^dag V - I|_F = " + std::to_string(orth),
                        0);
  }
  return out;
}

SvdDecomposition svd(const ComplexMatrix& a, const NumericSettings& settings) {
  require_finite(a, "svd");
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  SvdDecomposition out;
  if (k == 0) return out;
  ComplexMatrix work = a;
  Eigen::VectorXd s(k);
  ComplexMatrix u(m, k);
  ComplexMatrix vt(k, n);
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, s.data(), u.data(), m, vt.data(), k);
  if (info != 0) throw SolverError("svd: zgesdd failed", info);
  out.singular_values.assign(s.data(), s.data() + k);
  out.left_vectors = std::move(u);
  out.right_vectors = vt.adjoint();
  (void)settings;
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  if (k == 0) return {};
  ComplexMatrix work = a;
  Eigen::VectorXd s(k);
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, m,
                                         nullptr, 1);
  if (info != 0) throw SolverError("singular_values: zgesdd failed", info);
  return {s.data(), s.data() + k};
}

ComplexMatrix expm(const ComplexMatrix& a, const NumericSettings& settings) {
  require_square(a, "expm");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double norm = one_norm(a);
  if (!std::isfinite(norm) || norm > settings.expm_max_norm) throw ScalingError(norm);

  if (norm <= kTheta[0]) return pade_low(a, kPade3);
  if (norm <= kTheta[1]) return pade_low(a, kPade5);
  if (norm <= kTheta[2]) return pade_low(a, kPade7);
  if (norm <= kTheta[3]) return pade_low(a, kPade9);

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
  ComplexMatrix result = pade13(a / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!all_finite(result)) throw ScalingError(norm);
  return result;
}

double effective_singular_rtol(const NumericSettings& settings, Eigen::Index rows, Eigen::Index cols) {
  if (settings.singular_rtol > 0.0) return settings.singular_rtol;
  return static_cast<double>(std::max<Eigen::Index>({rows, cols, 1})) * std::numeric_limits<double>::epsilon();
}

double condition_from_singular_values(const std::vector<double>& sigma, double rtol) {
  if (sigma.empty()) return std::numeric_limits<double>::infinity();
  const double smax = sigma.front();
  const double smin = sigma.back();
  if (!(smax > 0.0) || smin <= rtol * smax) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

double condition_number(const ComplexMatrix& a, const NumericSettings& settings) {
  return condition_from_singular_values(singular_values(a), effective_singular_rtol(settings, a.rows(), a.cols()));
}

}  // namespace liokry
