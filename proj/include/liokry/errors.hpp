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

#pragma once

#include <stdexcept>
#include <string>

namespace liokry {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not match what an operation requires.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-Hermitian, negative rate, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A dense LAPACK routine reported failure.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int info) : Error(what + " (info=" + std::to_string(info) + ")"), info_(info) {}
  int info() const noexcept { return info_; }

 private:
  int info_;
};

/// expm input whose norm would overflow the scaling-and-squaring ladder.
class ScalingError : public Error {
 public:
  explicit ScalingError(double norm)
      : Error("matrix exponential overflow: |A|_1 = " + std::to_string(norm)), norm_(norm) {}
  double norm() const noexcept { return norm_; }

 private:
  double norm_;
};

/// Spectral-oracle failure: no null eigenvalue, positive real parts, no decaying mode.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// Krylov pipeline failure (underflow, empty kept rank, nonphysical growth).
class KrylovError : public Error {
 public:
  using Error::Error;
};

/// Mean-field trajectory left the physically meaningful region.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; the message carries the key path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A file or directory could not be read or written; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace liokry
