// SPDX-License-Identifier: Apache-2.0
//
// wishart-mrc — exact performance statistics for MIMO beamforming/MRC links
// over doubly-correlated Rayleigh fading
// Copyright (C) 2026 the wishart-mrc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmrc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Matrix/vector dimensions incompatible with the operation.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// Positive-(semi)definiteness required but not satisfied.
class DefinitenessError : public Error {
  public:
    using Error::Error;
};

/// A result left its mathematically guaranteed range; the message echoes the
/// offending parameter set.
class ConditioningError : public Error {
  public:
    using Error::Error;
};

/// An iterative scheme (quadrature, series) failed to reach its tolerance.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Operation invoked outside its stated shape contract (e.g. n != 2).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// Antenna-array model parameters produce an invalid correlation matrix.
class ModelValidityError : public Error {
  public:
    using Error::Error;
};

/// Name not present in a registry (modulation schemes, commands).
class LookupError : public Error {
  public:
    using Error::Error;
};

/// Configuration text could not be parsed; carries the 1-based position.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace wmrc
