// Copyright 2026 The EDSS Authors
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

namespace edss {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid labels, dimensions, bipartitions or configuration values.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Register would exceed the dense size limit.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// Eigensolver or optimizer failed to converge.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// A state violates the density-matrix invariants required by an operation.
class InvalidStateError : public Error {
  public:
    using Error::Error;
};

/// Projection onto an outcome with (numerically) zero probability.
class ImpossibleOutcomeError : public Error {
  public:
    using Error::Error;
};

/// A protocol step failed; carries the 1-based step index.
class ProtocolError : public Error {
  public:
    ProtocolError(std::size_t step, const std::string &what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

/// A state does not fit the requested mixture ansatz.
class DecompositionError : public Error {
  public:
    using Error::Error;
};

} // namespace edss
