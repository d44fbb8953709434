// Copyright 2026 The ncpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ncpt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
    using Error::Error;
};

class DimensionMismatch : public Error {
 public:
    using Error::Error;
};

/// A state lies outside the domain of an operation (zero probability of the conditioning event).
class OutOfDomain : public Error {
 public:
    using Error::Error;
};

/// A typed value was constructed from data that breaks one of its invariants.
/// `invariant()` names the violated rule, e.g. "Projection.idempotent".
class InvariantViolation : public Error {
 public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    const std::string& invariant() const noexcept { return invariant_; }

 private:
    std::string invariant_;
};

class DegenerateSpec : public Error {
 public:
    using Error::Error;
};

class EmptyTable : public Error {
 public:
    using Error::Error;
};

class ZeroDenominator : public Error {
 public:
    using Error::Error;
};

class InsufficientData : public Error {
 public:
    using Error::Error;
};

class NotAPvm : public Error {
 public:
    using Error::Error;
};

/// Malformed external input (configuration or data files).
class InputError : public Error {
 public:
    using Error::Error;
};

}  // namespace ncpt
