// Copyright 2026 The pcmzi developers
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

#ifndef PCMZI_ERRORS_HPP
#define PCMZI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcmzi {

/// Caller misuse: mismatched truncation orders, bad argument shapes.
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Physical parameter outside the supported domain.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Series inversion / fractional power of a series with (near-)zero constant term.
struct SingularSeriesError : std::domain_error {
    explicit SingularSeriesError(const std::string& msg) : std::domain_error(msg) {}
};

/// The phase signal is stationary at the requested point; no sensitivity exists.
struct DegeneratePointError : std::runtime_error {
    explicit DegeneratePointError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A result violated an internal invariant (|parity| <= 1, real-valued
/// expectation, nonnegative QFI). Indicates truncation or parameter misuse.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Fock-space truncation too small for the requested state.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// QCRB requested at zero Fisher information.
struct UndefinedBoundError : std::domain_error {
    explicit UndefinedBoundError(const std::string& msg) : std::domain_error(msg) {}
};

/// Overflow in exp of a series constant term.
struct RangeError : std::range_error {
    explicit RangeError(const std::string& msg) : std::range_error(msg) {}
};

}  // namespace pcmzi

#endif
