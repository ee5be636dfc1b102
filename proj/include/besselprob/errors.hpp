/*
 *   Copyright 2026 The besselprob Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace besselprob {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable as a double. Carries the natural log of the
/// magnitude so callers can continue in log space.
class RangeError : public std::range_error {
public:
    RangeError(const std::string& what, double log_value)
        : std::range_error(what), log_value_(log_value) {}
    double log_value() const noexcept { return log_value_; }

private:
    double log_value_;
};

/// Requested tolerance could not be met. `achieved()` is the best error
/// bound the routine could certify.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// A quadrature whose value grows without bound under refinement.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Algorithmic failure that should not happen for valid input (e.g. a
/// Bessel zero that cannot be bracketed).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace besselprob
