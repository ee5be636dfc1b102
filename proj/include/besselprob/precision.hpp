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

#include <cmath>

#include "errors.hpp"

namespace besselprob {

/// Accuracy knobs shared by every kernel. Plain value type; pass it down
/// explicitly, there is no global default.
struct PrecisionPolicy {
    double target_abs_tol = 1e-13;
    double target_rel_tol = 1e-14;
    int series_terms_max = 4000;
    /// Significant decimal digits used where a series suffers cancellation.
    int highprec_digits = 50;

    void validate() const {
        if (!(target_abs_tol > 0.0) || !(target_rel_tol > 0.0)) {
            throw DomainError("PrecisionPolicy: tolerances must be positive");
        }
        if (series_terms_max < 64) {
            throw DomainError("PrecisionPolicy: series_terms_max must be >= 64");
        }
        if (highprec_digits < 50) {
            throw DomainError("PrecisionPolicy: highprec_digits must be >= 50");
        }
    }
};

}  // namespace besselprob
