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

#include <mpfr.h>

#include <cmath>
#include <utility>

namespace besselprob::detail {

inline mpfr_prec_t digits_to_bits(int digits10) {
    return static_cast<mpfr_prec_t>(std::ceil(digits10 * 3.3219280948873623)) + 8;
}

// Minimal RAII handle over mpfr_t. Every value carries its own precision;
// results take the precision of the destination, so nothing depends on the
// process-wide MPFR default.
class MpFloat {
public:
    explicit MpFloat(mpfr_prec_t bits, double v = 0.0) {
        mpfr_init2(v_, bits);
        mpfr_set_d(v_, v, MPFR_RNDN);
    }
    MpFloat(const MpFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    MpFloat& operator=(const MpFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ~MpFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

    MpFloat& set(double v) {
        mpfr_set_d(v_, v, MPFR_RNDN);
        return *this;
    }
    MpFloat& operator+=(const MpFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpFloat& operator-=(const MpFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpFloat& operator*=(const MpFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpFloat& operator/=(const MpFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    MpFloat& mul_d(double d) {
        mpfr_mul_d(v_, v_, d, MPFR_RNDN);
        return *this;
    }
    MpFloat& div_d(double d) {
        mpfr_div_d(v_, v_, d, MPFR_RNDN);
        return *this;
    }
    MpFloat& div_ui(unsigned long u) {
        mpfr_div_ui(v_, v_, u, MPFR_RNDN);
        return *this;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// log2 of |value|, or -inf for zero. Safe for values beyond double range.
    double log2_abs() const {
        if (mpfr_zero_p(v_)) return -INFINITY;
        long exp = 0;
        const double mant = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
        return std::log2(std::fabs(mant)) + static_cast<double>(exp);
    }
    int sign() const { return mpfr_sgn(v_); }

private:
    mpfr_t v_;
};

}  // namespace besselprob::detail
