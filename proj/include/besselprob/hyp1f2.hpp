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

// Generalized hypergeometric 1F2(a; b, c; x) for positive parameters.
//
// Negative arguments are the hard case: the alternating power series loses
// roughly 2 sqrt|x| / ln 10 digits to cancellation, so it is summed in MPFR
// with the working precision raised to cover the loss. Once the large-|x|
// expansion
//
//   1F2(a; b, c; -x) ~ G(b)G(c)/G(a) * [ H(x) + pi^{-1/2} Re(e^{i(2 sqrt x + nu pi/2)} S(x)) ]
//
// (nu = a - b - c + 1/2, H algebraic in x^{-a-k}, S in x^{(nu-k)/2}) can
// certify the requested tolerance it is used instead.

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "detail/mpfloat.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "specfun.hpp"

namespace besselprob::specfun {

enum class Hyp1F2Method { Exact, Series, Asymptotic };

inline const char* to_string(Hyp1F2Method m) {
    switch (m) {
        case Hyp1F2Method::Exact: return "exact";
        case Hyp1F2Method::Series: return "series";
        case Hyp1F2Method::Asymptotic: return "asymptotic";
    }
    return "?";
}

struct Hyp1F2Result {
    double value = 0.0;
    double error_bound = 0.0;
    Hyp1F2Method method = Hyp1F2Method::Exact;
    int digits = 0;  ///< working precision of the series path
};

/// Pieces of the large-argument expansion at X = -x > 0, already scaled by
/// Gamma(b)Gamma(c)/Gamma(a).
struct Hyp1F2Asymptotic {
    double algebraic = 0.0;     ///< full algebraic sum
    double oscillatory = 0.0;   ///< full oscillatory sum
    double alg_leading = 0.0;   ///< first algebraic term
    double osc_amplitude = 0.0; ///< G(b)G(c)/(G(a) sqrt(pi)) X^{nu/2}
    double osc_envelope = 0.0;  ///< bound on |oscillatory| for every phase
    double error_bound = 0.0;
    double value() const { return algebraic + oscillatory; }
};

namespace detail {

inline void check_hyp1f2_params(double a, double b, double c, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(c)) {
        throw DomainError("hyp1f2: parameters must be positive and finite");
    }
    if (!std::isfinite(x)) throw DomainError("hyp1f2: argument must be finite");
}

// Positive argument: all terms positive, long double is enough.
inline Hyp1F2Result hyp1f2_positive(double a, double b, double c, double x, int max_terms) {
    long double term = 1.0L, sum = 1.0L;
    int n = 0;
    for (; n < max_terms; ++n) {
        term *= (a + n) * static_cast<long double>(x) / ((b + n) * (c + n) * (n + 1.0L));
        sum += term;
        if (!std::isfinite(static_cast<double>(sum))) {
            throw RangeError("hyp1f2: overflow", 3.0 * std::cbrt(x));
        }
        if (term < 1e-21L * sum && n > std::cbrt(x)) break;
    }
    if (n == max_terms) throw AccuracyError("hyp1f2: series did not converge", 1.0);
    const double v = static_cast<double>(sum);
    return {v, v * 4e-16, Hyp1F2Method::Series, 19};
}

// log10 of the largest term magnitude of the alternating series.
inline double hyp1f2_log10_peak(double a, double b, double c, double X, int max_terms) {
    double l = 0.0, peak = 0.0;
    for (int n = 0; n < max_terms; ++n) {
        l += std::log10((a + n) * X / ((b + n) * (c + n) * (n + 1.0)));
        peak = std::max(peak, l);
        if (l < peak - 40.0) break;
    }
    return peak;
}

inline Hyp1F2Result hyp1f2_negative_series_mp(double a, double b, double c, double X,
                                              int digits, int max_terms) {
    using besselprob::detail::MpFloat;
    const mpfr_prec_t bits = besselprob::detail::digits_to_bits(digits);
    MpFloat term(bits, 1.0), sum(bits, 1.0), num(bits), den(bits), tmp(bits), mx(bits, X);
    double max_log2 = 0.0;
    int n = 0;
    bool done = false;
    for (; n < max_terms; ++n) {
        num.set(a);
        mpfr_add_ui(num.get(), num.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        num *= mx;
        den.set(b);
        mpfr_add_ui(den.get(), den.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        tmp.set(c);
        mpfr_add_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        den *= tmp;
        den.mul_d(static_cast<double>(n + 1));
        term *= num;
        term /= den;
        mpfr_neg(term.get(), term.get(), MPFR_RNDN);
        sum += term;
        const double l2 = term.log2_abs();
        max_log2 = std::max(max_log2, l2);
        if (n > std::sqrt(X) && l2 < sum.log2_abs() - static_cast<double>(bits) - 8.0) {
            done = true;
            break;
        }
    }
    const double tail = done ? std::exp2(term.log2_abs()) : std::numeric_limits<double>::infinity();
    const double err =
        std::exp2(max_log2 - static_cast<double>(bits) + 4.0) * (n + 2) + tail;
    const double v = sum.to_double();
    return {v, err + std::fabs(v) * 1.2e-16, Hyp1F2Method::Series, digits};
}

}  // namespace detail

/// Large-argument expansion of 1F2(a; b, c; -X). Both component series are
/// divergent and are cut at their smallest term; the bound is the first
/// omitted term plus rounding.
inline Hyp1F2Asymptotic hyp1f2_asymptotic(double a, double b, double c, double X) {
    detail::check_hyp1f2_params(a, b, c, -X);
    if (!(X > 0.0)) throw DomainError("hyp1f2_asymptotic: X must be positive");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double lX = std::log(X);
    const double lg = ln_gamma(b) + ln_gamma(c) - ln_gamma(a);
    Hyp1F2Asymptotic r;

    // Algebraic part: sum_k (-1)^k/k! G(a+k) / (G(b-a-k) G(c-a-k)) X^{-a-k}.
    double t = std::exp(ln_gamma(b) + ln_gamma(c) - a * lX) * rgamma(b - a) * rgamma(c - a);
    r.alg_leading = t;
    double alg = 0.0, alg_err = 0.0;
    {
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0;; ++k) {
            if (t == 0.0) {
                alg_err = 0.0;
                break;
            }
            if (std::fabs(t) > prev || k > 200) {
                alg_err = std::fabs(t);
                break;
            }
            alg += t;
            prev = std::fabs(t);
            const double kk = k + 1.0;
            t *= -(a + k) / kk * (b - a - kk) * (c - a - kk) / X;
            if (std::fabs(t) < eps * 1e-3 * std::fabs(alg)) {
                alg_err = std::fabs(t);
                break;
            }
        }
    }

    // Oscillatory part: c_0 = 1, c_j = -[c_{j-1} q1(nu-j+1) + c_{j-2} q0(nu-j+2)] / j.
    const double nu = a - b - c + 0.5;
    auto q1 = [&](double m) {
        return std::complex<double>(
            0.0, (4 * b * c + 4 * b * m - 2 * b + 4 * c * m - 2 * c + 3 * m * m - 5 * m + 1) / 4.0);
    };
    auto q0 = [&](double m) { return m * (2 * b + m - 2) * (2 * c + m - 2) / 8.0; };
    const double sx = std::sqrt(X);
    r.osc_amplitude = std::exp(lg + 0.5 * nu * lX) / std::sqrt(std::numbers::pi);
    std::complex<double> S = 1.0;
    double osc_err = 0.0, osc_abs = 1.0;
    {
        std::complex<double> cm2 = 0.0, cm1 = 1.0;  // c_{j-2} X^{-(j-2)/2}, c_{j-1} X^{-(j-1)/2}
        double prev = 1.0;
        for (int j = 1;; ++j) {
            const std::complex<double> cj =
                -(cm1 * q1(nu - j + 1) / sx + cm2 * q0(nu - j + 2) / X) / static_cast<double>(j);
            const double mag = std::abs(cj);
            if (mag == 0.0) {
                if (std::abs(cm1) == 0.0) break;  // two zeros in a row: the series terminates
            } else {
                if (mag > prev || j > 400) {
                    osc_err = mag;
                    break;
                }
                S += cj;
                osc_abs += mag;
                if (mag < eps * 1e-3 * std::abs(S)) {
                    osc_err = mag;
                    break;
                }
                prev = mag;
            }
            cm2 = cm1;
            cm1 = cj;
        }
    }
    const double phase = 2.0 * sx + 0.5 * nu * std::numbers::pi;
    const std::complex<double> e(std::cos(phase), std::sin(phase));
    r.algebraic = alg;
    r.oscillatory = r.osc_amplitude * (e * S).real();
    r.osc_envelope = r.osc_amplitude * (osc_abs + osc_err);
    r.error_bound = alg_err + r.osc_amplitude * osc_err +
                    8.0 * eps * (std::fabs(alg) + r.osc_amplitude * std::abs(S) * (1.0 + 2.0 * sx));
    return r;
}

/// 1F2 with an error bound and the method used. Never throws on accuracy;
/// compare `error_bound` with what the caller needs.
inline Hyp1F2Result hyp1f2_eval(double a, double b, double c, double x,
                                const PrecisionPolicy& pol = {}) {
    detail::check_hyp1f2_params(a, b, c, x);
    if (x == 0.0) return {1.0, 0.0, Hyp1F2Method::Exact, 0};
    if (x > 0.0) return detail::hyp1f2_positive(a, b, c, x, pol.series_terms_max);

    const double X = -x;
    double scale = 1.0;
    if (X > 16.0) {
        const auto as = hyp1f2_asymptotic(a, b, c, X);
        scale = std::max(std::fabs(as.alg_leading), as.osc_amplitude);
        if (as.error_bound <= pol.target_rel_tol * scale) {
            return {as.value(), as.error_bound, Hyp1F2Method::Asymptotic, 0};
        }
    }
    const double lost = detail::hyp1f2_log10_peak(a, b, c, X, pol.series_terms_max) -
                        std::min(0.0, std::log10(scale));
    int digits = pol.highprec_digits + static_cast<int>(std::ceil(lost)) + 10;
    Hyp1F2Result best;
    for (int attempt = 0; attempt < 4; ++attempt) {
        best = detail::hyp1f2_negative_series_mp(a, b, c, X, digits, pol.series_terms_max);
        if (best.error_bound <= std::max(pol.target_abs_tol * 1e-3, pol.target_rel_tol * 1e-3 *
                                                                       std::fabs(best.value))) {
            break;
        }
        digits += 40;
    }
    return best;
}

/// 1F2(a; b, c; x). Throws AccuracyError when the error bound exceeds
/// max(target_abs_tol, target_rel_tol |value|).
inline double hyp1f2(double a, double b, double c, double x, const PrecisionPolicy& pol = {}) {
    const auto r = hyp1f2_eval(a, b, c, x, pol);
    if (!(r.error_bound <= std::max(pol.target_abs_tol, pol.target_rel_tol * std::fabs(r.value)))) {
        throw AccuracyError("hyp1f2: tolerance not met", r.error_bound);
    }
    return r.value;
}

}  // namespace besselprob::specfun
