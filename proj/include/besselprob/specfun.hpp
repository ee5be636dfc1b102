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

// Scalar special-function kernels: log-gamma, digamma, Bessel J and I of
// real order and nonnegative argument, confluent 0F1, and Bessel zeros.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "detail/mpfloat.hpp"
#include "errors.hpp"
#include "precision.hpp"

namespace besselprob::specfun {

/// Order of a Bessel function. Rejects NaN and infinities; the admissible
/// range depends on the function (J and I need alpha > -1).
struct BesselOrder {
    explicit BesselOrder(double a) : alpha(a) {
        if (!std::isfinite(a)) throw DomainError("BesselOrder: order must be finite");
    }
    double alpha;
};

/// First positive zeros j_{alpha,1} < j_{alpha,2} < ... of J_alpha.
struct ZeroTable {
    double alpha = 0.0;
    std::vector<double> zeros;

    std::size_t size() const { return zeros.size(); }
    double operator[](std::size_t i) const { return zeros[i]; }
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 671/128, 14 terms; |error| < 2e-15 on (0, 10).
inline double ln_gamma_lanczos(double x) {
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
        -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
        .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
        -.261908384015814087e-4, .368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

// B_{2k} / (2k (2k-1)) for the Stirling series.
inline constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,      -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,    1.0 / 156.0,       -3617.0 / 122400.0};

inline double ln_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double corr = 0.0;
    double p = inv;
    for (double c : kStirling) {
        corr += c * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + corr;
}

// sin(pi x) with argument reduction, exact zeros at integers.
inline double sin_pi(double x) {
    const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
    if (r == 0.0 || std::fabs(r) == 1.0) return 0.0;
    if (r > 0.5) return std::sin(kPi * (1.0 - r));
    if (r < -0.5) return -std::sin(kPi * (1.0 + r));
    return std::sin(kPi * r);
}

}  // namespace detail

/// log Gamma(x) for x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("ln_gamma: argument must be positive and finite");
    }
    if (x < 0.5) return detail::ln_gamma_lanczos(x + 1.0) - std::log(x);
    if (x < 10.0) return detail::ln_gamma_lanczos(x);
    return detail::ln_gamma_stirling(x);
}

/// Gamma(x) for x > 0; RangeError past the overflow threshold.
inline double gamma(double x) {
    const double lg = ln_gamma(x);
    if (lg > 709.0) throw RangeError("gamma: overflow", lg);
    return std::exp(lg);
}

/// 1/Gamma(x) for any real x; exactly zero at the poles.
inline double rgamma(double x) {
    if (!std::isfinite(x)) throw DomainError("rgamma: argument must be finite");
    if (x > 0.0) {
        const double lg = ln_gamma(x);
        return std::exp(-lg);
    }
    if (x == std::floor(x)) return 0.0;
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    const double lg = ln_gamma(1.0 - x);
    return detail::sin_pi(x) * std::exp(lg) / detail::kPi;
}

/// Digamma psi(x) for x > 0: upward recurrence to x >= 10, then the
/// asymptotic series.
inline double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("digamma: argument must be positive and finite");
    }
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    // B_{2k} / (2k)
    static constexpr std::array<double, 7> b = {1.0 / 12.0,   -1.0 / 120.0,   1.0 / 252.0,
                                                -1.0 / 240.0, 1.0 / 132.0,    -691.0 / 32760.0,
                                                1.0 / 12.0};
    double series = 0.0;
    double p = inv2;
    for (double c : b) {
        series += c * p;
        p *= inv2;
    }
    return shift + std::log(x) - 0.5 / x - series;
}

/// Complex log Gamma for Re z > 0, returned modulo 2*pi*i. Only exp() of the
/// result is meaningful.
inline std::complex<double> ln_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw DomainError("ln_gamma: complex argument needs Re z > 0");
    std::complex<double> shift = 0.0;
    while (std::abs(z) < 15.0 || z.real() < 10.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> corr = 0.0;
    std::complex<double> p = inv;
    for (double c : detail::kStirling) {
        corr += c * p;
        p *= inv2;
    }
    return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * detail::kPi) + corr;
}

namespace detail {

using besselprob::detail::digits_to_bits;
using besselprob::detail::MpFloat;

struct SeriesValue {
    double value;
    double error;
};

// S = sum_n (-q)^n / (n! (b)_n) in long double, with a running error bound
// driven by the largest term (cancellation) and the truncated tail.
inline SeriesValue hyp0f1_neg_series_ld(double b, double q, int max_terms) {
    long double term = 1.0L;
    long double sum = 1.0L;
    long double max_abs = 1.0L;
    const long double lq = static_cast<long double>(q);
    int n = 1;
    for (; n < max_terms; ++n) {
        term *= -lq / (static_cast<long double>(n) * (static_cast<long double>(b) + (n - 1)));
        sum += term;
        max_abs = std::max(max_abs, std::fabs(term));
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && n * n > lq) break;
        if (term == 0.0L) break;
    }
    const long double eps = std::numeric_limits<long double>::epsilon();
    const double err = static_cast<double>(max_abs * eps * (n + 2) + std::fabs(term));
    return {static_cast<double>(sum), err};
}

// Same series at a chosen MPFR precision.
inline SeriesValue hyp0f1_neg_series_mp(double b, double z, int digits, int max_terms) {
    const mpfr_prec_t bits = digits_to_bits(digits);
    MpFloat q(bits, z);
    q *= q;
    q.div_ui(4);
    MpFloat term(bits, 1.0), sum(bits, 1.0), denom(bits), bn(bits);
    double max_log2 = 0.0;
    int n = 1;
    for (; n < max_terms; ++n) {
        bn.set(b);
        mpfr_add_ui(bn.get(), bn.get(), static_cast<unsigned long>(n - 1), MPFR_RNDN);
        mpfr_mul_ui(bn.get(), bn.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        term *= q;
        term /= bn;
        mpfr_neg(term.get(), term.get(), MPFR_RNDN);
        sum += term;
        const double l2 = term.log2_abs();
        max_log2 = std::max(max_log2, l2);
        if (l2 < sum.log2_abs() - static_cast<double>(bits) - 8.0 && n > z) break;
    }
    const double err = std::exp2(max_log2 - static_cast<double>(bits) + 4.0) * (n + 2) +
                       std::exp2(term.log2_abs());
    return {sum.to_double(), err};
}

// Hankel large-argument expansion; returns J and a truncation estimate.
inline SeriesValue bessel_j_hankel(double alpha, double z) {
    const double mu = 4.0 * alpha * alpha;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double last = 1.0;
    const double eightz = 8.0 * z;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (k * eightz);
        if (std::fabs(next) > std::fabs(term) && k > 2) break;  // divergent tail begins
        term = next;
        last = std::fabs(term);
        const int m = k % 4;
        if (m == 1) q += term;
        else if (m == 2) p -= term;
        else if (m == 3) q -= term;
        else p += term;
        if (last < 1e-18 * std::fabs(p) || term == 0.0) break;
    }
    // cos(z - phi) with phi = (alpha/2 + 1/4) pi, expanded to keep z exact.
    const double phi = (0.5 * alpha + 0.25) * kPi;
    const double cz = std::cos(z), sz = std::sin(z);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double cw = cz * cp + sz * sp;
    const double sw = sz * cp - cz * sp;
    const double amp = std::sqrt(2.0 / (kPi * z));
    const double value = amp * (p * cw - q * sw);
    const double err = amp * (last + 4.0 * std::numeric_limits<double>::epsilon() *
                                         (std::fabs(p) + std::fabs(q)) * (1.0 + z * 1e-16 * 8));
    return {value, err};
}

inline void check_bessel_args(const char* name, double alpha, double z) {
    if (!(alpha > -1.0)) throw DomainError(std::string(name) + ": order must exceed -1");
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw DomainError(std::string(name) + ": argument must be finite and nonnegative");
    }
    if (z == 0.0 && alpha < 0.0) {
        throw DomainError(std::string(name) + ": singular at z = 0 for negative order");
    }
}

}  // namespace detail

/// Crossover between the power series and the Hankel expansion for J.
inline double bessel_j_crossover(double alpha) { return std::max(16.0, 2.0 * alpha * alpha); }

/// J_alpha(z) by the power series, escalating to MPFR arithmetic when the
/// long-double sum cannot certify `target_abs_tol`.
inline detail::SeriesValue bessel_j_series(BesselOrder order, double z,
                                           const PrecisionPolicy& pol = {}) {
    const double alpha = order.alpha;
    detail::check_bessel_args("bessel_j", alpha, z);
    if (z == 0.0) return {alpha == 0.0 ? 1.0 : 0.0, 0.0};
    const double pref = (alpha == 0.0) ? 1.0
                                       : std::exp(alpha * std::log(0.5 * z) - ln_gamma(alpha + 1.0));
    const double q = 0.25 * z * z;
    auto s = detail::hyp0f1_neg_series_ld(alpha + 1.0, q, pol.series_terms_max);
    if (pref * s.error > 0.1 * pol.target_abs_tol) {
        // Roughly z/ln(10) digits cancel; add headroom on top of the policy.
        const int digits = pol.highprec_digits + static_cast<int>(z / 2.302585092994046) + 5;
        s = detail::hyp0f1_neg_series_mp(alpha + 1.0, z, digits, pol.series_terms_max);
    }
    return {pref * s.value, pref * s.error + std::fabs(pref * s.value) * 1e-16};
}

/// J_alpha(z) by the Hankel asymptotic expansion (valid for large z).
inline detail::SeriesValue bessel_j_asymptotic(BesselOrder order, double z) {
    detail::check_bessel_args("bessel_j", order.alpha, z);
    if (z == 0.0) throw DomainError("bessel_j_asymptotic: z must be positive");
    return detail::bessel_j_hankel(order.alpha, z);
}

/// Bessel function of the first kind J_alpha(z), alpha > -1, z >= 0.
inline double bessel_j(BesselOrder order, double z, const PrecisionPolicy& pol = {}) {
    detail::check_bessel_args("bessel_j", order.alpha, z);
    if (z >= bessel_j_crossover(order.alpha)) return detail::bessel_j_hankel(order.alpha, z).value;
    return bessel_j_series(order, z, pol).value;
}

/// log I_alpha(z) for alpha > -1, z > 0 (z = 0 allowed when alpha = 0).
inline double log_bessel_i(BesselOrder order, double z, const PrecisionPolicy& pol = {}) {
    const double alpha = order.alpha;
    detail::check_bessel_args("bessel_i", alpha, z);
    if (z == 0.0) {
        if (alpha == 0.0) return 0.0;
        return -std::numeric_limits<double>::infinity();
    }
    if (z > 500.0) {
        const double mu = 4.0 * alpha * alpha;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 100; ++k) {
            const double odd = 2.0 * k - 1.0;
            const double next = -term * (mu - odd * odd) / (k * 8.0 * z);
            if (std::fabs(next) > std::fabs(term)) break;
            term = next;
            sum += term;
            if (std::fabs(term) < 1e-18) break;
        }
        return z - 0.5 * std::log(2.0 * detail::kPi * z) + std::log(sum);
    }
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0;
    for (int n = 1; n < pol.series_terms_max; ++n) {
        term *= q / (n * (alpha + n));
        sum += term;
        if (term < 1e-17 * sum && n > z) break;
    }
    const double log_pref = (alpha == 0.0) ? 0.0 : alpha * std::log(0.5 * z) - ln_gamma(alpha + 1.0);
    return log_pref + std::log(sum);
}

/// Modified Bessel function I_alpha(z) by its positive power series.
inline double bessel_i(BesselOrder order, double z, const PrecisionPolicy& pol = {}) {
    const double l = log_bessel_i(order, z, pol);
    if (l > 709.0) throw RangeError("bessel_i: overflow", l);
    return std::exp(l);
}

/// Confluent limit function 0F1(;b;u) = sum u^n / (n! (b)_n), b > 0.
inline double hyp0f1(double b, double u, const PrecisionPolicy& pol = {}) {
    if (!(b > 0.0)) throw DomainError("hyp0f1: b must be positive");
    if (u >= 0.0) {
        if (u < 1.0) {
            double term = 1.0, sum = 1.0;
            for (int n = 1; n < 64; ++n) {
                term *= u / (n * (b + n - 1));
                sum += term;
                if (term < 1e-18 * sum) break;
            }
            return sum;
        }
        const double l = log_bessel_i(BesselOrder{b - 1.0}, 2.0 * std::sqrt(u), pol) +
                         ln_gamma(b) - 0.5 * (b - 1.0) * std::log(u);
        if (l > 709.0) throw RangeError("hyp0f1: overflow", l);
        return std::exp(l);
    }
    const double q = -u;
    if (q < 1.0) {
        double term = 1.0, sum = 1.0;
        for (int n = 1; n < 64; ++n) {
            term *= -q / (n * (b + n - 1));
            sum += term;
            if (std::fabs(term) < 1e-18) break;
        }
        return sum;
    }
    // 0F1(;b;-q) = Gamma(b) q^{(1-b)/2} J_{b-1}(2 sqrt q)
    const double z = 2.0 * std::sqrt(q);
    if (z < bessel_j_crossover(b - 1.0)) {
        auto s = detail::hyp0f1_neg_series_ld(b, q, pol.series_terms_max);
        if (s.error > 0.1 * pol.target_abs_tol) {
            const int digits = pol.highprec_digits + static_cast<int>(z / 2.302585092994046) + 5;
            s = detail::hyp0f1_neg_series_mp(b, z, digits, pol.series_terms_max);
        }
        return s.value;
    }
    return std::exp(ln_gamma(b) + 0.5 * (1.0 - b) * std::log(q)) *
           bessel_j(BesselOrder{b - 1.0}, z, pol);
}

/// First `count` positive zeros of J_alpha. Each zero starts from the McMahon
/// expansion and is polished by Newton steps kept inside a sign-change bracket.
inline ZeroTable bessel_zeros(BesselOrder order, int count, const PrecisionPolicy& pol = {}) {
    const double alpha = order.alpha;
    if (!(alpha > -1.0)) throw DomainError("bessel_zeros: order must exceed -1");
    if (count < 1) throw DomainError("bessel_zeros: count must be >= 1");
    const double mu = 4.0 * alpha * alpha;
    auto j = [&](double z) { return bessel_j(order, z, pol); };
    auto dj = [&](double z) {
        if (alpha > 0.0) {
            return 0.5 * (bessel_j(BesselOrder{alpha - 1.0}, z, pol) -
                          bessel_j(BesselOrder{alpha + 1.0}, z, pol));
        }
        return alpha / z * j(z) - bessel_j(BesselOrder{alpha + 1.0}, z, pol);
    };

    ZeroTable table;
    table.alpha = alpha;
    table.zeros.reserve(static_cast<std::size_t>(count));
    double prev = 0.0;
    for (int n = 1; n <= count; ++n) {
        const double beta = (n + 0.5 * alpha - 0.25) * detail::kPi;
        const double e8 = 8.0 * beta;
        double guess = beta - (mu - 1.0) / e8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e8 * e8 * e8);

        // Bracket: first sign change after the previous zero.
        double lo = (n == 1) ? std::min(1e-3, 0.25 * std::max(guess, 1e-6)) : prev + 1.0;
        double flo = j(lo);
        double hi = lo;
        double fhi = flo;
        const double step = 0.5;
        int steps = 0;
        while (true) {
            hi = lo + step;
            fhi = j(hi);
            if ((flo <= 0.0) != (fhi <= 0.0)) break;
            lo = hi;
            flo = fhi;
            if (++steps > 100000) {
                throw InternalError("bessel_zeros: failed to bracket zero " + std::to_string(n) +
                                    " of J_" + std::to_string(alpha));
            }
        }
        double z = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double fz = j(z);
            if (fz == 0.0) break;
            if ((fz <= 0.0) == (flo <= 0.0)) {
                lo = z;
                flo = fz;
            } else {
                hi = z;
            }
            const double d = dj(z);
            double next = (d != 0.0) ? z - fz / d : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const double dz = std::fabs(next - z);
            z = next;
            if (dz <= 4.0 * std::numeric_limits<double>::epsilon() * z || hi - lo < 1e-15 * z) break;
        }
        const double resid = std::fabs(j(z));
        if (!(resid <= 10.0 * pol.target_abs_tol)) {
            throw InternalError("bessel_zeros: residual " + std::to_string(resid) + " at zero " +
                                std::to_string(n));
        }
        table.zeros.push_back(z);
        prev = z;
    }
    return table;
}

}  // namespace besselprob::specfun
