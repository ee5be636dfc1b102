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

// Power semicircle laws, their characteristic functions on the real and
// imaginary axes, the Bessel hitting time T_alpha sampled through its
// spectral representation, and checks that (h(t), 1/h(it)) is a van Dantzig
// pair.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "precision.hpp"
#include "quad.hpp"
#include "random.hpp"
#include "specfun.hpp"

namespace besselprob::vandantzig {

/// Law on (-1, 1) with density proportional to (1 - x^2)^{alpha - 1/2}.
struct PowerSemicircle {
    explicit PowerSemicircle(double a) : alpha(a) {
        if (!std::isfinite(a) || !(a > -0.5 + 1e-9)) {
            throw DomainError("PowerSemicircle: alpha must exceed -1/2");
        }
    }
    double alpha;
};

inline double semicircle_density(const PowerSemicircle& model, double x) {
    if (!(x > -1.0 && x < 1.0)) return 0.0;
    const double a = model.alpha;
    const double lc = specfun::ln_gamma(a + 1.0) - 0.5 * std::log(std::numbers::pi) -
                      specfun::ln_gamma(a + 0.5);
    return std::exp(lc + (a - 0.5) * std::log1p(-x * x));
}

/// h(t) = Gamma(alpha+1) (|t|/2)^{-alpha} J_alpha(|t|).
inline double semicircle_cf(const PowerSemicircle& model, double t, const PrecisionPolicy& pol = {}) {
    const double a = model.alpha;
    const double x = std::fabs(t);
    if (x < 1e-2) {
        const double q = -0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int n = 1; n < 12; ++n) {
            term *= q / (n * (a + n));
            sum += term;
        }
        return sum;
    }
    const double pref = std::exp(specfun::ln_gamma(a + 1.0) - a * std::log(0.5 * x));
    return pref * specfun::bessel_j(specfun::BesselOrder{a}, x, pol);
}

/// log h(it) = log[Gamma(alpha+1) (|t|/2)^{-alpha} I_alpha(|t|)].
inline double log_semicircle_cf_imag_axis(const PowerSemicircle& model, double t,
                                          const PrecisionPolicy& pol = {}) {
    const double a = model.alpha;
    const double x = std::fabs(t);
    if (x < 1e-2) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int n = 1; n < 12; ++n) {
            term *= q / (n * (a + n));
            sum += term;
        }
        return std::log(sum);
    }
    return specfun::ln_gamma(a + 1.0) - a * std::log(0.5 * x) +
           specfun::log_bessel_i(specfun::BesselOrder{a}, x, pol);
}

inline double semicircle_cf_imag_axis(const PowerSemicircle& model, double t,
                                      const PrecisionPolicy& pol = {}) {
    const double l = log_semicircle_cf_imag_axis(model, t, pol);
    if (l > 709.0) throw RangeError("semicircle_cf_imag_axis: overflow", l);
    return std::exp(l);
}

struct LommelValue {
    double cos_part;  ///< normalized cosine integral, equals J_alpha(t)
    double sin_part;  ///< normalized sine integral, zero by symmetry
    double abs_error_estimate;
};

/// (sqrt(pi) Gamma(alpha+1/2))^{-1} (t/2)^alpha times the integral of
/// e^{itx} (1 - x^2)^{alpha - 1/2} over (-1, 1), by tanh-sinh.
inline LommelValue lommel_integral(double alpha, double t, double tol = 1e-12) {
    PowerSemicircle{alpha};
    const double e = alpha - 0.5;
    const double pref = std::exp(alpha * std::log(0.5 * t) - 0.5 * std::log(std::numbers::pi) -
                                 specfun::ln_gamma(alpha + 0.5));
    quad::GapFunction fc = [&](double x, double l, double h) { return std::cos(t * x) * std::pow(l * h, e); };
    quad::GapFunction fs = [&](double x, double l, double h) { return std::sin(t * x) * std::pow(l * h, e); };
    const auto c = quad::tanh_sinh(fc, -1.0, 1.0, tol / std::max(pref, 1e-300));
    const auto s = quad::tanh_sinh(fs, -1.0, 1.0, tol / std::max(pref, 1e-300));
    return {pref * c.value, pref * s.value, pref * (c.abs_error_estimate + s.abs_error_estimate)};
}

enum class Axis { Real, Imaginary };

/// Power sums over the zeros beyond the first N: inv[k] = sum_{n>N} j_n^{-2k}
/// for k = 1..4 (inv[0] unused).
struct ZeroTail {
    std::array<double, 5> inv{};
};

namespace detail {

// 0F1(; alpha+1; lambda/2) in long double for |lambda/2| <= 1e5.
inline long double hyp0f1_ld(double alpha, double lambda, const PrecisionPolicy& pol) {
    const long double u = 0.5L * lambda;
    long double term = 1.0L, sum = 1.0L;
    for (int n = 1; n < pol.series_terms_max; ++n) {
        term *= u / (n * (alpha + n));
        sum += term;
        if (std::fabs(term) < 1e-21L * sum && n > std::sqrt(std::fabs(static_cast<double>(u)))) break;
    }
    return sum;
}

// d/dlambda of 1/0F1 at the origin: five-point central stencil at step 1e-5.
inline double lt_derivative_at_zero(double alpha, const PrecisionPolicy& pol) {
    const double h = 1e-5;
    auto f = [&](double x) { return 1.0L / hyp0f1_ld(alpha, x, pol); };
    const long double d = (-f(2 * h) + 8.0L * f(h) - 8.0L * f(-h) + f(-2 * h)) / (12.0L * h);
    return static_cast<double>(d);
}

}  // namespace detail

/// Laplace transform E exp(-lambda T_alpha) = 1 / 0F1(; alpha+1; lambda/2),
/// summed directly as a positive series (large arguments go through log I).
inline double hitting_time_lt_alpha(double alpha, double lambda, const PrecisionPolicy& pol = {}) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("hitting_time_lt: lambda must be nonnegative");
    }
    const double u = 0.5 * lambda;
    if (u > 1e5) {
        const double l = specfun::ln_gamma(alpha + 1.0) - 0.5 * alpha * std::log(u) +
                         specfun::log_bessel_i(specfun::BesselOrder{alpha}, 2.0 * std::sqrt(u), pol);
        return std::exp(-l);
    }
    return static_cast<double>(1.0L / detail::hyp0f1_ld(alpha, lambda, pol));
}

/// Mean of T_alpha, -LT'(0).
inline double hitting_time_mean(double alpha, const PrecisionPolicy& pol = {}) {
    return -detail::lt_derivative_at_zero(alpha, pol);
}

/// Tail sums. The quadratic one is -LT'(0)/2 minus the head; higher powers
/// use the two-term McMahon expansion and Euler-Maclaurin from the midpoint.
inline ZeroTail zero_tail(double alpha, const specfun::ZeroTable& zeros, int N,
                          const PrecisionPolicy& pol = {}) {
    if (N < 1 || static_cast<std::size_t>(N) > zeros.size()) throw DomainError("zero_tail: bad N");
    double head = 0.0;
    for (int n = N - 1; n >= 0; --n) {
        const double j = zeros[static_cast<std::size_t>(n)];
        head += 1.0 / (j * j);
    }
    ZeroTail t;
    t.inv[1] = std::max(0.0, -0.5 * detail::lt_derivative_at_zero(alpha, pol) - head);
    const double m = (N + 0.5 + 0.5 * alpha - 0.25) * std::numbers::pi;
    const double pi = std::numbers::pi;
    const double mu1 = 4.0 * alpha * alpha - 1.0;
    for (int k = 2; k <= 4; ++k) {
        const double m2k1 = std::pow(m, 2.0 * k + 1.0);
        t.inv[static_cast<std::size_t>(k)] = 1.0 / ((2.0 * k - 1.0) * pi * std::pow(m, 2.0 * k - 1.0))
                                             - k * pi / (12.0 * m2k1) + k * mu1 / (4.0 * (2.0 * k + 1.0) * pi * m2k1);
    }
    return t;
}

/// Truncated Hadamard product over the first N zeros with the tail factor
/// exp(-sum_k z^{2k} S_k / k) restored; on the imaginary axis z^2 = -t^2.
inline double hadamard_cf(const PowerSemicircle& model, double z, Axis axis, const specfun::ZeroTable& zeros,
                          int N, const PrecisionPolicy& pol = {}) {
    if (N < 1) throw DomainError("hadamard_cf: N must be >= 1");
    if (z == 0.0) return 1.0;
    const auto tail = zero_tail(model.alpha, zeros, N, pol);
    const double z2 = (axis == Axis::Real) ? z * z : -z * z;
    double prod = 1.0;
    for (int n = 0; n < N; ++n) {
        const double j = zeros[static_cast<std::size_t>(n)];
        prod *= 1.0 - z2 / (j * j);
    }
    double expo = 0.0, zk = 1.0;
    for (int k = 1; k <= 4; ++k) {
        zk *= z2;
        expo -= zk * tail.inv[static_cast<std::size_t>(k)] / k;
    }
    return prod * std::exp(expo);
}

inline double hadamard_cf(const PowerSemicircle& model, double z, Axis axis, int N,
                          const PrecisionPolicy& pol = {}) {
    const auto zeros = specfun::bessel_zeros(specfun::BesselOrder{model.alpha}, N, pol);
    return hadamard_cf(model, z, axis, zeros, N, pol);
}

/// First hitting time of one by a Bessel process of dimension 2 alpha + 1,
/// represented through the first N zeros of J_alpha.
struct HittingTimeModel {
    double alpha = 0.0;
    specfun::ZeroTable zeros;
    int N = 0;
    double tail_mean = 0.0;  ///< sum over n > N of 2 / j_n^2
    ZeroTail tail;           ///< power sums over n > N
};

inline HittingTimeModel make_hitting_time_model(double alpha, int N = 200, const PrecisionPolicy& pol = {}) {
    PowerSemicircle{alpha};
    if (N < 1) throw DomainError("HittingTimeModel: N must be >= 1");
    HittingTimeModel m;
    m.alpha = alpha;
    m.N = N;
    m.zeros = specfun::bessel_zeros(specfun::BesselOrder{alpha}, N, pol);
    const auto tail = zero_tail(alpha, m.zeros, N, pol);
    m.tail_mean = 2.0 * tail.inv[1];
    m.tail = tail;
    return m;
}

inline double hitting_time_lt(const HittingTimeModel& model, double lambda, const PrecisionPolicy& pol = {}) {
    if (!(lambda >= 0.0)) throw DomainError("hitting_time_lt: lambda must be nonnegative");
    return hitting_time_lt_alpha(model.alpha, lambda, pol);
}

/// prod_{n<=N} (1 + 2 lambda / j^2)^{-1} with the tail factor restored.
inline double hitting_time_lt_product(const HittingTimeModel& model, double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("hitting_time_lt: lambda must be nonnegative");
    double lp = 0.0;
    for (int n = 0; n < model.N; ++n) {
        const double j = model.zeros[static_cast<std::size_t>(n)];
        lp -= std::log1p(2.0 * lambda / (j * j));
    }
    // log prod_{n>N} (1 + x/j^2)^{-1} = sum_k (-x)^k S_k / k
    double xk = 1.0;
    for (int k = 1; k <= 4; ++k) {
        xk *= -2.0 * lambda;
        lp += xk * model.tail.inv[static_cast<std::size_t>(k)] / k;
    }
    return std::exp(lp);
}

namespace detail {

inline double draw_hitting_time(const HittingTimeModel& model, std::uint64_t seed, std::uint64_t i) {
    random::CounterRng rng(seed, 0, i);
    double t = model.tail_mean;
    for (int n = model.N - 1; n >= 0; --n) {
        const double j = model.zeros[static_cast<std::size_t>(n)];
        t += 2.0 * rng.exponential() / (j * j);
    }
    return t;
}
}  // namespace detail

/// T = sum_{n<=N} 2 E_n / j_n^2 + tail_mean with independent unit exponentials.
inline std::vector<double> sample_hitting_time(const HittingTimeModel& model, std::uint64_t seed, std::size_t count,
                                               unsigned threads = 1) {
    if (count < 1) throw DomainError("sample_hitting_time: count must be >= 1");
    if (model.N < 50) throw DomainError("sample_hitting_time: need at least 50 zeros");
    std::vector<double> out(count);
    parallel_for(count, threads, [&](std::size_t i) { out[i] = detail::draw_hitting_time(model, seed, i); });
    return out;
}

/// Y = sqrt(T) Z, the Brownian motion run until T_alpha.
inline std::vector<double> sample_subordinated(const HittingTimeModel& model, std::uint64_t seed, std::size_t count,
                                               unsigned threads = 1) {
    if (count < 1) throw DomainError("sample_subordinated: count must be >= 1");
    if (model.N < 50) throw DomainError("sample_subordinated: need at least 50 zeros");
    std::vector<double> out(count);
    parallel_for(count, threads, [&](std::size_t i) {
        random::CounterRng rng(seed, 1, i);
        out[i] = std::sqrt(detail::draw_hitting_time(model, seed, i)) * rng.normal();
    });
    return out;
}

struct PairReport {
    double alpha = 0.0;
    std::vector<double> grid;
    double max_identity_error = 0.0;
    double bochner_min_eigenvalue = 0.0;
    double mc_cf_max_z_score = 0.0;
    std::size_t mc_count = 0;
    std::uint64_t seed = 0;
};

/// Smallest eigenvalue of [phi(t_i - t_j)] for phi(t) = 1/h(it) on 64
/// equispaced points of [0, grid_max].
inline double bochner_min_eigenvalue(const PowerSemicircle& model, double grid_max, const PrecisionPolicy& pol = {}) {
    constexpr int n = 64;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double dt = (i - j) * grid_max / (n - 1);
            const double v = hitting_time_lt_alpha(model.alpha, 0.5 * dt * dt, pol);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// Checks the chain h(it) * E exp(-t^2 T / 2) = 1 on `grid`, positive
/// definiteness of 1/h(i.), and the Monte Carlo characteristic function of Y.
inline PairReport verify_pair(const PowerSemicircle& model, const std::vector<double>& grid, std::size_t mc_count,
                              std::uint64_t seed, unsigned threads = 1, int N = 200,
                              const PrecisionPolicy& pol = {}) {
    if (grid.empty()) throw DomainError("verify_pair: grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0 || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw DomainError("verify_pair: grid must be finite, nonnegative and strictly increasing");
        }
    }
    PairReport r;
    r.alpha = model.alpha;
    r.grid = grid;
    r.mc_count = mc_count;
    r.seed = seed;
    for (double t : grid) {
        const double lhs = semicircle_cf_imag_axis(model, t, pol) * hitting_time_lt_alpha(model.alpha, 0.5 * t * t, pol);
        r.max_identity_error = std::max(r.max_identity_error, std::fabs(lhs - 1.0));
    }
    r.bochner_min_eigenvalue = bochner_min_eigenvalue(model, grid.back(), pol);
    if (mc_count > 1) {
        const auto hm = make_hitting_time_model(model.alpha, N, pol);
        const auto y = sample_subordinated(hm, seed, mc_count, threads);
        for (double t : {0.5, 1.0, 2.0}) {
            double s1 = 0.0, s2 = 0.0;
            for (double v : y) {
                const double c = std::cos(t * v);
                s1 += c;
                s2 += c * c;
            }
            const double n = static_cast<double>(mc_count);
            const double mean = s1 / n;
            const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
            const double se = std::sqrt(var / n);
            const double target = 1.0 / semicircle_cf_imag_axis(model, t, pol);
            const double z = se > 0.0 ? std::fabs(mean - target) / se : 0.0;
            r.mc_cf_max_z_score = std::max(r.mc_cf_max_z_score, z);
        }
    }
    return r;
}

struct SelfReciprocalReport {
    double max_abs_deviation = 0.0;
    std::size_t evaluated = 0;
    std::vector<double> skipped;  ///< grid points within 1e-6 of a zero of J_alpha
};

/// g(t) g(it) - 1 for g = J_alpha / I_alpha, with g(it) formed as
/// h(it) / h(t) from the characteristic-function routines.
inline SelfReciprocalReport self_reciprocal_check(const PowerSemicircle& model, const std::vector<double>& grid,
                                                  const PrecisionPolicy& pol = {}) {
    SelfReciprocalReport rep;
    double tmax = 0.0;
    for (double t : grid) tmax = std::max(tmax, std::fabs(t));
    const int nz = static_cast<int>(tmax / std::numbers::pi + model.alpha / 2.0 + 3.0);
    const auto zeros = specfun::bessel_zeros(specfun::BesselOrder{model.alpha}, std::max(nz, 1), pol);
    const specfun::BesselOrder order{model.alpha};
    for (double t : grid) {
        const double x = std::fabs(t);
        bool near_zero = x == 0.0;
        for (double z : zeros.zeros) near_zero = near_zero || std::fabs(z - x) < 1e-6;
        if (near_zero) {
            rep.skipped.push_back(t);
            continue;
        }
        const double g = specfun::bessel_j(order, x, pol) / specfun::bessel_i(order, x, pol);
        const double gi = semicircle_cf_imag_axis(model, t, pol) / semicircle_cf(model, t, pol);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::fabs(g * gi - 1.0));
        ++rep.evaluated;
    }
    return rep;
}

}  // namespace besselprob::vandantzig
