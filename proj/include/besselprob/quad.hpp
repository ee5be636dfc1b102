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

// Quadrature engines: adaptive Gauss-Legendre, tanh-sinh and exp-sinh
// double-exponential rules, Wynn's epsilon algorithm, and the two oscillatory
// infinite integrals the library needs (Fresnel moments and the
// Weber-Schafheitlin integral of J_alpha^2).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"
#include "precision.hpp"
#include "specfun.hpp"

namespace besselprob::quad {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// f(x, x - lo, hi - x). The two gaps are exact even where x itself rounds
/// to an endpoint, which is what endpoint-singular integrands need.
using GapFunction = std::function<double(double, double, double)>;

namespace detail {

inline constexpr double kPi = std::numbers::pi;

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

inline GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        const double w = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
        r.nodes[static_cast<std::size_t>(i)] = -static_cast<double>(x);
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(x);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

}  // namespace detail

/// Gauss-Legendre rule with 16, 32, 64 or 128 points.
inline const detail::GaussRule& gauss_rule(int n) {
    static const detail::GaussRule r16 = detail::make_gauss_rule(16);
    static const detail::GaussRule r32 = detail::make_gauss_rule(32);
    static const detail::GaussRule r64 = detail::make_gauss_rule(64);
    static const detail::GaussRule r128 = detail::make_gauss_rule(128);
    switch (n) {
        case 16: return r16;
        case 32: return r32;
        case 64: return r64;
        case 128: return r128;
        default: throw DomainError("gauss_rule: supported sizes are 16, 32, 64, 128");
    }
}

template <class F>
double gauss_fixed(F&& f, double lo, double hi, int n = 32) {
    const auto& r = gauss_rule(n);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return h * s;
}

/// Globally adaptive Gauss-Legendre: every panel is integrated once with the
/// 32-point rule and once as two halves; the panel with the largest
/// disagreement is split until the disagreements sum below `tol`.
template <class F>
QuadratureResult gauss_legendre(F&& f, double lo, double hi, double tol, int max_panels = 2000) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("gauss_legendre: need finite lo < hi");
    }
    if (!(tol > 0.0)) throw DomainError("gauss_legendre: tol must be positive");
    struct Panel {
        double lo, hi, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    QuadratureResult res;
    auto eval = [&](double a, double b) {
        const double m = 0.5 * (a + b);
        const double whole = gauss_fixed(f, a, b);
        const double halves = gauss_fixed(f, a, m) + gauss_fixed(f, m, b);
        res.evaluations += 96;
        return Panel{a, b, halves, std::fabs(whole - halves)};
    };
    std::priority_queue<Panel> heap;
    heap.push(eval(lo, hi));
    double total_err = heap.top().error;
    int panels = 1;
    while (total_err > tol && panels < max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.lo + worst.hi);
        if (!(m > worst.lo && m < worst.hi)) {
            heap.push(worst);
            break;
        }
        const Panel l = eval(worst.lo, m), r = eval(m, worst.hi);
        heap.push(l);
        heap.push(r);
        ++panels;
        total_err = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            total_err += copy.top().error;
            copy.pop();
        }
    }
    std::vector<double> parts;
    parts.reserve(heap.size());
    while (!heap.empty()) {
        parts.push_back(heap.top().value);
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::fabs(x) < std::fabs(y); });
    for (double v : parts) res.value += v;
    res.abs_error_estimate = total_err;
    res.converged = total_err <= tol;
    return res;
}

/// Double-exponential (tanh-sinh) rule on [lo, hi] with gap-aware integrand.
/// Each level halves the step; the difference between successive levels is
/// the error estimate. A rule whose outermost contributions stay large while
/// the levels fail to settle reports divergence.
inline QuadratureResult tanh_sinh(const GapFunction& f, double lo, double hi, double tol,
                                  int max_level = 10) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("tanh_sinh: need finite lo < hi");
    }
    if (!(tol > 0.0)) throw DomainError("tanh_sinh: tol must be positive");
    const double half = 0.5 * (hi - lo);
    const double t_max = 6.0;
    QuadratureResult res;
    double c5 = 0.0, c6 = 0.0;  // contributions at t = 5 and t = 6
    // Contribution of abscissa t (both signs when t > 0).
    auto point = [&](double t) {
        const double u = 0.5 * detail::kPi * std::sinh(t);
        const double e = std::exp(-2.0 * std::fabs(u));
        const double gap = half * 2.0 * e / (1.0 + e);                  // distance to near end
        const double w = half * 0.5 * detail::kPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (gap == 0.0 || w == 0.0) return 0.0;
        double s = 0.0;
        const double far = 2.0 * half - gap;
        if (t == 0.0) {
            ++res.evaluations;
            return w * f(lo + half, half, half);
        }
        s += w * f(hi - gap, far, gap);
        s += w * f(lo + gap, gap, far);
        res.evaluations += 2;
        if (t == 5.0) c5 = std::fabs(s);
        if (t == 6.0) c6 = std::fabs(s);
        return s;
    };
    double h = 1.0;
    double sum = point(0.0);
    for (double t = h; t <= t_max; t += h) sum += point(t);
    double estimate = h * sum;
    double diff = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += point(t);
        const double next = h * sum;
        diff = std::fabs(next - estimate);
        estimate = next;
        if (!std::isfinite(estimate)) break;
        if (level >= 3 && diff <= 0.25 * tol) break;
    }
    // Outermost contributions that do not shrink mean the mass sits beyond
    // any finite truncation of the rule.
    if (!std::isfinite(estimate) || (c6 >= c5 && c6 > tol)) {
        throw DivergenceError("tanh_sinh: integral appears to diverge");
    }
    res.value = estimate;
    res.abs_error_estimate = diff + c6 + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(estimate);
    res.converged = res.abs_error_estimate <= tol;
    return res;
}

/// tanh_sinh for a plain integrand; nodes that round onto an endpoint are skipped.
template <class F>
QuadratureResult tanh_sinh(F&& f, double lo, double hi, double tol, int max_level = 10)
    requires std::is_invocable_r_v<double, F, double>
{
    GapFunction g = [&](double x, double, double) {
        if (x <= lo || x >= hi) return 0.0;
        return f(x);
    };
    return tanh_sinh(g, lo, hi, tol, max_level);
}

/// exp-sinh rule for [lo, inf): x = lo + exp(pi/2 sinh t). `f(x, x - lo)`.
inline QuadratureResult exp_sinh(const std::function<double(double, double)>& f, double lo, double tol,
                                 int max_level = 10) {
    if (!std::isfinite(lo)) throw DomainError("exp_sinh: lo must be finite");
    if (!(tol > 0.0)) throw DomainError("exp_sinh: tol must be positive");
    QuadratureResult res;
    auto point = [&](double t) {
        const double u = 0.5 * detail::kPi * std::sinh(t);
        if (u > 700.0 || u < -700.0) return 0.0;
        const double gap = std::exp(u);
        const double w = 0.5 * detail::kPi * std::cosh(t) * gap;
        ++res.evaluations;
        const double v = f(lo + gap, gap);
        return v == 0.0 ? 0.0 : w * v;
    };
    const double t_lo = -6.8, t_hi = 6.8;
    double h = 1.0;
    auto sweep = [&](double start, double step) {
        double s = 0.0;
        for (double t = start; t <= t_hi; t += step) {
            const double c = point(t);
            s += c;
            if (t > 2.0 && std::fabs(c) < 1e-300) break;  // integrand has died out
        }
        for (double t = start - step; t >= t_lo; t -= step) s += point(t);
        return s;
    };
    double sum = sweep(0.0, h);
    double estimate = h * sum;
    double diff = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // New abscissae are the odd multiples of h.
        double s = 0.0;
        for (double t = h; t <= t_hi; t += 2.0 * h) {
            const double c = point(t);
            s += c;
            if (t > 2.0 && std::fabs(c) < 1e-300) break;
        }
        for (double t = -h; t >= t_lo; t -= 2.0 * h) s += point(t);
        sum += s;
        const double next = h * sum;
        diff = std::fabs(next - estimate);
        estimate = next;
        if (level >= 3 && diff <= 0.25 * tol) break;
    }
    res.value = estimate;
    res.abs_error_estimate = diff;
    res.converged = std::isfinite(estimate) && diff <= tol;
    return res;
}

struct Extrapolation {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
};

/// Wynn's epsilon algorithm on partial sums `s`. Returns the even-column
/// entry with the smallest estimated error.
inline Extrapolation wynn_epsilon(const std::vector<double>& s) {
    Extrapolation best;
    const std::size_t n = s.size();
    if (n == 0) return best;
    best.value = s.back();
    if (n == 1) return best;
    best.error = std::fabs(s[n - 1] - s[n - 2]);
    std::vector<double> prev2(n + 1, 0.0), prev(s), cur;
    double last_even = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        cur.assign(prev.size() - 1, 0.0);
        bool degenerate = false;
        for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
            const double d = prev[j + 1] - prev[j];
            const double mag = std::max(std::fabs(prev[j]), std::fabs(prev[j + 1]));
            if (d == 0.0 || std::fabs(d) <= 1e-15 * mag) {
                degenerate = true;
                break;
            }
            cur[j] = prev2[j + 1] + 1.0 / d;
        }
        if (degenerate) break;
        if (k % 2 == 0) {
            const double v = cur.back();
            double e = std::fabs(v - last_even);
            if (cur.size() >= 2) e += std::fabs(v - cur[cur.size() - 2]);
            if (std::isfinite(v) && e < best.error) {
                best.value = v;
                best.error = e;
            }
            last_even = v;
        }
        prev2 = std::move(prev);
        prev = cur;
        if (prev.size() < 2) break;
    }
    return best;
}

/// Integral of z^{mu-1} cos z over (0, inf) for 0 < mu < 1: tanh-sinh on
/// [0, pi/2], Gauss-Legendre between consecutive zeros of cos, then Wynn's
/// epsilon on the alternating partial sums.
inline QuadratureResult fresnel_cos_moment(double mu, double tol = 1e-12, int panels = 40) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError("fresnel_cos_moment: need 0 < mu < 1");
    QuadratureResult res;
    GapFunction head_f = [mu](double x, double gap_lo, double) {
        return std::pow(gap_lo, mu - 1.0) * std::cos(x);
    };
    const auto head = tanh_sinh(head_f, 0.0, 0.5 * detail::kPi, 0.1 * tol);
    res.evaluations += head.evaluations;
    double partial = head.value;
    double quad_err = head.abs_error_estimate;
    std::vector<double> sums;
    auto g = [mu](double z) { return std::pow(z, mu - 1.0) * std::cos(z); };
    for (int k = 1; k <= panels; ++k) {
        const double a = (k - 0.5) * detail::kPi, b = (k + 0.5) * detail::kPi;
        const double v32 = gauss_fixed(g, a, b, 32);
        const double v64 = gauss_fixed(g, a, b, 64);
        res.evaluations += 96;
        quad_err += std::fabs(v64 - v32);
        partial += v64;
        sums.push_back(partial);
    }
    const auto ex = wynn_epsilon(sums);
    res.value = ex.value;
    res.abs_error_estimate = ex.error + quad_err;
    res.converged = res.abs_error_estimate <= tol;
    return res;
}

/// Breakpoints and acceleration settings for the Weber-Schafheitlin integral.
struct OscillatoryPlan {
    double alpha = 0.0;
    double s = 0.0;
    std::vector<double> breakpoints;  ///< strictly increasing panel ends
    int acceleration_depth = 12;
    int first_cutoff = 0;  ///< index of the first breakpoint used as a tail cutoff
};

/// Right-hand side Gamma(s)Gamma(alpha+1/2-s) / (2 sqrt(pi) Gamma(1/2+s) Gamma(alpha+1/2+s)).
inline double ws_rhs(double alpha, double s) {
    using specfun::ln_gamma;
    return std::exp(ln_gamma(s) + ln_gamma(alpha + 0.5 - s) - ln_gamma(0.5 + s) -
                    ln_gamma(alpha + 0.5 + s)) /
           (2.0 * std::sqrt(detail::kPi));
}

inline void check_ws_args(double alpha, double s) {
    if (!(alpha > -0.5) || !std::isfinite(alpha)) throw DomainError("ws_integral: need alpha > -1/2");
    if (!(s > 0.0 && s < alpha + 0.5)) throw DomainError("ws_integral: need 0 < s < alpha + 1/2");
}

/// Default plan: panel ends at the zeros of J_alpha, optionally shifted by
/// `shift`, with the tail cutoffs starting past max(40, 3 alpha^2).
inline OscillatoryPlan make_ws_plan(double alpha, double s, double shift = 0.0, int depth = 12,
                                    const PrecisionPolicy& pol = {}) {
    check_ws_args(alpha, s);
    if (depth < 4) throw DomainError("make_ws_plan: acceleration depth must be >= 4");
    const double z0 = std::max(40.0, 3.0 * alpha * alpha);
    const int n0 = static_cast<int>(std::ceil(z0 / detail::kPi + 0.5 * alpha + 1.0));
    const auto zeros = specfun::bessel_zeros(specfun::BesselOrder{alpha}, n0 + depth + 1, pol);
    OscillatoryPlan plan;
    plan.alpha = alpha;
    plan.s = s;
    plan.acceleration_depth = depth;
    for (double z : zeros.zeros) plan.breakpoints.push_back(z + shift);
    std::size_t i = 0;
    while (i < plan.breakpoints.size() && plan.breakpoints[i] < z0) ++i;
    plan.first_cutoff = static_cast<int>(i);
    if (plan.first_cutoff + depth > static_cast<int>(plan.breakpoints.size())) {
        throw InternalError("make_ws_plan: not enough breakpoints");
    }
    return plan;
}

namespace detail {

// Coefficients of P(z) and Q(z) in J = sqrt(2/(pi z)) (P cos w - Q sin w)
// as power series in 1/z: out[m] multiplies z^{-m}.
inline void hankel_pq(double alpha, int terms, std::vector<double>& p, std::vector<double>& q) {
    const double mu = 4.0 * alpha * alpha;
    p.assign(static_cast<std::size_t>(terms), 0.0);
    q.assign(static_cast<std::size_t>(terms), 0.0);
    double a = 1.0;  // a_k(alpha)
    for (int k = 0; k < terms; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            a *= (mu - odd * odd) / (k * 8.0);
        }
        const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0) p[static_cast<std::size_t>(k)] = sign * a;
        else q[static_cast<std::size_t>(k)] = sign * a;
    }
}

}  // namespace detail

/// Integral of z^{-2s} J_alpha(z)^2 over (Z, inf) from the large-argument
/// expansion, integrated term by term (the oscillatory parts by repeated
/// integration by parts). Returns value and a truncation estimate.
inline Extrapolation ws_tail(double alpha, double s, double Z) {
    const int terms = 24;
    std::vector<double> p, q;
    detail::hankel_pq(alpha, terms, p, q);
    std::vector<double> sum2(terms, 0.0), diff2(terms, 0.0), cross(terms, 0.0);
    for (int i = 0; i < terms; ++i) {
        for (int j = 0; i + j < terms; ++j) {
            const auto ij = static_cast<std::size_t>(i + j);
            const double pp = p[i] * p[j], qq = q[i] * q[j];
            sum2[ij] += pp + qq;
            diff2[ij] += pp - qq;
            cross[ij] += 2.0 * p[i] * q[j];
        }
    }
    const std::complex<double> two_i(0.0, 2.0);
    const double phi0 = alpha * detail::kPi + 0.5 * detail::kPi;
    const std::complex<double> rot = std::exp(std::complex<double>(0.0, 2.0 * Z - phi0));
    // K(p) = int_Z^inf z^{-p} e^{2i w} dz by integration by parts.
    auto K = [&](double pw, double& err) {
        std::complex<double> acc = 0.0;
        double term = std::pow(Z, -pw);
        double prev = std::numeric_limits<double>::infinity();
        std::complex<double> factor = 1.0;
        for (int k = 0; k < 200; ++k) {
            const double mag = std::fabs(term);
            if (mag > prev) break;
            acc += factor * term;
            prev = mag;
            if (mag < 1e-20 * std::abs(acc)) break;
            term *= (pw + k) / Z;
            factor /= two_i;
        }
        err += prev;
        return -rot / two_i * acc;
    };
    double mean = 0.0, osc = 0.0, err = 0.0;
    for (int m = 0; m < terms; ++m) {
        const double zm = std::pow(Z, -2.0 * s - m);
        if (sum2[m] != 0.0) {
            const double t = sum2[m] * zm / (2.0 * s + m);
            mean += t;
            if (m >= terms - 2) err += std::fabs(t);  // size of the last retained orders
        }
        if (diff2[m] != 0.0 || cross[m] != 0.0) {
            double kerr = 0.0;
            const auto k = K(2.0 * s + 1.0 + m, kerr);
            osc += diff2[m] * k.real() - cross[m] * k.imag();
            err += 0.5 * (std::fabs(diff2[m]) + std::fabs(cross[m])) * kerr;
        }
    }
    err += 1e-16 * std::fabs(mean);
    return {(mean + osc) / detail::kPi, err / detail::kPi};
}

/// Integral of z^{-2s} J_alpha(z)^2 over (0, inf) following `plan`: tanh-sinh
/// head up to the first breakpoint, Gauss-Legendre panels between
/// breakpoints, the analytic tail at each cutoff, and Wynn's epsilon over
/// the cutoff sequence.
inline QuadratureResult ws_integral(const OscillatoryPlan& plan, double tol,
                                    const PrecisionPolicy& pol = {}) {
    check_ws_args(plan.alpha, plan.s);
    const double alpha = plan.alpha, s = plan.s;
    const specfun::BesselOrder order{alpha};
    const double lead = -alpha * std::log(2.0) - specfun::ln_gamma(alpha + 1.0);
    auto integrand = [&](double z) {
        if (z < 1e-8) {
            // J_alpha(z) = (z/2)^alpha / Gamma(alpha+1) (1 + O(z^2))
            return std::exp(2.0 * ((alpha - s) * std::log(z) + lead));
        }
        const double j = specfun::bessel_j(order, z, pol) * std::pow(z, -s);
        return j * j;
    };
    QuadratureResult res;
    GapFunction head_f = [&](double, double z, double) {
        if (z == 0.0) return 0.0;
        return integrand(z);
    };
    const auto& bp = plan.breakpoints;
    const auto head = tanh_sinh(head_f, 0.0, bp.front(), 1e-3 * tol);
    res.evaluations += head.evaluations;
    double partial = head.value;
    double quad_err = head.abs_error_estimate;
    std::vector<double> estimates;
    double tail_err = 0.0;
    const int last = plan.first_cutoff + plan.acceleration_depth - 1;
    for (int i = 0; i < last; ++i) {
        const auto panel = gauss_legendre(integrand, bp[i], bp[i + 1], 1e-4 * tol);
        res.evaluations += panel.evaluations;
        partial += panel.value;
        quad_err += panel.abs_error_estimate;
        if (i + 1 >= plan.first_cutoff) {
            const auto tail = ws_tail(alpha, s, bp[i + 1]);
            estimates.push_back(partial + tail.value);
            tail_err = tail.error;
        }
    }
    const auto ex = wynn_epsilon(estimates);
    res.value = ex.value;
    res.abs_error_estimate = ex.error + quad_err + tail_err + 1e-14 * std::fabs(ex.value);
    res.converged = res.abs_error_estimate <= tol;
    return res;
}

inline QuadratureResult ws_integral(double alpha, double s, double tol,
                                    const PrecisionPolicy& pol = {}) {
    return ws_integral(make_ws_plan(alpha, s, 0.0, 12, pol), tol, pol);
}

}  // namespace besselprob::quad
