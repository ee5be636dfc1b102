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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gamma_ratio_spec.hpp"
#include "gammatype.hpp"
#include "hyp1f2.hpp"
#include "parallel.hpp"
#include "precision.hpp"
#include "quad.hpp"
#include "specfun.hpp"

namespace besselprob::gammatype {

// ---------------------------------------------------------------------------
// Sign of 1F2(A; B, C; -x) on x >= 0

enum class F2Sign { Nonnegative, Negative, Indeterminate };

inline const char* to_string(F2Sign s) {
    switch (s) {
        case F2Sign::Nonnegative: return "Nonnegative";
        case F2Sign::Negative: return "Negative";
        case F2Sign::Indeterminate: return "Indeterminate";
    }
    return "?";
}

struct F2ScanOptions {
    double y_cap = 400.0;  ///< largest sqrt(x) ever sampled
    unsigned threads = 1;
    PrecisionPolicy policy{};
};

struct F2ScanResult {
    F2Sign outcome = F2Sign::Indeterminate;
    double x_max = 0.0;  ///< scanned range [0, x_max]; beyond it the tail test holds
    double witness = std::numeric_limits<double>::quiet_NaN();
    double witness_value = std::numeric_limits<double>::quiet_NaN();
    double witness_error = std::numeric_limits<double>::quiet_NaN();
    double min_value = 1.0;
    double min_x = 0.0;
    double nu = 0.0;         ///< A - B - C + 1/2
    double rate_gap = 0.0;   ///< -A - nu/2; positive when the algebraic part decays slower
    bool exact_square = false;
    long evaluations = 0;
};

namespace detail {

struct F2Point {
    double value = 0.0;
    double error = 0.0;
};

inline F2Point f2_at(double A, double B, double C, double y, const PrecisionPolicy& pol) {
    const auto r = specfun::hyp1f2_eval(A, B, C, -(y * y), pol);
    return {r.value, r.error_bound};
}

/// Algebraic part beats the whole oscillatory envelope plus the truncation bound.
inline bool f2_tail_positive_at(double A, double B, double C, double X) {
    const auto as = specfun::hyp1f2_asymptotic(A, B, C, X);
    return as.algebraic - as.osc_envelope - as.error_bound > 0.0;
}

}  // namespace detail

/// Decides whether 1F2(A; B, C; -x) >= 0 for all x >= 0.
///
/// The function is sampled at x = y^2 with 16 points per period pi of the
/// oscillation cos(2 sqrt(x) + nu pi/2); small local minima are refined by
/// golden section to `tol` in y. A value below minus its error bound is a
/// verified witness. Nonnegative additionally needs a horizon beyond which
/// the algebraic term X^{-A} G(B)G(C)/(G(B-A)G(C-A)) stays above the full
/// oscillatory envelope; it is checked at the horizon and at 2x and 4x it.
/// When {B, C} = {A + 1/2, 2A} the function is a squared Bessel function.
inline F2ScanResult f2_nonneg_scan(double A, double B, double C, double tol = 1e-10,
                                   const F2ScanOptions& opt = {}) {
    if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0) || !std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C)) {
        throw DomainError("f2_nonneg_scan: A, B, C must be positive");
    }
    if (!(tol > 0.0)) throw DomainError("f2_nonneg_scan: tol must be positive");
    F2ScanResult r;
    r.nu = A - B - C + 0.5;
    r.rate_gap = -A - 0.5 * r.nu;
    auto same = [](double x, double y) { return std::fabs(x - y) <= 1e-14 * std::max(std::fabs(x), std::fabs(y)); };
    if ((same(B, A + 0.5) && same(C, 2.0 * A)) || (same(C, A + 0.5) && same(B, 2.0 * A))) {
        r.exact_square = true;
        r.outcome = F2Sign::Nonnegative;
        r.x_max = std::numeric_limits<double>::infinity();
        return r;
    }

    // Ratio of the leading algebraic coefficient to the oscillation amplitude.
    const double ratio = std::sqrt(std::numbers::pi) * std::exp(specfun::ln_gamma(A)) * specfun::rgamma(B - A) *
                         specfun::rgamma(C - A);
    const double x_cap = opt.y_cap * opt.y_cap;
    double horizon = std::numeric_limits<double>::infinity();
    const bool tail_can_win = (r.rate_gap > 1e-12 && ratio > 0.0) || (std::fabs(r.rate_gap) <= 1e-12 && ratio > 1.0);
    if (tail_can_win) {
        double X = 16.0;
        if (r.rate_gap > 1e-12) {
            const double l = -std::log(ratio) / r.rate_gap;
            X = l > std::log(x_cap) ? 2.0 * x_cap : std::max(16.0, std::exp(l));
        }
        for (; X <= x_cap; X *= 1.25) {
            if (detail::f2_tail_positive_at(A, B, C, X) && detail::f2_tail_positive_at(A, B, C, 2.0 * X) &&
                detail::f2_tail_positive_at(A, B, C, 4.0 * X)) {
                horizon = X;
                break;
            }
        }
    }
    const double y_end = std::isfinite(horizon) ? std::sqrt(horizon) : opt.y_cap;

    const double h = std::numbers::pi / 16.0;
    const auto count = static_cast<std::size_t>(std::ceil(y_end / h)) + 1;
    constexpr std::size_t block = 64;
    std::vector<double> ys, vs;  // processed samples
    auto record_min = [&](double y, double v) {
        if (v < r.min_value) {
            r.min_value = v;
            r.min_x = y * y;
        }
    };
    auto set_witness = [&](double y, const detail::F2Point& p) {
        r.outcome = F2Sign::Negative;
        r.witness = y * y;
        r.witness_value = p.value;
        r.witness_error = p.error;
        r.x_max = y * y;
    };
    for (std::size_t start = 0; start < count; start += block) {
        const std::size_t n = std::min(block, count - start);
        std::vector<detail::F2Point> pts(n);
        parallel_for(n, opt.threads, [&](std::size_t i) {
            pts[i] = detail::f2_at(A, B, C, static_cast<double>(start + i) * h, opt.policy);
        });
        r.evaluations += static_cast<long>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = static_cast<double>(start + i) * h;
            const auto& p = pts[i];
            record_min(y, p.value);
            if (p.value < -p.error) {
                set_witness(y, p);
                return r;
            }
            ys.push_back(y);
            vs.push_back(p.value);
            const std::size_t k = vs.size();
            if (k < 3) continue;
            const double vm = vs[k - 2];
            if (!(vm <= vs[k - 3] && vm <= vs[k - 1])) continue;
            double local_max = vm;
            for (std::size_t j = (k >= 18 ? k - 18 : 0); j < k; ++j) local_max = std::max(local_max, vs[j]);
            if (vm >= 0.05 * (local_max - vm)) continue;
            // Golden-section search for the minimum between the neighbours.
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double lo = ys[k - 3], hi = ys[k - 1];
            double y1 = hi - g * (hi - lo), y2 = lo + g * (hi - lo);
            auto p1 = detail::f2_at(A, B, C, y1, opt.policy), p2 = detail::f2_at(A, B, C, y2, opt.policy);
            r.evaluations += 2;
            while (hi - lo > tol) {
                if (p1.value < p2.value) {
                    hi = y2;
                    y2 = y1;
                    p2 = p1;
                    y1 = hi - g * (hi - lo);
                    p1 = detail::f2_at(A, B, C, y1, opt.policy);
                } else {
                    lo = y1;
                    y1 = y2;
                    p1 = p2;
                    y2 = lo + g * (hi - lo);
                    p2 = detail::f2_at(A, B, C, y2, opt.policy);
                }
                ++r.evaluations;
                const auto& best = p1.value < p2.value ? p1 : p2;
                const double yb = p1.value < p2.value ? y1 : y2;
                record_min(yb, best.value);
                if (best.value < -best.error) {
                    set_witness(yb, best);
                    return r;
                }
            }
        }
    }
    r.x_max = y_end * y_end;
    r.outcome = std::isfinite(horizon) ? F2Sign::Nonnegative : F2Sign::Indeterminate;
    return r;
}

// ---------------------------------------------------------------------------
// Existence verdicts

enum class ExistState { Exists, NotExists, Indeterminate };

enum class ExistReason {
    NecessaryConditionViolated,
    Prop2a,
    Prop2b,
    SchurHolds,
    ScanNegative,
    ScanNonnegativeUpToBound,
    AtomExceedsOne,
    Construction,   ///< explicit Beta-Gamma product
    Unresolved,
};

inline const char* to_string(ExistState s) {
    switch (s) {
        case ExistState::Exists: return "Exists";
        case ExistState::NotExists: return "NotExists";
        case ExistState::Indeterminate: return "Indeterminate";
    }
    return "?";
}

inline const char* to_string(ExistReason r) {
    switch (r) {
        case ExistReason::NecessaryConditionViolated: return "NecessaryConditionViolated";
        case ExistReason::Prop2a: return "Prop2a";
        case ExistReason::Prop2b: return "Prop2b";
        case ExistReason::SchurHolds: return "SchurHolds";
        case ExistReason::ScanNegative: return "ScanNegative";
        case ExistReason::ScanNonnegativeUpToBound: return "ScanNonnegativeUpToBound";
        case ExistReason::AtomExceedsOne: return "AtomExceedsOne";
        case ExistReason::Construction: return "Construction";
        case ExistReason::Unresolved: return "Unresolved";
    }
    return "?";
}

struct ExistenceVerdict {
    ExistState state = ExistState::Indeterminate;
    ExistReason reason = ExistReason::Unresolved;
    /// x with 1F2 < -error (scan reasons), or the atom for AtomExceedsOne.
    std::optional<double> witness;
    double witness_value = std::numeric_limits<double>::quiet_NaN();
    double witness_error = std::numeric_limits<double>::quiet_NaN();
    double scan_horizon = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> violated;
};

struct ExistsOptions {
    double tol = 1e-10;
    bool want_witness = true;  ///< also scan for a negative value on Prop2b
    F2ScanOptions scan{};
};

namespace detail {

inline bool at_least(double x, double y) { return x >= y - 8.0 * kEps * std::max(std::fabs(x), std::fabs(y)); }

inline void attach_witness(ExistenceVerdict& v, const F2ScanResult& s) {
    v.witness = s.witness;
    v.witness_value = s.witness_value;
    v.witness_error = s.witness_error;
}

}  // namespace detail

/// Existence of D[a b; (c,d) -], whose Mellin transform is
/// (a)_s (b)_{-s} / ((c)_s (d)_s). Closed-form rules first, then the sign of
/// 1F2(a+b; c+b, d+b; -x).
inline ExistenceVerdict exists_D(double a, double b, double c, double d, const ExistsOptions& opt = {}) {
    for (double v : {a, b, c, d}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("exists_D: parameters must be positive");
    }
    ExistenceVerdict v;
    const double m = std::min(c, d);
    const double thr = 3.0 * a + b + 0.5;
    if (std::fabs(m - a) <= 8.0 * detail::kEps * a) {
        v.state = ExistState::NotExists;
        v.reason = ExistReason::Prop2b;
        v.violated.push_back("min(c,d)=a");
        return v;
    }
    if (m < a) {
        v.state = ExistState::NotExists;
        v.reason = ExistReason::NecessaryConditionViolated;
        v.violated.push_back("min(a)<=min(c)");
        return v;
    }
    if (detail::at_least(c + d, thr) && detail::at_least(m, std::min(2.0 * a + b, a + 0.5))) {
        v.state = ExistState::Exists;
        v.reason = ExistReason::Prop2a;
        return v;
    }
    if (!detail::at_least(c + d, thr)) {
        v.state = ExistState::NotExists;
        v.reason = ExistReason::Prop2b;
        if (opt.want_witness) {
            const auto s = f2_nonneg_scan(a + b, c + b, d + b, opt.tol, opt.scan);
            if (s.outcome == F2Sign::Negative) detail::attach_witness(v, s);
        }
        return v;
    }
    const auto s = f2_nonneg_scan(a + b, c + b, d + b, opt.tol, opt.scan);
    v.scan_horizon = s.x_max;
    switch (s.outcome) {
        case F2Sign::Negative:
            v.state = ExistState::NotExists;
            v.reason = ExistReason::ScanNegative;
            detail::attach_witness(v, s);
            break;
        case F2Sign::Nonnegative:
            v.state = ExistState::Exists;
            v.reason = ExistReason::ScanNonnegativeUpToBound;
            break;
        case F2Sign::Indeterminate:
            v.state = ExistState::Indeterminate;
            v.reason = ExistReason::Unresolved;
            break;
    }
    return v;
}

/// Existence for a general spec, as far as the known rules reach.
inline ExistenceVerdict exists(const GammaRatioSpec& spec, const ExistsOptions& opt = {}) {
    ExistenceVerdict v;
    const auto nc = necessary_conditions(spec);
    if (!nc.pass) {
        v.state = ExistState::NotExists;
        v.reason = ExistReason::NecessaryConditionViolated;
        v.violated = nc.violated;
        return v;
    }
    if (spec.a.size() == 1 && spec.b.size() == 1 && spec.c.size() == 2 && spec.d.empty()) {
        return exists_D(spec.a[0], spec.b[0], spec.c[0], spec.c[1], opt);
    }
    if (spec.b.size() == 1 && spec.a.size() == 1 && spec.d.size() == 2 && spec.c.empty()) {
        return exists_D(spec.b[0], spec.a[0], spec.d[0], spec.d[1], opt);
    }
    if (spec.c.size() <= 1 && spec.d.size() <= 1) {
        v.state = ExistState::Exists;
        v.reason = ExistReason::Construction;
        return v;
    }
    const bool one_sided = (spec.b.empty() && spec.d.empty()) || (spec.a.empty() && spec.c.empty());
    if (!one_sided) return v;
    const auto& top = spec.b.empty() && spec.d.empty() ? spec.a : spec.b;
    const auto& bottom = spec.b.empty() && spec.d.empty() ? spec.c : spec.d;
    if (top.size() == bottom.size() && detail::nearly_equal(sum_of(top), sum_of(bottom))) {
        const double atom = atom_at_one(GammaRatioSpec(top, {}, bottom, {}));
        if (atom > 1.0 + 1e-12) {
            v.state = ExistState::NotExists;
            v.reason = ExistReason::AtomExceedsOne;
            v.witness = atom;
            return v;
        }
    }
    if (top.size() == 2 && bottom.size() == 2) {
        v.state = ExistState::Exists;
        v.reason = ExistReason::SchurHolds;
        return v;
    }
    if (schur_check(top, bottom).pass) {
        v.state = ExistState::Exists;
        v.reason = ExistReason::SchurHolds;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Boundary of D_{a,b}

enum class BoundaryMethod { LinearSegment, Bisection };

inline const char* to_string(BoundaryMethod m) {
    return m == BoundaryMethod::LinearSegment ? "LinearSegment" : "Bisection";
}

struct BoundarySample {
    double u = 0.0;
    double f_value = 0.0;
    double bracket_lo = 0.0;  ///< largest c found not to exist
    double bracket_hi = 0.0;  ///< smallest c found to exist
    double bracket_width = 0.0;
    BoundaryMethod method = BoundaryMethod::LinearSegment;
    bool indeterminate = false;  ///< stopped early on an undecided oracle call
    int oracle_calls = 0;
};

/// f_{a,b}(u): smallest c with D[a b; (c,u) -] existing, for
/// u >= (3a+b)/2 + 1/4. Closed form 3a+b+1/2-u up to max(2a+b, a+1/2),
/// bisection in c on (a, min(2a+b, a+1/2)] beyond.
inline BoundarySample boundary_f_ab(double a, double b, double u, double resolution = 1e-7,
                                    const ExistsOptions& opt = {}) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("boundary_f_ab: a, b must be positive");
    if (!(resolution > 0.0)) throw DomainError("boundary_f_ab: resolution must be positive");
    const double u0 = 0.5 * (3.0 * a + b) + 0.25;
    if (!(u >= u0 - 8.0 * detail::kEps * u0) || !std::isfinite(u)) {
        throw DomainError("boundary_f_ab: u must be at least (3a+b)/2 + 1/4");
    }
    BoundarySample r;
    r.u = u;
    const double thr = 3.0 * a + b + 0.5;
    if (u <= std::max(2.0 * a + b, a + 0.5)) {
        r.f_value = r.bracket_lo = r.bracket_hi = thr - u;
        r.method = BoundaryMethod::LinearSegment;
        return r;
    }
    r.method = BoundaryMethod::Bisection;
    double lo = a, hi = std::min(2.0 * a + b, a + 0.5);
    ExistsOptions o = opt;
    o.want_witness = false;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        auto v = exists_D(a, b, mid, u, o);
        ++r.oracle_calls;
        if (v.state == ExistState::Indeterminate) {
            ExistsOptions wider = o;
            wider.scan.policy.highprec_digits += 40;
            wider.scan.y_cap *= 2.0;
            v = exists_D(a, b, mid, u, wider);
            ++r.oracle_calls;
        }
        if (v.state == ExistState::Indeterminate) {
            r.indeterminate = true;
            break;
        }
        (v.state == ExistState::Exists ? hi : lo) = mid;
    }
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.bracket_width = hi - lo;
    r.f_value = 0.5 * (lo + hi);
    return r;
}

struct ConvexityReport {
    double a = 0.0, b = 0.0;
    std::vector<BoundarySample> samples;
    std::vector<double> second_differences;  ///< divided, at interior grid points
    int positive = 0;                        ///< clearly convex kinks
    int negative = 0;                        ///< clearly concave kinks
    int flat = 0;                            ///< within bracket noise
    int monotonicity_violations = 0;         ///< f increasing beyond the brackets
    bool any_indeterminate = false;
};

/// Samples f_{a,b} on an ascending grid and reports its divided second
/// differences and monotonicity.
inline ConvexityReport convexity_scan(double a, double b, const std::vector<double>& u_grid,
                                      double resolution = 1e-7, const ExistsOptions& opt = {}) {
    for (std::size_t i = 1; i < u_grid.size(); ++i) {
        if (!(u_grid[i] > u_grid[i - 1])) throw DomainError("convexity_scan: grid must be ascending");
    }
    ConvexityReport rep;
    rep.a = a;
    rep.b = b;
    rep.samples.resize(u_grid.size());
    ExistsOptions inner = opt;
    const unsigned threads = opt.scan.threads;
    inner.scan.threads = 1;
    parallel_for(u_grid.size(), threads,
                 [&](std::size_t i) { rep.samples[i] = boundary_f_ab(a, b, u_grid[i], resolution, inner); });
    const auto& s = rep.samples;
    for (const auto& x : s) rep.any_indeterminate = rep.any_indeterminate || x.indeterminate;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].bracket_lo > s[i - 1].bracket_hi) ++rep.monotonicity_violations;
    }
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double h1 = s[i].u - s[i - 1].u, h2 = s[i + 1].u - s[i].u;
        const double d2 = 2.0 * ((s[i + 1].f_value - s[i].f_value) / h2 - (s[i].f_value - s[i - 1].f_value) / h1) /
                          (h1 + h2);
        const double noise = 2.0 * (s[i - 1].bracket_width / h1 + s[i].bracket_width * (1.0 / h1 + 1.0 / h2) +
                                    s[i + 1].bracket_width / h2) / (h1 + h2) +
                             1e-12;
        rep.second_differences.push_back(d2);
        if (d2 > noise) {
            ++rep.positive;
        } else if (d2 < -noise) {
            ++rep.negative;
        } else {
            ++rep.flat;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Partial Bessel integrals

struct AskeySzegoReport {
    double a = 0.0, b = 0.0;
    ExistenceVerdict verdict;             ///< exists_D(b/2, b/2, a + b/2, 1 + b/2)
    std::vector<double> x;                ///< evaluation points (grid plus witness)
    std::vector<double> partial;          ///< int_0^x t^{b-a} J_{a+b-1}(t) dt
    double min_partial = 0.0;
    double argmin = 0.0;
    bool grid_nonnegative = true;
    double closed_form_max_dev = 0.0;     ///< quadrature against the 1F2 form
    bool agree = false;
};

/// Compares nonnegativity of x -> int_0^x t^{b-a} J_{a+b-1}(t) dt with the
/// existence of D[b/2 b/2; (a + b/2, 1 + b/2) -]. The partial integral is
///   x^{2b} / (2^{a+b} b G(a+b)) 1F2(b; b+1, a+b; -x^2/4).
inline AskeySzegoReport askey_szego_check(double a, double b, std::vector<double> x_grid,
                                          const ExistsOptions& opt = {}) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("askey_szego_check: a, b must be positive");
    if (!(b - a > -1.0)) throw DomainError("askey_szego_check: needs b - a > -1");
    for (double x : x_grid) if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("askey_szego_check: grid must be positive");
    AskeySzegoReport rep;
    rep.a = a;
    rep.b = b;
    rep.verdict = exists_D(0.5 * b, 0.5 * b, a + 0.5 * b, 1.0 + 0.5 * b, opt);
    if (rep.verdict.witness && rep.verdict.reason != ExistReason::AtomExceedsOne) {
        x_grid.push_back(2.0 * std::sqrt(*rep.verdict.witness));
    }
    std::sort(x_grid.begin(), x_grid.end());
    x_grid.erase(std::unique(x_grid.begin(), x_grid.end()), x_grid.end());

    const specfun::BesselOrder nu{a + b - 1.0};
    const double p = b - a;
    auto integrand = [&](double t) { return std::pow(t, p) * specfun::bessel_j(nu, t); };
    const double lk = -(a + b) * std::log(2.0) - std::log(b) - specfun::ln_gamma(a + b);
    double acc = 0.0, prev = 0.0;
    rep.min_partial = std::numeric_limits<double>::infinity();
    for (double x : x_grid) {
        const auto seg = prev == 0.0 ? quad::tanh_sinh(integrand, 0.0, x, 1e-13)
                                     : quad::gauss_legendre(integrand, prev, x, 1e-13);
        acc += seg.value;
        prev = x;
        rep.x.push_back(x);
        rep.partial.push_back(acc);
        const double closed = std::exp(lk + 2.0 * b * std::log(x)) *
                              specfun::hyp1f2_eval(b, b + 1.0, a + b, -0.25 * x * x, opt.scan.policy).value;
        rep.closed_form_max_dev =
            std::max(rep.closed_form_max_dev, std::fabs(closed - acc) / std::max(1.0, std::fabs(closed)));
        if (acc < rep.min_partial) {
            rep.min_partial = acc;
            rep.argmin = x;
        }
    }
    rep.grid_nonnegative = rep.min_partial >= -1e-10;
    if (rep.verdict.state != ExistState::Indeterminate) {
        rep.agree = rep.grid_nonnegative == (rep.verdict.state == ExistState::Exists);
    }
    return rep;
}

}  // namespace besselprob::gammatype
