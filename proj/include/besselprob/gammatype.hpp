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
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gamma_ratio_spec.hpp"
#include "parallel.hpp"
#include "precision.hpp"
#include "quad.hpp"
#include "random.hpp"
#include "specfun.hpp"

namespace besselprob::gammatype {

/// E[X^s] for the spec, (a)_s (b)_{-s} / ((c)_s (d)_{-s}).
inline double mellin(const GammaRatioSpec& spec, double s) { return specfun::pochhammer_ratio(spec, s); }

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline bool nearly_equal(double x, double y, double rel = 1e-12) {
    return std::fabs(x - y) <= rel * std::max({1.0, std::fabs(x), std::fabs(y)});
}

inline double min_or_inf(const std::vector<double>& v) {
    return v.empty() ? std::numeric_limits<double>::infinity() : v.front();
}

inline double prefix_sum(const std::vector<double>& v, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k && i < v.size(); ++i) s += v[i];
    return s;
}

/// e^z - 1 - z without cancellation near zero.
inline double expm1_minus(double z) {
    if (std::fabs(z) < 1e-2) {
        return z * z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0))));
    }
    return std::expm1(z) - z;
}

/// (e^z - 1 - z) e^{-w}, finite whenever the product is.
inline double expm1_minus_scaled(double z, double w) {
    if (z > 30.0) return std::exp(z - w) - (1.0 + z) * std::exp(-w);
    return expm1_minus(z) * std::exp(-w);
}

/// log of the Mellin transform at a complex point.
inline std::complex<double> log_mellin(const GammaRatioSpec& spec, std::complex<double> s) {
    std::complex<double> l = 0.0;
    for (double x : spec.a) l += specfun::ln_gamma(x + s) - specfun::ln_gamma(x);
    for (double x : spec.b) l += specfun::ln_gamma(x - s) - specfun::ln_gamma(x);
    for (double x : spec.c) l -= specfun::ln_gamma(x + s) - specfun::ln_gamma(x);
    for (double x : spec.d) l -= specfun::ln_gamma(x - s) - specfun::ln_gamma(x);
    return l;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Necessary conditions, atom at one, Schur condition

struct NecessaryReport {
    bool pass = true;
    std::vector<std::string> violated;
};

/// With b = d = {} (or a = c = {} for the reciprocal law) and #c >= 1:
/// #c <= #a, a_1 <= c_1 and a_1 + ... + a_p <= c_1 + ... + c_p.
/// Otherwise #c + #d <= #a + #b, min(a) <= min(c), min(b) <= min(d).
inline NecessaryReport necessary_conditions(const GammaRatioSpec& spec) {
    NecessaryReport r;
    auto fail = [&](std::string rule) {
        r.pass = false;
        r.violated.push_back(std::move(rule));
    };
    auto one_sided = [&](const std::vector<double>& top, const std::vector<double>& bottom, const char* p_le_n,
                         const char* first, const char* partial) {
        if (bottom.empty()) return;
        if (bottom.size() > top.size()) fail(p_le_n);
        if (top.empty() || top.front() > bottom.front()) fail(first);
        if (!top.empty() && bottom.size() <= top.size()) {
            const double st = detail::prefix_sum(top, bottom.size());
            const double sb = detail::prefix_sum(bottom, bottom.size());
            if (st > sb + 1e-12 * std::max(1.0, sb)) fail(partial);
        }
    };
    if (spec.b.empty() && spec.d.empty()) {
        one_sided(spec.a, spec.c, "p<=n", "a1<=c1", "a1+...+ap<=c1+...+cp");
        return r;
    }
    if (spec.a.empty() && spec.c.empty()) {
        one_sided(spec.b, spec.d, "q<=m", "b1<=d1", "b1+...+bq<=d1+...+dq");
        return r;
    }
    if (spec.c.size() + spec.d.size() > spec.a.size() + spec.b.size()) fail("p+q<=n+m");
    if (detail::min_or_inf(spec.a) > detail::min_or_inf(spec.c)) fail("min(a)<=min(c)");
    if (detail::min_or_inf(spec.b) > detail::min_or_inf(spec.d)) fail("min(b)<=min(d)");
    return r;
}

/// P[X = 1] = lim E[X^s] = prod Gamma(c) / prod Gamma(a), for b = d = {},
/// #a = #c and equal sums.
inline double atom_at_one(const GammaRatioSpec& spec) {
    if (!spec.b.empty() || !spec.d.empty() || spec.a.size() != spec.c.size() || spec.a.empty()) {
        throw DomainError("atom_at_one: needs b = d = {} and #a = #c >= 1");
    }
    const double sa = sum_of(spec.a), sc = sum_of(spec.c);
    if (!detail::nearly_equal(sa, sc)) {
        throw DomainError(sa < sc ? "atom_at_one: sum(a) < sum(c), the limit is 0"
                                  : "atom_at_one: sum(a) > sum(c), the limit is infinite");
    }
    double l = 0.0;
    for (double x : spec.c) l += specfun::ln_gamma(x);
    for (double x : spec.a) l -= specfun::ln_gamma(x);
    return std::exp(l);
}

/// (phi_a - phi_c)(x) e^{w x}, phi_a(x) = sum exp(-a_i x). Entries are paired
/// in sorted order so close pairs cancel through expm1.
inline double phi_difference_scaled(const std::vector<double>& a, const std::vector<double>& c, double x,
                                    double w) {
    const std::size_t k = std::min(a.size(), c.size());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] <= c[i]) {
            s += std::exp(-(a[i] - w) * x) * -std::expm1(-(c[i] - a[i]) * x);
        } else {
            s += std::exp(-(c[i] - w) * x) * std::expm1(-(a[i] - c[i]) * x);
        }
    }
    for (std::size_t i = k; i < a.size(); ++i) s += std::exp(-(a[i] - w) * x);
    for (std::size_t i = k; i < c.size(); ++i) s -= std::exp(-(c[i] - w) * x);
    return s;
}

inline double phi_difference(const std::vector<double>& a, const std::vector<double>& c, double x) {
    return phi_difference_scaled(a, c, x, 0.0);
}

struct SchurReport {
    bool pass = true;
    std::optional<double> witness;  ///< first grid point with phi_a < phi_c
    double crossing = std::numeric_limits<double>::quiet_NaN();
    double slope_at_zero = 0.0;     ///< sum(c) - sum(a) when #a = #c
    double min_difference = std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;
    std::string failure;            ///< "", "grid" or "tail"
};

/// Checks phi_a >= phi_c on (0, x_max] over a log grid starting at
/// x_max * 1e-8, then the behaviour beyond x_max from the smallest entry
/// that does not cancel between a and c.
inline SchurReport schur_check(std::vector<double> a, std::vector<double> c, double x_max = 50.0,
                               int samples = 2000) {
    if (a.empty() || c.empty()) throw DomainError("schur_check: sets must be nonempty");
    if (!(x_max > 0.0) || samples < 2) throw DomainError("schur_check: need x_max > 0 and samples >= 2");
    for (double v : a) if (!(v > 0.0)) throw DomainError("schur_check: entries must be positive");
    for (double v : c) if (!(v > 0.0)) throw DomainError("schur_check: entries must be positive");
    std::sort(a.begin(), a.end());
    std::sort(c.begin(), c.end());
    SchurReport r;
    if (a.size() == c.size()) r.slope_at_zero = sum_of(c) - sum_of(a);

    auto noise = [&](double x) {
        double m = 0.0;
        for (double v : a) m += std::exp(-v * x);
        for (double v : c) m += std::exp(-v * x);
        return 4.0 * detail::kEps * m * x;
    };
    double prev_x = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double x = x_max * std::pow(10.0, -8.0 + 8.0 * k / (samples - 1));
        const double v = phi_difference(a, c, x);
        ++r.evaluated;
        r.min_difference = std::min(r.min_difference, v);
        if (v < -noise(x)) {
            r.pass = false;
            r.failure = "grid";
            r.witness = x;
            double lo = prev_x, hi = x;
            for (int it = 0; it < 60 && hi - lo > 1e-14 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (phi_difference(a, c, mid) < 0.0 ? hi : lo) = mid;
            }
            r.crossing = hi;
            return r;
        }
        prev_x = x;
    }

    // Leading exponential at infinity after cancelling common entries.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < c.size() && detail::nearly_equal(a[i], c[j], 1e-14)) {
        ++i;
        ++j;
    }
    const bool c_leads = j < c.size() && (i == a.size() || c[j] < a[i]);
    if (c_leads) {
        r.pass = false;
        r.failure = "tail";
        const double w = c[j];
        for (double x = x_max; x < 1e12; x *= 2.0) {
            if (phi_difference_scaled(a, c, x, w) < 0.0) {
                r.witness = x;
                break;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Integral representations

/// (phi_a(x) - phi_c(x)) / (x (1 - e^{-x})) for #a = #c.
inline double malmsten_integrand(const std::vector<double>& a, const std::vector<double>& c, double x) {
    if (!(x > 0.0)) throw DomainError("malmsten_integrand: x must be positive");
    if (a.size() != c.size()) throw DomainError("malmsten_integrand: needs #a = #c");
    std::vector<double> as(a), cs(c);
    std::sort(as.begin(), as.end());
    std::sort(cs.begin(), cs.end());
    return phi_difference(as, cs, x) / (x * -std::expm1(-x));
}

/// -int_0^inf (1 - e^{-sx}) malmsten_integrand(x) dx, i.e. log((a)_s / (c)_s).
inline double malmsten_log_mellin(const std::vector<double>& a, const std::vector<double>& c, double s,
                                  double tol = 1e-12) {
    if (a.size() != c.size() || a.empty()) throw DomainError("malmsten_log_mellin: needs #a = #c >= 1");
    std::vector<double> as(a), cs(c);
    std::sort(as.begin(), as.end());
    std::sort(cs.begin(), cs.end());
    if (!(s > -as.front()) || !(s > -cs.front())) throw DomainError("malmsten_log_mellin: s outside the strip");
    const double w = std::min(as.front(), cs.front());
    const auto r = quad::exp_sinh(
        [&](double x, double) {
            if (x < 1e-100) return s * (sum_of(cs) - sum_of(as));
            const double den = x * -std::expm1(-x);
            const double z = -s * x;
            // (1 - e^{-sx}) e^{-wx} = -expm1(z) e^{-wx}
            const double lead = z > 30.0 ? -std::exp(z - w * x) + std::exp(-w * x) : -std::expm1(z) * std::exp(-w * x);
            return lead * phi_difference_scaled(as, cs, x, w) / den;
        },
        0.0, tol);
    if (!r.converged) throw AccuracyError("malmsten_log_mellin: quadrature did not converge", r.abs_error_estimate);
    return -r.value;
}

namespace detail {

/// int_0^inf (e^{z y} - 1 - z y) (phi_p - phi_q)(y) / (y (1 - e^{-y})) dy.
inline quad::QuadratureResult compensated_jump_integral(const std::vector<double>& p, const std::vector<double>& q,
                                                        double z, double tol) {
    if (p.empty() && q.empty()) return {0.0, 0.0, 0, true};
    const double w = std::min(min_or_inf(p), min_or_inf(q));
    return quad::exp_sinh(
        [&](double y, double) {
            if (y < 1e-100) return 0.5 * z * z * (static_cast<double>(p.size()) - static_cast<double>(q.size()));
            const double den = y * -std::expm1(-y);
            return expm1_minus_scaled(z * y, w * y) * phi_difference_scaled(p, q, y, w) / den;
        },
        0.0, tol);
}

}  // namespace detail

/// log E[X^s] through the Levy-Khintchine type formula
///   (psi(a) - psi(c) - psi(b) + psi(d)) s
///   + int_{-inf}^0 (e^{sx} - 1 - sx) (phi_a - phi_c)(|x|) / (|x|(1 - e^{-|x|})) dx
///   + int_0^inf   (e^{sx} - 1 - sx) (phi_b - phi_d)(x) / (x(1 - e^{-x})) dx.
/// Every Gamma argument a+s, c+s, b-s, d-s has to be positive.
inline double lk_exponent(const GammaRatioSpec& spec, double s, double tol = 1e-12) {
    if (!spec.in_strip(s)) throw DomainError("lk_exponent: s outside the strip");
    for (double x : spec.c) if (!(x + s > 0.0)) throw DomainError("lk_exponent: c + s must be positive");
    for (double x : spec.d) if (!(x - s > 0.0)) throw DomainError("lk_exponent: d - s must be positive");
    if (s == 0.0) return 0.0;
    double drift = 0.0;
    for (double x : spec.a) drift += specfun::digamma(x);
    for (double x : spec.c) drift -= specfun::digamma(x);
    for (double x : spec.b) drift -= specfun::digamma(x);
    for (double x : spec.d) drift += specfun::digamma(x);
    const auto neg = detail::compensated_jump_integral(spec.a, spec.c, -s, tol);
    const auto pos = detail::compensated_jump_integral(spec.b, spec.d, s, tol);
    if (!neg.converged || !pos.converged) {
        throw AccuracyError("lk_exponent: jump integral did not converge",
                            neg.abs_error_estimate + pos.abs_error_estimate);
    }
    return drift * s + neg.value + pos.value;
}

// ---------------------------------------------------------------------------
// The extremal law X_{a,b} = D[a b; (2a+b, a+1/2) -]

inline GammaRatioSpec extremal_spec(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extremal_spec: a, b must be positive");
    return GammaRatioSpec({a}, {b}, {2.0 * a + b, a + 0.5}, {});
}

/// Density of X_{a,b}:
///   sqrt(pi) G(2a+b) G(a+1/2) / (G(a) G(b)) x^{a-3/2} J_{a+b-1/2}(x^{-1/2})^2.
inline double extremal_density(double a, double b, double x, const PrecisionPolicy& pol = {}) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extremal_density: a, b must be positive");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("extremal_density: x must be positive");
    const double lk = 0.5 * std::log(std::numbers::pi) + specfun::ln_gamma(2.0 * a + b) +
                      specfun::ln_gamma(a + 0.5) - specfun::ln_gamma(a) - specfun::ln_gamma(b);
    const double j = specfun::bessel_j(specfun::BesselOrder{a + b - 0.5}, 1.0 / std::sqrt(x), pol);
    return std::exp(lk + (a - 1.5) * std::log(x)) * j * j;
}

struct MomentCheck {
    double quadrature = 0.0;
    double mellin = 0.0;
    double rel_error = 0.0;
    double quadrature_error = 0.0;
};

/// int x^s f(x) dx computed as 2 sqrt(pi) G(2a+b) G(a+1/2) / (G(a) G(b))
/// int z^{-2a-2s} J_{a+b-1/2}(z)^2 dz, against the Mellin transform.
inline MomentCheck extremal_moment_check(double a, double b, double s, double tol = 1e-11,
                                         const PrecisionPolicy& pol = {}) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("extremal_moment_check: a, b must be positive");
    if (!(s > -a && s < b)) throw DomainError("extremal_moment_check: s must lie in (-a, b)");
    const double lk = std::log(2.0) + 0.5 * std::log(std::numbers::pi) + specfun::ln_gamma(2.0 * a + b) +
                      specfun::ln_gamma(a + 0.5) - specfun::ln_gamma(a) - specfun::ln_gamma(b);
    const auto w = quad::ws_integral(a + b - 0.5, a + s, tol, pol);
    MomentCheck m;
    const double k = std::exp(lk);
    m.quadrature = k * w.value;
    m.quadrature_error = k * w.abs_error_estimate;
    m.mellin = mellin(extremal_spec(a, b), s);
    m.rel_error = std::fabs(m.quadrature - m.mellin) / std::fabs(m.mellin);
    return m;
}

// ---------------------------------------------------------------------------
// Quasi-Levy density of log X_{a,b}

struct QuasiLevySpec {
    double a = 1.0, b = 1.0;
    double c = 3.0, d = 1.5;  ///< 2a + b and a + 1/2
    double drift = 0.0;       ///< psi(a) - psi(b) - psi(c) - psi(d)

    QuasiLevySpec(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
            throw DomainError("QuasiLevySpec: a, b must be positive");
        }
        c = 2.0 * a + b;
        d = a + 0.5;
        drift = specfun::digamma(a) - specfun::digamma(b) - specfun::digamma(c) - specfun::digamma(d);
    }
};

/// ((phi_a - phi_{c,d})(|x|) 1{x<0} + phi_b(x) 1{x>0}) / (|x| (1 - e^{-|x|})).
inline double quasi_levy_density(const QuasiLevySpec& q, double x) {
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("quasi_levy_density: x must be nonzero and finite");
    const double y = std::fabs(x);
    const double den = y * -std::expm1(-y);
    if (x > 0.0) return std::exp(-q.b * y) / den;
    // e^{-ay} (1 - e^{-(c-a)y} - e^{-(d-a)y}); the bracket increases from -1 to 1.
    const double bracket = -std::expm1(-(q.c - q.a) * y) - std::exp(-(q.d - q.a) * y);
    return std::exp(-q.a * y) * bracket / den;
}

/// The unique zero a_* < 0 of the density on the negative axis.
inline double quasi_levy_root(const QuasiLevySpec& q) {
    auto g = [&](double y) { return -std::expm1(-(q.c - q.a) * y) - std::exp(-(q.d - q.a) * y); };
    double lo = 0.0, hi = 20.0;
    while (g(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw InternalError("quasi_levy_root: no sign change");
    }
    for (int it = 0; it < 200 && hi - lo > 4.0 * detail::kEps * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return -0.5 * (lo + hi);
}

/// log E[X_{a,b}^s] rebuilt from the drift and the quasi-Levy density.
inline double quasi_levy_log_mellin(const QuasiLevySpec& q, double s, double tol = 1e-12) {
    if (!(s > -q.a && s < q.b)) throw DomainError("quasi_levy_log_mellin: s must lie in (-a, b)");
    if (s == 0.0) return 0.0;
    auto side = [&](double sign) {
        return quad::exp_sinh(
            [&](double y, double) {
                if (y < 1e-100) return 0.5 * s * s * sign;
                const double dens = quasi_levy_density(q, sign * y);
                if (dens == 0.0) return 0.0;
                const double z = sign * s * y;
                if (z > 700.0) return std::copysign(std::exp(z + std::log(std::fabs(dens))), dens);
                return detail::expm1_minus(z) * dens;
            },
            0.0, tol);
    };
    const auto neg = side(-1.0), pos = side(1.0);
    if (!neg.converged || !pos.converged) {
        throw AccuracyError("quasi_levy_log_mellin: quadrature did not converge",
                            neg.abs_error_estimate + pos.abs_error_estimate);
    }
    return q.drift * s + neg.value + pos.value;
}

// ---------------------------------------------------------------------------
// Mellin inversion

struct InversionResult {
    double value = 0.0;              ///< density at x, atom excluded
    double abs_error_estimate = 0.0;
    double atom = 0.0;               ///< mass at one removed before inverting
    double truncation = 0.0;         ///< last tau reached
    bool accelerated = false;        ///< slow decay handled by panel extrapolation
};

/// Density of X at x from the Mellin transform along Re s = sigma:
///   x p(x) = (1/2 pi) int (E[X^s] - atom) x^{-s} dtau,  s = sigma + i tau.
/// With T <= 0 the cut is chosen where the symbol falls below 1e-12 of its
/// value at tau = 0; symbols that only decay algebraically are summed over
/// half periods of x^{-i tau} and extrapolated.
inline InversionResult density_via_inversion(const GammaRatioSpec& spec, double x, double sigma, double T = 0.0,
                                             double tol = 1e-8) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("density_via_inversion: x must be positive");
    if (!spec.in_strip(sigma)) throw DomainError("density_via_inversion: sigma outside the strip");
    for (double v : spec.c) if (!(v + sigma > 0.0)) throw DomainError("density_via_inversion: c + sigma must be positive");
    for (double v : spec.d) if (!(v - sigma > 0.0)) throw DomainError("density_via_inversion: d - sigma must be positive");
    InversionResult res;
    if (spec.b.empty() && spec.d.empty() && !spec.a.empty() && spec.a.size() == spec.c.size() &&
        detail::nearly_equal(sum_of(spec.a), sum_of(spec.c))) {
        res.atom = atom_at_one(spec);
    }
    const double lx = std::log(x);
    const double scale = 1.0 / (std::numbers::pi * x);
    auto symbol = [&](double tau) {
        const std::complex<double> s(sigma, tau);
        return std::exp(detail::log_mellin(spec, s)) - res.atom;
    };
    auto integrand = [&](double tau) {
        const std::complex<double> s(sigma, tau);
        return scale * (symbol(tau) * std::exp(-s * lx)).real();
    };
    auto magnitude = [&](double tau) { return std::abs(symbol(tau)) * std::exp(-sigma * lx) * scale; };

    const double m0 = std::max(magnitude(0.0), 1e-300);
    double cut = T;
    bool decayed = false;
    if (cut <= 0.0) {
        for (cut = 8.0; cut <= 16384.0; cut *= 2.0) {
            if (magnitude(cut) < 1e-12 * m0 && magnitude(0.75 * cut) < 1e-10 * m0) {
                decayed = true;
                break;
            }
        }
    } else {
        decayed = magnitude(cut) * cut < tol;
    }

    const double omega = std::fabs(lx);
    if (decayed) {
        const double width = omega > 0.0 ? std::min(2.0, std::numbers::pi / omega) : 2.0;
        double sum = 0.0, err = 0.0;
        for (double lo = 0.0; lo < cut; lo += width) {
            const auto p = quad::gauss_legendre(integrand, lo, std::min(cut, lo + width), 1e-3 * tol);
            sum += p.value;
            err += p.abs_error_estimate;
        }
        res.value = sum;
        res.abs_error_estimate = err + magnitude(cut);
        res.truncation = cut;
        return res;
    }
    if (omega < 1e-3) {
        throw AccuracyError("density_via_inversion: symbol decays too slowly near x = 1",
                            std::numeric_limits<double>::infinity());
    }
    // Half periods of cos(tau log x); partial sums alternate and Wynn's
    // epsilon removes the algebraic tail.
    res.accelerated = true;
    const double width = std::numbers::pi / omega;
    std::vector<double> partial;
    double sum = 0.0, quad_err = 0.0;
    quad::Extrapolation best;
    for (int k = 0; k < 600; ++k) {
        const double lo = k * width;
        const auto p = quad::gauss_legendre(integrand, lo, lo + width, 1e-4 * tol);
        sum += p.value;
        quad_err += p.abs_error_estimate;
        partial.push_back(sum);
        if (partial.size() >= 24) {
            std::vector<double> window(partial.end() - 24, partial.end());
            best = quad::wynn_epsilon(window);
            res.truncation = lo + width;
            if (best.error + quad_err <= tol) break;
        }
    }
    res.value = best.value;
    res.abs_error_estimate = best.error + quad_err;
    if (!(res.abs_error_estimate <= tol)) {
        throw AccuracyError("density_via_inversion: extrapolation did not settle", res.abs_error_estimate);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Two-dimensional Selberg integral

struct SelbergCheck {
    double quadrature = 0.0;       ///< outer v = t - u, inner u
    double quadrature_swapped = 0.0;  ///< outer t, inner v
    double closed_form = 0.0;
    double rel_error = 0.0;
    double abs_error_estimate = 0.0;
};

/// int_{[0,1]^2} (t(1-t)u(1-u))^{alpha-1/2} |t-u|^{2s-2alpha-1} dt du against
///   G(alpha+1/2)^2 G(s)^2 G(2s-2alpha) / (G(2s) G(s-alpha+1/2) G(alpha+s+1/2)).
/// The square is folded onto the triangle u < t and the diagonal becomes the
/// edge v = 0.
inline SelbergCheck selberg2_check(double alpha, double s, double tol = 1e-10) {
    if (!(alpha > -0.5) || !std::isfinite(alpha)) throw DomainError("selberg2_check: alpha must exceed -1/2");
    if (!(s > std::max(0.0, alpha) && s < alpha + 0.5)) {
        throw DomainError("selberg2_check: s must lie in (max(0, alpha), alpha + 1/2)");
    }
    const double e = alpha - 0.5;
    const double g = 2.0 * s - 2.0 * alpha - 1.0;
    if (!(g > -1.0)) throw DomainError("selberg2_check: diagonal exponent must exceed -1");
    auto pw = [](double x, double p) { return p == 0.0 ? 1.0 : std::pow(x, p); };

    // outer v in (0,1), inner u in (0, 1-v), t = u + v
    quad::GapFunction outer1 = [&](double, double v_lo, double v_hi) {
        quad::GapFunction inner = [&](double, double u_lo, double u_hi) {
            // u_lo = u, u_hi = 1 - v - u = 1 - t
            return pw(u_lo * (v_lo + u_hi), e) * pw((u_lo + v_lo) * u_hi, e);
        };
        return pw(v_lo, g) * quad::tanh_sinh(inner, 0.0, v_hi, 0.1 * tol).value;
    };
    // outer t in (0,1), inner v in (0, t), u = t - v
    quad::GapFunction outer2 = [&](double t, double t_lo, double t_hi) {
        quad::GapFunction inner = [&](double, double v_lo, double v_hi) {
            // v_hi = t - v = u, 1 - u = t_hi + v
            return pw(v_lo, g) * pw(v_hi, e) * pw(t_hi + v_lo, e);
        };
        return pw(t_lo, e) * pw(t_hi, e) * quad::tanh_sinh(inner, 0.0, t, 0.1 * tol).value;
    };
    const auto r1 = quad::tanh_sinh(outer1, 0.0, 1.0, tol);
    const auto r2 = quad::tanh_sinh(outer2, 0.0, 1.0, tol);
    SelbergCheck c;
    c.quadrature = 2.0 * r1.value;
    c.quadrature_swapped = 2.0 * r2.value;
    c.abs_error_estimate = 2.0 * std::max(r1.abs_error_estimate, r2.abs_error_estimate);
    c.closed_form = std::exp(2.0 * specfun::ln_gamma(alpha + 0.5) + 2.0 * specfun::ln_gamma(s) +
                             specfun::ln_gamma(2.0 * s - 2.0 * alpha) - specfun::ln_gamma(2.0 * s) -
                             specfun::ln_gamma(s - alpha + 0.5) - specfun::ln_gamma(alpha + s + 0.5));
    c.rel_error = std::fabs(c.quadrature - c.closed_form) / c.closed_form;
    return c;
}

// ---------------------------------------------------------------------------
// Beta-Gamma products

/// Draws X = B_{a1, c1-a1} G_{a2} ... G_{an} / (B_{b1, d1-b1} G_{b2} ... G_{bm})
/// for #c <= 1 and #d <= 1, with B_{a,0} = 1. Sample i uses stream 2 of the
/// counter generator at index i.
inline std::vector<double> sample_ratio_product(const GammaRatioSpec& spec, std::uint64_t seed, std::size_t count,
                                                unsigned threads = 1) {
    if (spec.c.size() > 1 || spec.d.size() > 1) throw DomainError("sample_ratio_product: needs #c <= 1 and #d <= 1");
    if (!spec.c.empty() && (spec.a.empty() || spec.a.front() > spec.c.front())) {
        throw DomainError("sample_ratio_product: needs a1 <= c1");
    }
    if (!spec.d.empty() && (spec.b.empty() || spec.b.front() > spec.d.front())) {
        throw DomainError("sample_ratio_product: needs b1 <= d1");
    }
    auto side = [](random::CounterRng& rng, const std::vector<double>& top, const std::vector<double>& bottom) {
        double v = 1.0;
        std::size_t first = 0;
        if (!bottom.empty()) {
            const double rest = bottom.front() - top.front();
            if (rest > 0.0) v *= rng.beta(top.front(), rest);
            first = 1;
        }
        for (std::size_t i = first; i < top.size(); ++i) v *= rng.gamma(top[i]);
        return v;
    };
    std::vector<double> out(count);
    parallel_for(count, threads, [&](std::size_t i) {
        random::CounterRng rng(seed, 2, i);
        const double num = side(rng, spec.a, spec.c);
        const double den = side(rng, spec.b, spec.d);
        out[i] = num / den;
    });
    return out;
}

}  // namespace besselprob::gammatype
