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
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace besselprob {

/// Parses "2.5", "16/5" or "-3" into a double. Fractions are divided once,
/// so "16/5" is the nearest double to 3.2.
inline double parse_rational(std::string_view text) {
    auto parse = [&](std::string_view part) {
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        double v = 0.0;
        const auto* end = part.data() + part.size();
        const auto [ptr, ec] = std::from_chars(part.data(), end, v);
        if (part.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
            throw DomainError("parse_rational: cannot parse '" + std::string(text) + "'");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse(text);
    const double num = parse(text.substr(0, slash));
    const double den = parse(text.substr(slash + 1));
    if (den == 0.0) throw DomainError("parse_rational: zero denominator");
    return num / den;
}

/// Parameters of a Mellin transform of Gamma type,
///   E[X^s] = (a)_s (b)_{-s} / ((c)_s (d)_{-s}),
/// where bold symbols are products of Pochhammer symbols over each multiset.
/// Entries are kept sorted ascending.
struct GammaRatioSpec {
    std::vector<double> a, b, c, d;

    GammaRatioSpec() = default;
    GammaRatioSpec(std::vector<double> a_, std::vector<double> b_, std::vector<double> c_,
                   std::vector<double> d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        normalize();
    }

    /// Sorts every multiset and rejects nonpositive or non-finite entries.
    void normalize() {
        for (auto* v : {&a, &b, &c, &d}) {
            for (double x : *v) {
                if (!(x > 0.0) || !std::isfinite(x)) {
                    throw DomainError("GammaRatioSpec: entries must be positive and finite");
                }
            }
            std::sort(v->begin(), v->end());
        }
    }

    /// Set sizes: n = #a, m = #b, p = #c, q = #d.
    std::size_t n() const { return a.size(); }
    std::size_t m() const { return b.size(); }
    std::size_t p() const { return c.size(); }
    std::size_t q() const { return d.size(); }

    /// Open strip (-min(a), min(b)); an empty set contributes an infinite end.
    double strip_lo() const {
        return a.empty() ? -std::numeric_limits<double>::infinity() : -a.front();
    }
    double strip_hi() const {
        return b.empty() ? std::numeric_limits<double>::infinity() : b.front();
    }
    bool in_strip(double s) const { return s > strip_lo() && s < strip_hi(); }

    /// Exchanges numerator and denominator sets.
    GammaRatioSpec reciprocal() const { return GammaRatioSpec(c, d, a, b); }
    /// Exchanges the s and -s roles, i.e. the law of 1/X.
    GammaRatioSpec mirrored() const { return GammaRatioSpec(b, a, d, c); }
};

inline double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

namespace specfun {

/// log of (a)_s (b)_{-s} / ((c)_s (d)_{-s}). Every Gamma argument has to be
/// positive, which for a and b is the strip condition.
inline double log_pochhammer_ratio(const GammaRatioSpec& spec, double s) {
    if (!std::isfinite(s)) throw DomainError("pochhammer_ratio: s must be finite");
    if (!spec.in_strip(s)) throw DomainError("pochhammer_ratio: s outside the strip");
    auto term = [](double x, double shift) {
        if (!(x + shift > 0.0)) {
            throw DomainError("pochhammer_ratio: Gamma argument not positive");
        }
        return ln_gamma(x + shift) - ln_gamma(x);
    };
    double l = 0.0;
    for (double x : spec.a) l += term(x, s);
    for (double x : spec.b) l += term(x, -s);
    for (double x : spec.c) l -= term(x, s);
    for (double x : spec.d) l -= term(x, -s);
    return l;
}

inline double pochhammer_ratio(const GammaRatioSpec& spec, double s) {
    if (s == 0.0) return 1.0;
    const double l = log_pochhammer_ratio(spec, s);
    if (l > 709.0) throw RangeError("pochhammer_ratio: overflow", l);
    return std::exp(l);
}

}  // namespace specfun
}  // namespace besselprob
