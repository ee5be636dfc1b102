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

#include "besselprob/quad.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

namespace {

using namespace besselprob::quad;
constexpr double kPi = std::numbers::pi;

// Gamma-function oracles come from Boost, independent of specfun.
double tgamma(double x) { return boost::math::tgamma(x); }

TEST(GaussLegendre, RuleIntegratesPolynomialsExactly) {
    for (int n : {16, 32, 64, 128}) {
        const auto& r = gauss_rule(n);
        double w = 0.0, x2 = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            w += r.weights[i];
            x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        EXPECT_NEAR(w, 2.0, 1e-14) << n;
        EXPECT_NEAR(x2, 2.0 / 3.0, 1e-14) << n;
    }
    EXPECT_THROW(gauss_rule(7), besselprob::DomainError);
}

TEST(GaussLegendre, TrivialIntegrals) {
    auto one = gauss_legendre([](double) { return 1.0; }, 0.0, 1.0, 1e-12);
    EXPECT_TRUE(one.converged);
    EXPECT_NEAR(one.value, 1.0, 1e-14);
    auto sine = gauss_legendre([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    EXPECT_NEAR(sine.value, 2.0, 1e-13);
    auto semi = gauss_legendre([](double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }, -1.0,
                               1.0, 1e-10);
    EXPECT_TRUE(semi.converged);
    EXPECT_NEAR(semi.value, kPi / 2.0, 1e-10);
}

TEST(GaussLegendre, ReportsNonConvergence) {
    auto r = gauss_legendre([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, 1e-14, 20);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.abs_error_estimate, 1e-14);
}

TEST(GaussLegendre, TighterToleranceStaysWithinEstimate) {
    auto f = [](double x) { return std::exp(-x) * std::cos(5.0 * x) / (1.0 + x * x); };
    const auto coarse = gauss_legendre(f, 0.0, 10.0, 1e-8);
    const auto fine = gauss_legendre(f, 0.0, 10.0, 1e-9);
    ASSERT_TRUE(coarse.converged);
    EXPECT_LE(std::fabs(fine.value - coarse.value), coarse.abs_error_estimate + 1e-15);
}

TEST(TanhSinh, EndpointSingularities) {
    // Plain form: 1 - t^2 is formed from a rounded t, which limits accuracy.
    const double beta = std::sqrt(kPi) * tgamma(0.6) / tgamma(1.1);
    const auto r = tanh_sinh([](double t) { return std::pow(1.0 - t * t, -0.4); }, -1.0, 1.0, 1e-12);
    EXPECT_NEAR(r.value, beta, 1e-9);
    GapFunction g = [](double, double l, double h) { return std::pow(l * h, -0.4); };
    EXPECT_NEAR(tanh_sinh(g, -1.0, 1.0, 1e-13).value, beta, 1e-13);

    const auto sq = tanh_sinh([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-12);
    EXPECT_TRUE(sq.converged);
    EXPECT_NEAR(sq.value, 2.0, 1e-12);

    const auto semi = tanh_sinh([](double t) { return std::sqrt(1.0 - t * t); }, -1.0, 1.0, 1e-13);
    EXPECT_NEAR(semi.value, std::sqrt(kPi) * tgamma(1.5) / tgamma(2.0), 1e-13);
}

TEST(TanhSinh, GapAwareIntegrandResolvesStrongSingularity) {
    // (1-t^2)^{-0.9} = (gap_lo gap_hi)^{-0.9}; the plain form loses the edges.
    GapFunction f = [](double, double l, double h) { return std::pow(l * h, -0.9); };
    const auto r = tanh_sinh(f, -1.0, 1.0, 1e-10);
    EXPECT_NEAR(r.value, std::sqrt(kPi) * tgamma(0.1) / tgamma(0.6), 1e-9);
}

TEST(TanhSinh, DetectsDivergence) {
    EXPECT_THROW(tanh_sinh([](double t) { return 1.0 / t; }, 0.0, 1.0, 1e-10),
                 besselprob::DivergenceError);
}

TEST(TanhSinh, TighterToleranceStaysWithinEstimate) {
    auto f = [](double t) { return std::log(t) * std::cos(3.0 * t); };
    const auto coarse = tanh_sinh(f, 0.0, 2.0, 1e-7);
    const auto fine = tanh_sinh(f, 0.0, 2.0, 1e-8);
    ASSERT_TRUE(coarse.converged);
    EXPECT_LE(std::fabs(fine.value - coarse.value), coarse.abs_error_estimate + 1e-15);
}

TEST(ExpSinh, HalfLineIntegrals) {
    const auto e = exp_sinh([](double x, double) { return std::exp(-x); }, 0.0, 1e-12);
    EXPECT_NEAR(e.value, 1.0, 1e-12);
    const auto g = exp_sinh([](double x, double) { return std::pow(x, -0.5) * std::exp(-x); }, 0.0, 1e-12);
    EXPECT_NEAR(g.value, std::sqrt(kPi), 1e-11);
    const auto c = exp_sinh([](double x, double) { return 1.0 / (1.0 + x * x); }, 0.0, 1e-10);
    EXPECT_NEAR(c.value, kPi / 2.0, 1e-9);
}

TEST(WynnEpsilon, AcceleratesAlternatingSeries) {
    // log 2 = 1 - 1/2 + 1/3 - ...
    std::vector<double> s;
    double acc = 0.0;
    for (int k = 1; k <= 20; ++k) {
        acc += ((k % 2) ? 1.0 : -1.0) / k;
        s.push_back(acc);
    }
    const auto ex = wynn_epsilon(s);
    EXPECT_NEAR(ex.value, std::log(2.0), 1e-12);
    EXPECT_LT(std::fabs(s.back() - std::log(2.0)), 0.05);
    EXPECT_LT(ex.error, 1e-9);
}

TEST(WynnEpsilon, ConstantSequenceIsFixedPoint) {
    const auto ex = wynn_epsilon({3.0, 3.0, 3.0, 3.0});
    EXPECT_EQ(ex.value, 3.0);
}

TEST(Fresnel, MatchesGammaCosine) {
    EXPECT_NEAR(fresnel_cos_moment(0.5).value, std::sqrt(kPi / 2.0), 1e-10);
    EXPECT_NEAR(fresnel_cos_moment(0.25).value, tgamma(0.25) * std::cos(kPi / 8.0), 1e-10);
    for (int i = 1; i <= 9; ++i) {
        const double mu = 0.1 * i;
        const auto r = fresnel_cos_moment(mu);
        EXPECT_TRUE(r.converged) << mu;
        EXPECT_NEAR(r.value, tgamma(mu) * std::cos(kPi * mu / 2.0), 1e-8) << mu;
    }
}

TEST(Fresnel, ValueTendsToZeroAsMuApproachesOne) {
    double prev = std::fabs(fresnel_cos_moment(0.9).value);
    for (double mu : {0.95, 0.99, 0.999}) {
        const double v = std::fabs(fresnel_cos_moment(mu).value);
        EXPECT_LT(v, prev) << mu;
        prev = v;
    }
    EXPECT_LT(prev, 2e-3);
    EXPECT_THROW(fresnel_cos_moment(1.0), besselprob::DomainError);
}

double ws_oracle(double alpha, double s) {
    return tgamma(s) * tgamma(alpha + 0.5 - s) /
           (2.0 * std::sqrt(kPi) * tgamma(0.5 + s) * tgamma(alpha + 0.5 + s));
}

TEST(WsIntegral, SpotValues) {
    const auto r = ws_integral(0.5, 0.25, 1e-9);
    EXPECT_NEAR(r.value / ws_oracle(0.5, 0.25), 1.0, 1e-9);
    // Gamma(1/4)Gamma(3/4) / (2 sqrt(pi) Gamma(3/4) Gamma(5/4)) = 2 / sqrt(pi)
    EXPECT_NEAR(r.value, 2.0 / std::sqrt(kPi), 1e-9);
    EXPECT_NEAR(ws_integral(1.0, 0.5, 1e-9).value, ws_oracle(1.0, 0.5), 1e-9);
    EXPECT_NEAR(ws_rhs(1.0, 0.5), ws_oracle(1.0, 0.5), 1e-14);
}

TEST(WsIntegral, GridAgreesWithClosedForm) {
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const double s = frac * (alpha + 0.5);
            const auto r = ws_integral(alpha, s, 1e-8);
            EXPECT_NEAR(r.value / ws_oracle(alpha, s), 1.0, 1e-7) << alpha << " " << s;
            EXPECT_LE(std::fabs(r.value - ws_oracle(alpha, s)), std::max(r.abs_error_estimate, 1e-12))
                << alpha << " " << s;
        }
    }
}

TEST(WsIntegral, GrowsWithoutBoundAsSTendsToZero) {
    double prev = 0.0;
    for (double s : {0.1, 0.01, 0.001}) {
        const double v = ws_integral(0.0, s, 1e-8).value;
        EXPECT_GT(v, prev);
        EXPECT_NEAR(v / ws_oracle(0.0, s), 1.0, 1e-8);
        prev = v;
    }
    // s Gamma(s) -> 1, so s times the integral tends to 1/(2 pi).
    EXPECT_NEAR(0.001 * prev, 1.0 / (2.0 * kPi), 1e-3);
}

TEST(WsIntegral, TailMatchesDirectQuadrature) {
    for (double alpha : {0.0, 1.5}) {
        const double s = 0.3;
        const double Z = 45.0, W = 95.0;
        auto f = [&](double z) {
            const double j = besselprob::specfun::bessel_j(besselprob::specfun::BesselOrder{alpha}, z);
            return std::pow(z, -2.0 * s) * j * j;
        };
        const double middle = gauss_legendre(f, Z, W, 1e-13).value;
        const double lhs = ws_tail(alpha, s, Z).value;
        const double rhs = middle + ws_tail(alpha, s, W).value;
        EXPECT_NEAR(lhs, rhs, 1e-12) << alpha;
    }
}

TEST(WsIntegral, ShiftedPartitionAgreesWithinEstimate) {
    for (double alpha : {0.0, 1.0}) {
        const double s = 0.4 * (alpha + 0.5);
        const auto base = ws_integral(make_ws_plan(alpha, s), 1e-9);
        const auto shifted = ws_integral(make_ws_plan(alpha, s, 0.5 * kPi), 1e-9);
        EXPECT_LE(std::fabs(base.value - shifted.value),
                  std::max(base.abs_error_estimate, 1e-13) + shifted.abs_error_estimate)
            << alpha;
    }
}

TEST(WsIntegral, PlanInvariantsAndDomain) {
    const auto plan = make_ws_plan(1.0, 0.5);
    EXPECT_GE(plan.acceleration_depth, 4);
    for (std::size_t i = 1; i < plan.breakpoints.size(); ++i) {
        EXPECT_LT(plan.breakpoints[i - 1], plan.breakpoints[i]);
    }
    EXPECT_THROW(ws_integral(0.5, 0.0, 1e-8), besselprob::DomainError);
    EXPECT_THROW(ws_integral(0.5, 1.0, 1e-8), besselprob::DomainError);
    EXPECT_THROW(ws_integral(-0.5, 0.1, 1e-8), besselprob::DomainError);
    EXPECT_THROW(make_ws_plan(1.0, 0.5, 0.0, 3), besselprob::DomainError);
}

}  // namespace
