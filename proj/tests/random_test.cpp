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

#include "besselprob/random.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "besselprob/parallel.hpp"

namespace {

using namespace besselprob::random;

TEST(Philox, KnownAnswerVectors) {
    using A = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}), (A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterRng, UniformIsOpenAndReproducible) {
    CounterRng a(42, 0, 7), b(42, 0, 7), c(42, 1, 7), d(43, 0, 7);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_EQ(u, b.uniform());
        const double v = c.uniform(), w = d.uniform();
        EXPECT_NE(u, v);
        EXPECT_NE(u, w);
    }
}

TEST(CounterRng, UniformMoments) {
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        CounterRng r(1, 0, static_cast<std::uint64_t>(i));
        const double u = r.uniform();
        s += u;
        s2 += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(s2 / n, 1.0 / 3.0, 4.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST(NormalQuantile, MatchesBoost) {
    const boost::math::normal_distribution<double> nd;
    for (double p : {1e-300, 1e-12, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.99, 1.0 - 1e-10}) {
        const double ref = boost::math::quantile(nd, p);
        EXPECT_NEAR(normal_quantile(p), ref, 1e-13 * std::max(1.0, std::fabs(ref))) << p;
    }
    EXPECT_THROW(normal_quantile(0.0), besselprob::DomainError);
    EXPECT_THROW(normal_quantile(1.0), besselprob::DomainError);
}

struct Moments {
    double mean, var;
};

template <class Draw>
Moments sample_moments(int n, Draw draw) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        CounterRng r(99, 3, static_cast<std::uint64_t>(i));
        const double x = draw(r);
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    return {m, s2 / n - m * m};
}

TEST(CounterRng, GammaBetaNormalMoments) {
    const int n = 100000;
    for (double k : {0.3, 1.0, 2.5, 7.0}) {
        const auto m = sample_moments(n, [k](CounterRng& r) { return r.gamma(k); });
        EXPECT_NEAR(m.mean, k, 4.0 * std::sqrt(k / n)) << k;
        EXPECT_NEAR(m.var, k, 0.05 * k + 4.0 * std::sqrt(6.0 * k * k / n)) << k;
    }
    const auto b = sample_moments(n, [](CounterRng& r) { return r.beta(2.0, 3.0); });
    EXPECT_NEAR(b.mean, 0.4, 4.0 * std::sqrt(0.04 / n));
    EXPECT_NEAR(b.var, 0.04, 2e-3);
    const auto z = sample_moments(n, [](CounterRng& r) { return r.normal(); });
    EXPECT_NEAR(z.mean, 0.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(z.var, 1.0, 0.02);
    const auto e = sample_moments(n, [](CounterRng& r) { return r.exponential(); });
    EXPECT_NEAR(e.mean, 1.0, 4.0 / std::sqrt(n));
}

TEST(ParallelFor, ResultsIndependentOfThreadCount) {
    auto run = [](unsigned threads) {
        std::vector<double> v(5000);
        besselprob::parallel_for(v.size(), threads, [&](std::size_t i) {
            CounterRng r(5, 0, i);
            v[i] = r.gamma(1.7);
        });
        return v;
    };
    const auto one = run(1);
    EXPECT_EQ(one, run(3));
    EXPECT_EQ(one, run(8));
}

TEST(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(besselprob::parallel_for(100, 4,
                                          [](std::size_t i) {
                                              if (i == 57) throw besselprob::DomainError("x");
                                          }),
                 besselprob::DomainError);
}

}  // namespace
