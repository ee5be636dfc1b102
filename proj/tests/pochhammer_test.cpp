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

#include <gtest/gtest.h>

#include <cmath>

#include "besselprob/gamma_ratio_spec.hpp"

namespace {

using besselprob::DomainError;
using besselprob::GammaRatioSpec;
using besselprob::parse_rational;
using besselprob::specfun::pochhammer_ratio;

TEST(ParseRational, AcceptsFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("16/5"), 16.0 / 5.0);
    EXPECT_EQ(parse_rational(" 2.5 "), 2.5);
    EXPECT_EQ(parse_rational("-3"), -3.0);
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("abc"), DomainError);
    EXPECT_THROW(parse_rational(""), DomainError);
}

TEST(GammaRatioSpec, SortsAndValidates) {
    const GammaRatioSpec spec({3.0, 1.0}, {}, {2.0, 0.5}, {});
    EXPECT_EQ(spec.a.front(), 1.0);
    EXPECT_EQ(spec.c.front(), 0.5);
    EXPECT_EQ(spec.strip_lo(), -1.0);
    EXPECT_TRUE(std::isinf(spec.strip_hi()));
    EXPECT_THROW(GammaRatioSpec({0.0}, {}, {}, {}), DomainError);
}

TEST(PochhammerRatio, TrivialValues) {
    const GammaRatioSpec spec({1.0, 3.0}, {2.0}, {2.0, 2.0}, {4.0});
    EXPECT_EQ(pochhammer_ratio(spec, 0.0), 1.0);
    EXPECT_NEAR(pochhammer_ratio(GammaRatioSpec({1.0}, {}, {2.0}, {}), 1.0), 0.5, 1e-15);
}

TEST(PochhammerRatio, LargeArgumentLimitIsTheAtom) {
    const GammaRatioSpec spec({2.0, 16.0 / 5.0, 17.0 / 5.0}, {}, {11.0 / 5.0, 12.0 / 5.0, 4.0}, {});
    EXPECT_NEAR(pochhammer_ratio(spec, 1e7), 150.0 / 132.0, 1e-6);
    EXPECT_GT(std::fabs(pochhammer_ratio(spec, 10.0) - 150.0 / 132.0), 1e-4);
}

TEST(PochhammerRatio, ReciprocityUnderSetExchange) {
    const GammaRatioSpec spec({1.3}, {0.8}, {2.1}, {1.9});
    for (double s : {-0.7, -0.2, 0.3, 0.75}) {
        EXPECT_NEAR(pochhammer_ratio(spec, s) * pochhammer_ratio(spec.reciprocal(), s), 1.0, 1e-14);
        EXPECT_NEAR(pochhammer_ratio(spec, s) / pochhammer_ratio(spec.mirrored(), -s), 1.0, 1e-14);
    }
}

TEST(PochhammerRatio, OutsideStripThrows) {
    const GammaRatioSpec spec({1.0}, {2.0}, {}, {});
    EXPECT_THROW(pochhammer_ratio(spec, -1.0), DomainError);
    EXPECT_THROW(pochhammer_ratio(spec, 2.0), DomainError);
    // Denominator Gamma argument d - s must stay positive too.
    EXPECT_THROW(pochhammer_ratio(GammaRatioSpec({}, {}, {}, {0.5}), 0.6), DomainError);
}

}  // namespace
