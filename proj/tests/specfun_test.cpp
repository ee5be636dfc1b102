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

#include "besselprob/specfun.hpp"

#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <numbers>

#include "oracles.hpp"

namespace {

using besselprob::DomainError;
using namespace besselprob::specfun;
constexpr double kPi = std::numbers::pi;

TEST(LnGamma, TrivialValues) {
    EXPECT_EQ(ln_gamma(1.0), 0.0 * ln_gamma(1.0));
    EXPECT_NEAR(ln_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(ln_gamma(4.0), std::log(6.0), 1e-14);
    EXPECT_NEAR(ln_gamma(0.5), 0.5 * std::log(kPi), 1e-14);
}

TEST(LnGamma, MatchesHighPrecisionOnGrid) {
    for (double x = 0.01; x < 60.0; x *= 1.07) {
        const double ref = oracle::ln_gamma(x);
        EXPECT_NEAR(ln_gamma(x), ref, 3e-15 * std::max(1.0, std::fabs(ref))) << x;
    }
}

TEST(LnGamma, RejectsNonpositive) {
    EXPECT_THROW(ln_gamma(0.0), DomainError);
    EXPECT_THROW(ln_gamma(-1.5), DomainError);
    EXPECT_THROW(ln_gamma(std::nan("")), DomainError);
}

TEST(Rgamma, PolesAndReflection) {
    EXPECT_EQ(rgamma(0.0), 0.0);
    EXPECT_EQ(rgamma(-3.0), 0.0);
    // Gamma(-1/2) = -2 sqrt(pi)
    EXPECT_NEAR(rgamma(-0.5), -1.0 / (2.0 * std::sqrt(kPi)), 1e-15);
    EXPECT_NEAR(rgamma(3.0), 0.5, 1e-15);
}

TEST(Digamma, EulerMascheroni) {
    // Boost evaluates the constant from its defining series at 50 digits.
    const double gamma_e = boost::math::constants::euler<oracle::hp>().convert_to<double>();
    EXPECT_NEAR(digamma(1.0), -gamma_e, 1e-15);
    EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-15);
}

TEST(Digamma, RecurrenceAndDuplication) {
    EXPECT_NEAR(digamma(2.0), digamma(1.0) + 1.0, 1e-15);
    EXPECT_NEAR(digamma(0.5), digamma(1.0) - 2.0 * std::log(2.0), 1e-14);
    for (double x = 0.05; x < 40.0; x *= 1.3) {
        EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-13 * (1.0 + 1.0 / x)) << x;
    }
    EXPECT_THROW(digamma(0.0), DomainError);
}

TEST(ComplexLnGamma, AgreesWithRealAxisAndRecurrence) {
    for (double x : {0.3, 1.0, 2.5, 7.0, 30.0}) {
        const auto z = ln_gamma(std::complex<double>(x, 0.0));
        EXPECT_NEAR(z.real(), ln_gamma(x), 1e-13) << x;
    }
    // Gamma(z+1) = z Gamma(z) off the axis.
    const std::complex<double> z(0.7, 3.2);
    const auto lhs = std::exp(ln_gamma(z + 1.0));
    const auto rhs = z * std::exp(ln_gamma(z));
    EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-13);
    // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t)
    for (double t : {0.5, 2.0, 10.0}) {
        const double m = std::abs(std::exp(ln_gamma(std::complex<double>(0.5, t))));
        EXPECT_NEAR(m * m * std::cosh(kPi * t) / kPi, 1.0, 1e-12) << t;
    }
}

TEST(BesselJ, TrivialValues) {
    EXPECT_EQ(bessel_j(BesselOrder{0.0}, 0.0), 1.0);
    EXPECT_EQ(bessel_j(BesselOrder{2.0}, 0.0), 0.0);
    EXPECT_NEAR(bessel_j(BesselOrder{0.5}, kPi), 0.0, 1e-15);
}

TEST(BesselJ, MatchesSeriesOracle) {
    EXPECT_NEAR(bessel_j(BesselOrder{1.0}, 1.0), oracle::bessel_j_series(1.0, 1.0), 1e-15);
    for (double alpha : {-0.4, 0.0, 0.5, 1.0, 2.5, 3.5}) {
        for (double z = 0.05; z <= 40.0; z += 0.37) {
            EXPECT_NEAR(bessel_j(BesselOrder{alpha}, z), oracle::bessel_j_series(alpha, z), 1e-13)
                << "alpha=" << alpha << " z=" << z;
        }
    }
}

TEST(BesselJ, HalfOrderClosedForm) {
    for (double z = 0.01; z <= 50.0; z += 0.0731) {
        const double lhs = bessel_j(BesselOrder{0.5}, z) * std::sqrt(kPi * z / 2.0);
        EXPECT_LE(std::fabs(lhs - std::sin(z)), 1e-12) << z;
    }
}

TEST(BesselJ, SeriesAndAsymptoticAgreeAcrossCrossover) {
    const besselprob::PrecisionPolicy pol;
    for (double alpha : {-0.4, 0.0, 0.5, 1.0, 2.0, 3.0}) {
        const double x0 = bessel_j_crossover(alpha);
        for (double z = x0 - 2.0; z <= x0 + 4.0; z += 0.25) {
            const double s = bessel_j_series(BesselOrder{alpha}, z, pol).value;
            const double a = bessel_j_asymptotic(BesselOrder{alpha}, z).value;
            EXPECT_LE(std::fabs(s - a), 10.0 * pol.target_abs_tol) << alpha << " " << z;
        }
    }
}

TEST(BesselJ, DomainErrors) {
    EXPECT_THROW(bessel_j(BesselOrder{-1.0}, 1.0), DomainError);
    EXPECT_THROW(bessel_j(BesselOrder{-0.5}, 0.0), DomainError);
    EXPECT_THROW(bessel_j(BesselOrder{0.5}, -1.0), DomainError);
    EXPECT_THROW(BesselOrder{std::nan("")}, DomainError);
}

TEST(BesselI, TrivialAndClosedForms) {
    EXPECT_EQ(bessel_i(BesselOrder{0.0}, 0.0), 1.0);
    const double closed = std::sqrt(2.0 / kPi) * std::sinh(1.0);
    EXPECT_NEAR(bessel_i(BesselOrder{0.5}, 1.0), closed, 1e-15);
    EXPECT_NEAR(closed, oracle::bessel_i_series(0.5, 1.0), 1e-15);
    const double ref = oracle::bessel_i_series(1.0, 2.0);
    EXPECT_NEAR(bessel_i(BesselOrder{1.0}, 2.0) / ref, 1.0, 1e-14);
}

TEST(BesselI, RelativeAccuracyOnGrid) {
    for (double alpha : {-0.4, 0.0, 0.5, 1.0, 3.0}) {
        for (double z = 0.1; z < 60.0; z *= 1.3) {
            const double ref = oracle::bessel_i_series(alpha, z);
            EXPECT_NEAR(bessel_i(BesselOrder{alpha}, z) / ref, 1.0, 1e-13) << alpha << " " << z;
        }
    }
    // Large-argument branch continues smoothly from the series.
    const double below = log_bessel_i(BesselOrder{1.0}, 499.999);
    const double above = log_bessel_i(BesselOrder{1.0}, 500.001);
    EXPECT_NEAR(above - below, 0.002, 1e-5);
}

TEST(BesselI, OverflowCarriesLogValue) {
    try {
        bessel_i(BesselOrder{0.0}, 1000.0);
        FAIL() << "expected RangeError";
    } catch (const besselprob::RangeError& e) {
        EXPECT_NEAR(e.log_value(), 1000.0 - 0.5 * std::log(2000.0 * kPi), 1e-3);
    }
}

TEST(Hyp0F1, ReducesToBessel) {
    for (double alpha : {-0.3, 0.0, 1.0, 2.5}) {
        for (double z : {0.5, 3.0, 12.0, 25.0}) {
            const double lhs = bessel_j(BesselOrder{alpha}, z) * besselprob::specfun::gamma(alpha + 1.0) *
                               std::pow(z / 2.0, -alpha);
            EXPECT_NEAR(hyp0f1(alpha + 1.0, -z * z / 4.0), lhs, 1e-12 * std::pow(z / 2, -alpha) * 10)
                << alpha << " " << z;
        }
    }
    EXPECT_EQ(hyp0f1(2.0, 0.0), 1.0);
}

TEST(BesselZeros, HalfOrderIsMultiplesOfPi) {
    const auto table = bessel_zeros(BesselOrder{0.5}, 50);
    ASSERT_EQ(table.size(), 50u);
    for (int n = 1; n <= 50; ++n) {
        EXPECT_NEAR(table[n - 1] / (n * kPi), 1.0, 1e-12) << n;
    }
}

TEST(BesselZeros, FirstZeroOfJ0BracketedByOracle) {
    EXPECT_GT(oracle::bessel_j_series(0.0, 2.4), 0.0);
    EXPECT_LT(oracle::bessel_j_series(0.0, 2.5), 0.0);
    // Bisection on the oracle itself.
    double lo = 2.4, hi = 2.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (oracle::bessel_j_series(0.0, mid) > 0.0 ? lo : hi) = mid;
    }
    const auto table = bessel_zeros(BesselOrder{0.0}, 1);
    EXPECT_NEAR(table[0], 0.5 * (lo + hi), 1e-14);
}

TEST(BesselZeros, OrderingResidualsAndSpacing) {
    const besselprob::PrecisionPolicy pol;
    for (double alpha : {-0.4, 0.0, 1.0, 3.0, 5.5}) {
        const auto table = bessel_zeros(BesselOrder{alpha}, 300, pol);
        for (std::size_t i = 0; i < table.size(); ++i) {
            EXPECT_LE(std::fabs(bessel_j(BesselOrder{alpha}, table[i])), 10.0 * pol.target_abs_tol);
            if (i > 0) {
                EXPECT_LT(table[i - 1], table[i]);
            }
        }
        EXPECT_NEAR(table[299] - table[298], kPi, 1e-4);
    }
    EXPECT_THROW(bessel_zeros(BesselOrder{0.0}, 0), DomainError);
}

}  // namespace
