// SPDX-License-Identifier: Apache-2.0
//
// leochan: LEO satellite-to-ground propagation channel library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <leochan/special.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace leochan;

TEST(Special, BesselI0MatchesBoost)
{
    for (double x : {0.0, 1e-8, 0.3, 1.0, 5.0, 12.5, 24.9, 25.1, 40.0, 100.0, 600.0})
    {
        const double ref = boost::math::cyl_bessel_i(0, x);
        EXPECT_NEAR(special::bessel_i0(x) / ref, 1.0, 1e-13) << x;
        EXPECT_NEAR(special::log_bessel_i0(x), std::log(ref), 1e-12 * std::fmax(1.0, std::log(ref))) << x;
    }
}

TEST(Special, LogI0StaysFiniteBeyondOverflow)
{
    const double x = 1e4;
    EXPECT_TRUE(std::isinf(std::cosh(x)));
    // I0(x) ~ e^x / sqrt(2 pi x)
    EXPECT_NEAR(special::log_bessel_i0(x), x - 0.5 * std::log(2 * M_PI * x), 1e-4);
}

TEST(Special, ScaledI0MatchesDefinition)
{
    for (double x : {0.5, 20.0, 30.0, 300.0})
        EXPECT_NEAR(special::bessel_i0e(x), boost::math::cyl_bessel_i(0, x) * std::exp(-x), 1e-13);
}

TEST(Special, Hyp1f1MatchesBoost)
{
    struct Case
    {
        double a, b, z;
    };
    for (const Case c : {Case{1.0, 1.0, 2.0}, Case{0.5, 1.0, 3.7}, Case{5.0, 1.0, 10.0}, Case{2.0, 1.0, -4.0},
                         Case{50.0, 1.0, 20.0}, Case{0.5, 1.0, -30.0}, Case{3.0, 2.5, 0.0}, Case{1.5, 1.0, 80.0}})
    {
        const double ref = boost::math::hypergeometric_1F1(c.a, c.b, c.z);
        EXPECT_NEAR(special::hyp1f1(c.a, c.b, c.z) / ref, 1.0, 1e-11) << c.a << ' ' << c.b << ' ' << c.z;
        if (ref > 0)
            EXPECT_NEAR(special::log_hyp1f1(c.a, c.b, c.z), std::log(ref),
                        1e-11 * std::fmax(1.0, std::fabs(std::log(ref))));
        else
            EXPECT_THROW(special::log_hyp1f1(c.a, c.b, c.z), NumericError);
    }
}

TEST(Special, Hyp1f1ClosedForms)
{
    // 1F1(a; a; z) = e^z
    EXPECT_NEAR(special::hyp1f1(2.0, 2.0, 1.5), std::exp(1.5), 1e-13);
    // 1F1(1; 2; z) = (e^z - 1) / z
    EXPECT_NEAR(special::hyp1f1(1.0, 2.0, 0.7), std::expm1(0.7) / 0.7, 1e-14);
    // Kummer: 1F1(a; b; -z) = e^-z 1F1(b - a; b; z)
    EXPECT_NEAR(special::hyp1f1(0.3, 1.0, -6.0), std::exp(-6.0) * special::hyp1f1(0.7, 1.0, 6.0), 1e-14);
}

TEST(Special, Hyp1f1LogFormHandlesHugeArguments)
{
    // Value is far outside double range; log form must stay finite.
    const double l = special::log_hyp1f1(5.0, 1.0, 2000.0);
    EXPECT_TRUE(std::isfinite(l));
    EXPECT_GT(l, 2000.0);
    // Leading asymptotic: 1F1(a;b;z) ~ Gamma(b)/Gamma(a) e^z z^(a-b)
    EXPECT_NEAR(l, 2000.0 + 4.0 * std::log(2000.0) - std::lgamma(5.0), 0.05);
}

TEST(Special, Hyp1f1NegativeIntegerATerminates)
{
    // 1F1(-2; 1; z) = 1 - 2z + z^2 / 2 (Laguerre polynomial)
    for (double z : {0.5, 3.0, 7.0})
        EXPECT_NEAR(special::hyp1f1(-2.0, 1.0, z), 1 - 2 * z + z * z / 2, 1e-12);
}

TEST(Special, Hyp1f1RejectsBadArguments)
{
    EXPECT_THROW(special::hyp1f1(1.0, 0.0, 1.0), DomainError);
    EXPECT_THROW(special::log_hyp1f1(-1.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(special::hyp1f1(1.0, 1.0, 1e7), NumericError);
}
