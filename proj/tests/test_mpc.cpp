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

#include <leochan/mpc.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace leochan;

namespace
{

Snapshot make(std::vector<Mpc> mpcs)
{
    return Snapshot{100.0, ElevationAngle(14.4775), 400.0, std::move(mpcs)};
}

Mpc ray(double amp, double phase = 0.0, int interactions = 1, double delay = 0.0)
{
    Mpc m;
    m.amplitude = amp;
    m.phase_rad = phase;
    m.interactions = interactions;
    m.delay_s = delay;
    return m;
}

} // namespace

TEST(Mpc, CoherentPowerSinglePath)
{
    const auto s = make({ray(0.1, 1.234, 0)});
    EXPECT_NEAR(coherent_power_dbm(s, CoherentMode::power_sum, 30).dbm, 10.0, 1e-12);
    EXPECT_NEAR(coherent_power_dbm(s, CoherentMode::phasor_sum, 30).dbm, 10.0, 1e-12);
}

TEST(Mpc, CoherentPowerTwoInPhasePaths)
{
    const auto s = make({ray(0.1, 0.0, 0), ray(0.1, 0.0)});
    EXPECT_NEAR(coherent_power_dbm(s, CoherentMode::power_sum, 30).dbm, 10 + 10 * std::log10(2.0), 1e-12);
    EXPECT_NEAR(coherent_power_dbm(s, CoherentMode::power_sum, 30).dbm, 13.01, 5e-3);
    EXPECT_NEAR(coherent_power_dbm(s, CoherentMode::phasor_sum, 30).dbm, 16.02, 5e-3);
}

TEST(Mpc, CoherentPowerCancellation)
{
    const auto s = make({ray(0.1, 0.0, 0), ray(0.1, M_PI)});
    const auto ph = coherent_power_dbm(s, CoherentMode::phasor_sum, 30);
    EXPECT_TRUE(ph.cancelled);
    EXPECT_TRUE(std::isinf(ph.dbm) && ph.dbm < 0);
    const auto ps = coherent_power_dbm(s, CoherentMode::power_sum, 30);
    EXPECT_FALSE(ps.cancelled);
    EXPECT_NEAR(ps.dbm, 13.0103, 1e-4);
}

TEST(Mpc, PhasorSumBoundedByCauchySchwarz)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<Mpc> rays;
        const int n = 1 + trial % 9;
        for (int i = 0; i < n; ++i)
            rays.push_back(ray(u(rng), 2 * M_PI * u(rng), i == 0 ? 0 : 1));
        const auto s = make(rays);
        const auto ph = coherent_power_dbm(s, CoherentMode::phasor_sum, 30);
        const auto ps = coherent_power_dbm(s, CoherentMode::power_sum, 30);
        if (!ph.cancelled)
        {
            EXPECT_LE(ph.dbm, ps.dbm + 10 * std::log10(double(n)) + 1e-9);
        }
    }
}

TEST(Mpc, CoherentPowerScalesWithAmplitude)
{
    auto s = make({ray(0.3, 0.1, 0), ray(0.02, 2.0), ray(0.07, 4.0)});
    const double c = 7.5;
    auto scaled = s;
    for (auto &m : scaled.mpcs)
        m.amplitude *= std::pow(10.0, c / 20.0);
    for (auto mode : {CoherentMode::power_sum, CoherentMode::phasor_sum})
        EXPECT_NEAR(coherent_power_dbm(scaled, mode, 30).dbm - coherent_power_dbm(s, mode, 30).dbm, c, 1e-10);
}

TEST(Mpc, KFactorExamples)
{
    EXPECT_NEAR(*k_factor(make({ray(1.0, 0, 0), ray(std::sqrt(0.05)), ray(std::sqrt(0.05))})), 10.0, 1e-12);
    EXPECT_FALSE(k_factor(make({ray(1.0, 0, 0)})).has_value());
    EXPECT_NEAR(*k_factor(make({ray(1.0, 0, 0), ray(1.0)})), 1.0, 1e-15);
}

TEST(Mpc, KFactorScaleInvariant)
{
    auto s = make({ray(0.02, 0, 0), ray(0.013), ray(0.004)});
    auto t = s;
    for (auto &m : t.mpcs)
        m.amplitude *= 1e-4;
    EXPECT_NEAR(*k_factor(t) / *k_factor(s), 1.0, 1e-12);
}

TEST(Mpc, KFactorEdgeCases)
{
    EXPECT_THROW(k_factor(make({ray(1.0), ray(0.5)})), InputError);
    EXPECT_TRUE(std::isinf(*k_factor(make({ray(1.0, 0, 0), ray(0.0)}))));
}

TEST(Mpc, ValidateInvariants)
{
    EXPECT_NO_THROW(validate(make({ray(1.0, 0, 0), ray(0.5)})));
    EXPECT_THROW(validate(make({ray(1.0, 0, 0), ray(0.5, 0, 0)})), InputError);
    EXPECT_THROW(validate(make({ray(-1.0)})), InputError);
    EXPECT_THROW(validate(make({ray(1.0, 0, 1, -1e-9)})), InputError);
    EXPECT_THROW(validate(make({})), InputError);
    auto bad = ray(1.0);
    bad.aoa_el_deg = 91;
    EXPECT_THROW(validate(make({bad})), InputError);
    bad = ray(1.0);
    bad.aod_az_deg = 360.0;
    EXPECT_THROW(validate(make({bad})), InputError);
}

TEST(Mpc, NormalizeSortsStablyAndWraps)
{
    auto a = ray(0.1, -0.5, 1, 5e-9);
    a.aoa_az_deg = -10;
    auto b = ray(0.2, 7.0, 0, 1e-9);
    auto c = ray(0.3, 0.0, 1, 5e-9);
    auto s = make({a, b, c});
    normalize(s);
    EXPECT_EQ(s.mpcs[0].amplitude, 0.2);
    EXPECT_EQ(s.mpcs[1].amplitude, 0.1);
    EXPECT_EQ(s.mpcs[2].amplitude, 0.3);
    EXPECT_NEAR(s.mpcs[1].aoa_az_deg, 350.0, 1e-12);
    EXPECT_NEAR(s.mpcs[1].phase_rad, 2 * M_PI - 0.5, 1e-12);
    EXPECT_NEAR(s.mpcs[0].phase_rad, 7.0 - 2 * M_PI, 1e-12);
}

TEST(Mpc, DesignateStrongest)
{
    auto s = make({ray(0.1), ray(0.4), ray(0.2)});
    designate_strongest_as_los(s);
    EXPECT_EQ(*los_index(s), 1u);
    auto t = make({ray(0.1, 0, 0), ray(0.4)});
    designate_strongest_as_los(t);
    EXPECT_EQ(*los_index(t), 0u);
}
