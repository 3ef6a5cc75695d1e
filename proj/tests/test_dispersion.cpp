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

#include <leochan/dispersion.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace leochan;

namespace
{

Snapshot delays(std::vector<double> powers, std::vector<double> delays_s)
{
    Snapshot s{10.0, ElevationAngle(20.0), 400.0, {}};
    for (std::size_t i = 0; i < powers.size(); ++i)
    {
        Mpc m;
        m.amplitude = std::sqrt(powers[i]);
        m.delay_s = delays_s[i];
        m.interactions = i == 0 ? 0 : 1;
        s.mpcs.push_back(m);
    }
    return s;
}

const double ln2_spread = 180.0 / M_PI * std::sqrt(std::log(2.0));

} // namespace

TEST(DelaySpread, Examples)
{
    auto eq = rms_delay_spread(delays({1, 1}, {0, 2e-9}));
    EXPECT_NEAR(eq.mean_excess_delay_s / 1e-9, 1.0, 1e-9);
    EXPECT_NEAR(eq.rms_ds_s / 1e-9, 1.0, 1e-9);

    auto two = rms_delay_spread(delays({1, 0.25}, {0, 5e-9}));
    EXPECT_NEAR(two.mean_excess_delay_s / 1e-9, 1.0, 1e-9);
    EXPECT_NEAR(two.rms_ds_s / 1e-9, 2.0, 1e-9);

    EXPECT_EQ(rms_delay_spread(delays({0.3}, {1.3e-3})).rms_ds_s, 0.0);
}

TEST(DelaySpread, Errors)
{
    EXPECT_THROW(rms_delay_spread(delays({0, 0}, {0, 1e-9})), NumericError);
    EXPECT_THROW(rms_delay_spread(delays({}, {})), InputError);
}

TEST(DelaySpread, ShiftAndScaleInvariance)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<double> p, t;
        for (int i = 0; i < 6; ++i)
        {
            p.push_back(u(rng));
            t.push_back(100e-9 * u(rng));
        }
        const double base = rms_delay_spread(delays(p, t)).rms_ds_s;
        auto shifted = t;
        for (auto &x : shifted)
            x += 1.334e-3;
        auto scaled = p;
        for (auto &x : scaled)
            x *= 3.7e-12;
        EXPECT_NEAR(rms_delay_spread(delays(p, shifted)).rms_ds_s, base, 1e-9 * base + 1e-18);
        EXPECT_NEAR(rms_delay_spread(delays(scaled, t)).rms_ds_s, base, 1e-9 * base);
    }
}

TEST(AzimuthSpread, Examples)
{
    const std::vector<double> same{37, 37, 37};
    EXPECT_EQ(azimuth_spread(same), 0.0);
    const std::vector<double> quarter{0, 90};
    EXPECT_NEAR(azimuth_spread(quarter), ln2_spread, 1e-9);
    EXPECT_NEAR(azimuth_spread(quarter), 47.70, 5e-3);
    const std::vector<double> cross{0, 90, 180, 270};
    EXPECT_TRUE(is_unbounded(azimuth_spread(cross)));
}

TEST(AzimuthSpread, RotationInvariant)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 360.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<double> a{u(rng), u(rng), u(rng) / 8, 10.0};
        const double base = azimuth_spread(a);
        for (double rot : {17.0, 181.5, 359.0, -40.0})
        {
            auto r = a;
            for (auto &x : r)
                x = std::fmod(x + rot + 720.0, 360.0);
            EXPECT_NEAR(azimuth_spread(r), base, 1e-9 * std::fmax(1.0, base));
        }
    }
}

TEST(AzimuthSpread, ContinuousAtSmallDispersion)
{
    const std::vector<double> a{123.0, 123.01};
    const double s = azimuth_spread(a);
    EXPECT_GE(s, 0.0);
    EXPECT_LT(s, 0.01);
    // Small-angle limit: half the separation.
    EXPECT_NEAR(s, 0.005, 1e-6);
    const std::vector<double> wrap{359.995, 0.005};
    EXPECT_NEAR(azimuth_spread(wrap), 0.005, 1e-6);
}

TEST(ElevationSpread, Examples)
{
    const std::vector<double> a{10, 20};
    EXPECT_NEAR(elevation_spread(a), 5.0, 1e-9);
    const std::vector<double> b{15};
    EXPECT_EQ(elevation_spread(b), 0.0);
    const std::vector<double> c{0, 0, 30};
    EXPECT_NEAR(elevation_spread(c), std::sqrt(200.0), 1e-9);
    EXPECT_NEAR(elevation_spread(c), 14.142, 5e-4);
}

TEST(Spreads, Report)
{
    Snapshot s = delays({1, 1}, {0, 2e-9});
    s.mpcs[0].aoa_az_deg = 0;
    s.mpcs[1].aoa_az_deg = 90;
    s.mpcs[0].aoa_el_deg = 10;
    s.mpcs[1].aoa_el_deg = 20;
    const auto r = spreads(s);
    EXPECT_NEAR(r.rms_ds_s, 1e-9, 1e-18);
    EXPECT_NEAR(r.az_spread_gs_deg, ln2_spread, 1e-9);
    EXPECT_NEAR(r.el_spread_gs_deg, 5.0, 1e-12);
    EXPECT_EQ(r.az_spread_sat_deg, 0.0);
    EXPECT_EQ(r.el_spread_sat_deg, 0.0);
}
