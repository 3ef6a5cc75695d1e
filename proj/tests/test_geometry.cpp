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

#include <leochan/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace leochan;

TEST(Geometry, ElevationAngleRange)
{
    EXPECT_THROW(ElevationAngle(0.0), DomainError);
    EXPECT_THROW(ElevationAngle(-3.0), DomainError);
    EXPECT_THROW(ElevationAngle(90.0001), DomainError);
    EXPECT_THROW(ElevationAngle(std::nan("")), DomainError);
    EXPECT_DOUBLE_EQ(ElevationAngle(90.0).degrees(), 90.0);
    EXPECT_NEAR(ElevationAngle(30.0).radians(), M_PI / 6, 1e-15);
}

TEST(Geometry, AltitudeToElevationExamples)
{
    EXPECT_DOUBLE_EQ(altitude_to_elevation(400, 400).degrees(), 90.0);
    EXPECT_NEAR(altitude_to_elevation(100, 400).degrees(), 14.4775, 5e-5);
    EXPECT_NEAR(altitude_to_elevation(5, 400).degrees(), 0.7162, 5e-5);
}

TEST(Geometry, AltitudeToElevationRejectsOutOfRange)
{
    EXPECT_THROW(altitude_to_elevation(0.0, 400), DomainError);
    EXPECT_THROW(altitude_to_elevation(401, 400), DomainError);
    EXPECT_THROW(altitude_to_elevation(10, 0), DomainError);
}

TEST(Geometry, AltitudeToElevationMonotoneAndRoundTrips)
{
    for (double d : {400.0, 500.0})
    {
        double prev = 0.0;
        for (double h = 0.005; h <= d; h *= 1.37)
        {
            const auto psi = altitude_to_elevation(h, d);
            EXPECT_GT(psi.degrees(), prev);
            prev = psi.degrees();
            EXPECT_NEAR(d * std::sin(psi.radians()) / h, 1.0, 1e-9);
        }
    }
}

TEST(Geometry, RainSlantLengthExamples)
{
    // sqrt(2 dh Re / (sin^2 + 2 dh / Re)) + dh / sin, evaluated independently
    auto printed = [](double psi_deg, double dh) {
        const double s = std::sin(psi_deg * M_PI / 180.0);
        return std::sqrt(2 * dh * 6371.0 / (s * s + 2 * dh / 6371.0)) + dh / s;
    };
    EXPECT_NEAR(rain_slant_length(ElevationAngle(90), 5, 0), 257.21, 5e-3);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(90), 5, 0), printed(90, 5), 1e-9);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(90), 5, 0, 6371, SlantMode::itu_piecewise), 5.0, 1e-12);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(30), 5, 0.023), printed(30, 4.977), 1e-9);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(30), 5, 0.023), 512.0419087750438, 1e-8);
}

TEST(Geometry, PiecewiseLowElevationUsesCurvedEarthForm)
{
    const double dh = 4.977;
    const double s = std::sin(2.0 * M_PI / 180.0);
    const double expect = 2 * dh / (std::sqrt(s * s + 2 * dh / 6371.0) + s);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(2), 5, 0.023, 6371, SlantMode::itu_piecewise), expect, 1e-12);
    EXPECT_NEAR(rain_slant_length(ElevationAngle(5), 5, 0.023, 6371, SlantMode::itu_piecewise),
                dh / std::sin(5 * M_PI / 180), 1e-12);
}

TEST(Geometry, PrintedSlantDominatesPiecewise)
{
    for (double psi = 0.5; psi <= 90.0; psi += 0.25)
    {
        const ElevationAngle a(psi);
        EXPECT_GE(rain_slant_length(a, 5, 0.023), rain_slant_length(a, 5, 0.023, 6371, SlantMode::itu_piecewise));
    }
}

TEST(Geometry, ElevationFloor)
{
    EXPECT_THROW(rain_slant_length(ElevationAngle(0.4), 5, 0.023), DomainError);
    EXPECT_NO_THROW(rain_slant_length(ElevationAngle(0.4), 5, 0.023, 6371, SlantMode::as_printed, 0.1));
    EXPECT_THROW(check_elevation_floor(ElevationAngle(1.0), 2.0), DomainError);
    EXPECT_THROW(rain_slant_length(ElevationAngle(30), 0.01, 0.023), DomainError);
}

TEST(Geometry, PassPoints)
{
    PassGeometry g;
    g.altitudes_km = {5, 50, 400};
    auto up = pass_points(g);
    ASSERT_EQ(up.size(), 3u);
    EXPECT_EQ(up[0].altitude_km, 5);
    EXPECT_EQ(up[0].azimuth_deg, 0.0);

    g.direction = PassDirection::descending;
    auto down = pass_points(g);
    ASSERT_EQ(down.size(), 3u);
    EXPECT_EQ(down[0].altitude_km, 400);
    EXPECT_EQ(down[2].azimuth_deg, 180.0);

    g.direction = PassDirection::full_pass;
    auto full = pass_points(g);
    ASSERT_EQ(full.size(), 5u);
    EXPECT_EQ(full[2].altitude_km, 400);
    EXPECT_EQ(full[4].altitude_km, 5);
}

TEST(Geometry, PassValidation)
{
    PassGeometry g;
    g.altitudes_km = {10, 450};
    EXPECT_THROW(g.validate(), ConfigError);
    g.altitudes_km = {0.0};
    EXPECT_THROW(g.validate(), ConfigError);
    g.altitudes_km = {};
    g.arc_radius_km = -1;
    EXPECT_THROW(g.validate(), ConfigError);
}
