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

#pragma once

#include <cmath>
#include <numbers>

namespace leochan
{

inline constexpr double speed_of_light = 299792458.0; // m/s

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

inline double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_linear_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double linear_power_to_db(double p) { return 10.0 * std::log10(p); }

/// Wraps an angle in degrees into [0, 360).
inline double wrap_360(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w >= 360.0 ? 0.0 : w;
}

/// Wraps an angle in degrees into [-180, 180).
inline double wrap_180(double deg)
{
    return wrap_360(deg + 180.0) - 180.0;
}

/// Wraps a phase in radians into [0, 2pi).
inline double wrap_phase(double rad)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(rad, two_pi);
    if (w < 0.0)
        w += two_pi;
    return w >= two_pi ? 0.0 : w;
}

} // namespace leochan
