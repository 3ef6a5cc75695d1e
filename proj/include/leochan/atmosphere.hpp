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

#include "error.hpp"
#include "geometry.hpp"

#include <cmath>

namespace leochan
{

/// Weather and fixed-loss constants. Defaults are the X-band Northern-Europe operating point
/// (0.01 % exceedance rain, dense clouds, moderate snow).
struct AtmosphereParams
{
    double k_rn = 0.0363;          // rain coefficient
    double epsilon = 1.095;        // rain exponent
    double rain_rate_mmh = 32.0;   // R_0.01
    double beta_db = 3.0;          // polarization constant (circular)
    double h_rain_km = 5.0;        // rain height
    double k_cl = 0.072;           // cloud constant
    double cloud_thickness_km = 1.5;
    double lwc_gm3 = 0.35;         // liquid water density
    double k_sn = 0.004;           // snow constant
    double snow_rate_mmh = 4.0;
    double h_snow_km = 5.0;
    double l_fixed_db = 1.5;       // gaseous absorption and scintillation
    double fc_ghz = 10.0;
    double r_earth_km = earth_radius_km;
    SlantMode slant_mode = SlantMode::as_printed;
    double elevation_floor_deg = default_elevation_floor_deg;

    void validate() const
    {
        const double values[] = {k_rn,    epsilon,  rain_rate_mmh, beta_db,    h_rain_km, k_cl,
                                 cloud_thickness_km, lwc_gm3, k_sn, snow_rate_mmh, h_snow_km, l_fixed_db};
        for (double v : values)
            if (!(v >= 0.0))
                throw ConfigError("atmosphere parameters must be non-negative");
        if (!(fc_ghz > 0.0))
            throw ConfigError("carrier frequency must be positive");
        if (!(r_earth_km > 0.0))
            throw ConfigError("earth radius must be positive");
    }
};

/// Specific rain attenuation k R^eps, dB/km.
inline double rain_specific_attenuation(const AtmosphereParams &p)
{
    return p.k_rn * std::pow(p.rain_rate_mmh, p.epsilon);
}

/// Horizontal reduction factor for a horizontal projection `l_g_km` (f_c in GHz).
inline double horizontal_reduction_factor(double l_g_km, double gamma_r, double fc_ghz)
{
    return 1.0 / (1.0 + 0.78 * std::sqrt(l_g_km * gamma_r / fc_ghz) - 0.38 * (1.0 - std::exp(-2.0 * l_g_km)));
}

struct RainBreakdown
{
    double gamma_r_db_per_km;
    double slant_km;      // L_s
    double horizontal_km; // L_G
    double reduction;     // r_0.01
    double effective_km;  // L_E
    double total_db;
};

/// Rain attenuation with all intermediate quantities. L_E = L_s r_0.01 (the cos(Psi) of the
/// horizontal projection cancels), which stays finite at zenith.
inline RainBreakdown rain_breakdown(ElevationAngle psi, const AtmosphereParams &p, const PassGeometry &geo)
{
    RainBreakdown b{};
    b.gamma_r_db_per_km = rain_specific_attenuation(p);
    b.slant_km = rain_slant_length(psi, p.h_rain_km, geo.gs_height_km, p.r_earth_km, p.slant_mode,
                                   p.elevation_floor_deg);
    b.horizontal_km = b.slant_km * std::sin(deg2rad(90.0 - psi.degrees())); // exactly 0 at zenith
    b.reduction = horizontal_reduction_factor(b.horizontal_km, b.gamma_r_db_per_km, p.fc_ghz);
    b.effective_km = b.slant_km * b.reduction;
    b.total_db = b.gamma_r_db_per_km * b.effective_km + p.beta_db;
    return b;
}

inline double rain_attenuation_db(ElevationAngle psi, const AtmosphereParams &p, const PassGeometry &geo)
{
    return rain_breakdown(psi, p, geo).total_db;
}

inline double cloud_attenuation_db(ElevationAngle psi, const AtmosphereParams &p)
{
    check_elevation_floor(psi, p.elevation_floor_deg);
    return p.k_cl * p.cloud_thickness_km * p.lwc_gm3 / std::sin(psi.radians());
}

inline double snow_attenuation_db(ElevationAngle psi, const AtmosphereParams &p)
{
    check_elevation_floor(psi, p.elevation_floor_deg);
    return p.k_sn * p.snow_rate_mmh * p.h_snow_km / std::sin(psi.radians());
}

struct Weather
{
    bool rain = false;
    bool clouds = false;
    bool snow = false;

    friend bool operator==(const Weather &, const Weather &) = default;
};

struct AtmosphereBreakdown
{
    double rain_db = 0.0;
    double cloud_db = 0.0;
    double snow_db = 0.0;
    double fixed_db = 0.0;
    double total_db = 0.0;
};

inline AtmosphereBreakdown atmosphere_breakdown(ElevationAngle psi, const AtmosphereParams &p, Weather weather,
                                                const PassGeometry &geo)
{
    // Clear sky has no 1/sin term, so the floor only applies once a weather term is on.
    if (weather.rain || weather.clouds || weather.snow)
        check_elevation_floor(psi, p.elevation_floor_deg);
    AtmosphereBreakdown b;
    if (weather.rain)
        b.rain_db = rain_attenuation_db(psi, p, geo);
    if (weather.clouds)
        b.cloud_db = cloud_attenuation_db(psi, p);
    if (weather.snow)
        b.snow_db = snow_attenuation_db(psi, p);
    b.fixed_db = p.l_fixed_db;
    b.total_db = b.rain_db + b.cloud_db + b.snow_db + b.fixed_db;
    return b;
}

/// Sum of the enabled weather terms plus the fixed atmospheric loss, dB.
inline double total_atmospheric_db(ElevationAngle psi, const AtmosphereParams &p, Weather weather,
                                   const PassGeometry &geo)
{
    return atmosphere_breakdown(psi, p, weather, geo).total_db;
}

} // namespace leochan
