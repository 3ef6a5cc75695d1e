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
#include "units.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace leochan
{

/// Satellite elevation angle seen from the ground station, in (0, 90] degrees.
class ElevationAngle
{
  public:
    explicit ElevationAngle(double deg) : deg_(deg)
    {
        if (!(deg > 0.0 && deg <= 90.0))
            throw DomainError("elevation angle must lie in (0, 90] degrees, got " + std::to_string(deg));
    }

    double degrees() const { return deg_; }
    double radians() const { return deg2rad(deg_); }

    friend bool operator==(ElevationAngle, ElevationAngle) = default;
    friend auto operator<=>(ElevationAngle, ElevationAngle) = default;

  private:
    double deg_;
};

enum class PassDirection
{
    ascending,
    descending,
    full_pass
};

/// Idealized overhead pass: the satellite moves on a circular arc of radius `arc_radius_km`
/// centred on the ground station, so the slant range is constant and Psi = asin(h / d).
struct PassGeometry
{
    double arc_radius_km = 400.0;
    double gs_height_km = 0.023;
    std::vector<double> altitudes_km; // heights above the GS, ordered
    PassDirection direction = PassDirection::ascending;

    void validate() const
    {
        if (!(arc_radius_km > 0.0))
            throw ConfigError("arc radius must be positive");
        if (gs_height_km < 0.0)
            throw ConfigError("ground station height must be non-negative");
        for (double h : altitudes_km)
            if (!(h > 0.0 && h <= arc_radius_km))
                throw ConfigError("altitude " + std::to_string(h) + " km outside (0, arc radius]");
    }
};

/// Elevation of a satellite at height `h_km` above the GS on an arc of radius `d_km`.
inline ElevationAngle altitude_to_elevation(double h_km, double d_km)
{
    if (!(d_km > 0.0) || !(h_km > 0.0) || h_km > d_km)
        throw DomainError("altitude_to_elevation requires 0 < h <= d (h=" + std::to_string(h_km) +
                          ", d=" + std::to_string(d_km) + ")");
    return ElevationAngle(rad2deg(std::asin(h_km / d_km)));
}

enum class SlantMode
{
    as_printed,   // square-root term plus vertical projection, summed
    itu_piecewise // ITU-R P.618: (hR - hGS)/sin Psi above 5 deg, curved-earth form below
};

inline constexpr double default_elevation_floor_deg = 0.5;
inline constexpr double earth_radius_km = 6371.0;

/// Throws DomainError when psi is below the floor guarding the 1/sin(Psi) singularity.
inline void check_elevation_floor(ElevationAngle psi, double floor_deg = default_elevation_floor_deg)
{
    if (psi.degrees() < floor_deg)
        throw DomainError("elevation " + std::to_string(psi.degrees()) + " deg is below the floor of " +
                          std::to_string(floor_deg) + " deg");
}

/// Slant path length through the rain layer, km.
inline double rain_slant_length(ElevationAngle psi, double h_rain_km, double h_gs_km, double r_earth_km = earth_radius_km,
                                SlantMode mode = SlantMode::as_printed,
                                double floor_deg = default_elevation_floor_deg)
{
    check_elevation_floor(psi, floor_deg);
    if (!(h_rain_km > h_gs_km))
        throw DomainError("rain height must exceed ground station height");
    if (!(r_earth_km > 0.0))
        throw DomainError("earth radius must be positive");

    const double dh = h_rain_km - h_gs_km;
    const double s = std::sin(psi.radians());
    const double curvature = 2.0 * dh / r_earth_km;

    switch (mode)
    {
    case SlantMode::as_printed:
        return std::sqrt(2.0 * dh * r_earth_km / (s * s + curvature)) + dh / s;
    case SlantMode::itu_piecewise:
        if (psi.degrees() >= 5.0)
            return dh / s;
        return 2.0 * dh / (std::sqrt(s * s + curvature) + s);
    }
    return 0.0;
}

struct PassPoint
{
    double altitude_km;
    double azimuth_deg; // azimuth of the satellite seen from the GS
};

/// Expands a pass into sample points. Ascending points approach from azimuth 0, descending
/// points recede towards azimuth 180; a full pass is the ascending list followed by its
/// mirror image without repeating the apex.
inline std::vector<PassPoint> pass_points(const PassGeometry &geo)
{
    std::vector<PassPoint> out;
    switch (geo.direction)
    {
    case PassDirection::ascending:
        for (double h : geo.altitudes_km)
            out.push_back({h, 0.0});
        break;
    case PassDirection::descending:
        for (auto it = geo.altitudes_km.rbegin(); it != geo.altitudes_km.rend(); ++it)
            out.push_back({*it, 180.0});
        break;
    case PassDirection::full_pass:
        for (double h : geo.altitudes_km)
            out.push_back({h, 0.0});
        for (auto it = geo.altitudes_km.rbegin(); it != geo.altitudes_km.rend(); ++it)
        {
            if (it == geo.altitudes_km.rbegin())
                continue;
            out.push_back({*it, 180.0});
        }
        break;
    }
    return out;
}

} // namespace leochan
