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
#include "mpc.hpp"
#include "units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace leochan
{

enum class AntennaKind
{
    isotropic,
    single_element,
    phased_array
};

/// Antenna pattern with a steering state. Angles passed to gain_dbi are in the antenna frame,
/// (0, 0) being mechanical broadside; the mount orientation maps global ray angles into it.
///
/// Single element: Gaussian main lobe, peak - 12 (delta / hpbw)^2 per plane, mechanically
/// pointed at the steering angles. Phased array: uniform nx x ny rectangular array factor with
/// progressive-phase steering in direction-cosine space. Both are floored `floor_db` below peak.
struct AntennaModel
{
    AntennaKind kind = AntennaKind::isotropic;
    double peak_gain_dbi = 0.0;
    double hpbw_deg = 2.0;
    int nx = 1;
    int ny = 1;
    double spacing_wavelengths = 0.5;
    double steer_az_deg = 0.0;
    double steer_el_deg = 0.0;
    double mount_az_deg = 0.0;
    double mount_el_deg = 0.0;
    double floor_db = 30.0;

    void validate() const
    {
        if (nx < 1 || ny < 1)
            throw ConfigError("array element counts must be at least 1");
        if (!(hpbw_deg > 0.0))
            throw ConfigError("half-power beamwidth must be positive");
        if (!(spacing_wavelengths > 0.0))
            throw ConfigError("element spacing must be positive");
        if (!(floor_db >= 0.0))
            throw ConfigError("pattern floor must be non-negative");
    }

    /// Copy with new steering angles (antenna frame).
    AntennaModel steered(double az_deg, double el_deg) const
    {
        AntennaModel m = *this;
        m.steer_az_deg = az_deg;
        m.steer_el_deg = el_deg;
        return m;
    }

    /// Global direction expressed in the antenna frame.
    std::pair<double, double> to_local(double global_az_deg, double global_el_deg) const
    {
        return {wrap_180(global_az_deg - mount_az_deg), global_el_deg - mount_el_deg};
    }

    /// Copy steered towards a global direction.
    AntennaModel pointed_at(double global_az_deg, double global_el_deg) const
    {
        const auto [az, el] = to_local(global_az_deg, global_el_deg);
        return steered(az, el);
    }
};

namespace detail
{

// |sin(N pi d x) / sin(pi d x)|, the magnitude of an N-element uniform linear array factor.
inline double dirichlet(int n, double spacing, double x)
{
    const double den = std::sin(std::numbers::pi * spacing * x);
    const double num = std::sin(n * std::numbers::pi * spacing * x);
    if (std::fabs(den) < 1e-12)
    {
        // Main or grating lobe: limit of the ratio is +-N.
        return double(n);
    }
    return std::fabs(num / den);
}

} // namespace detail

/// Normalised array factor |AF| / (nx ny) towards (az, el) in the antenna frame.
inline double array_factor_normalized(const AntennaModel &m, double az_deg, double el_deg)
{
    const double u = std::cos(deg2rad(el_deg)) * std::sin(deg2rad(az_deg));
    const double v = std::sin(deg2rad(el_deg));
    const double u0 = std::cos(deg2rad(m.steer_el_deg)) * std::sin(deg2rad(m.steer_az_deg));
    const double v0 = std::sin(deg2rad(m.steer_el_deg));
    return detail::dirichlet(m.nx, m.spacing_wavelengths, u - u0) / m.nx *
           detail::dirichlet(m.ny, m.spacing_wavelengths, v - v0) / m.ny;
}

/// Gain in dBi towards (az, el) given in the antenna frame.
inline double gain_dbi(const AntennaModel &m, double az_deg, double el_deg)
{
    switch (m.kind)
    {
    case AntennaKind::isotropic:
        return 0.0;
    case AntennaKind::single_element: {
        const double d_az = wrap_180(az_deg - m.steer_az_deg) / m.hpbw_deg;
        const double d_el = (el_deg - m.steer_el_deg) / m.hpbw_deg;
        const double loss = 12.0 * (d_az * d_az + d_el * d_el);
        return m.peak_gain_dbi - std::min(loss, m.floor_db);
    }
    case AntennaKind::phased_array: {
        const double af = array_factor_normalized(m, az_deg, el_deg);
        const double rel = af > 0.0 ? 20.0 * std::log10(af) : -m.floor_db;
        return m.peak_gain_dbi + std::max(rel, -m.floor_db);
    }
    }
    return 0.0;
}

/// Gain lost when the beam is off its boresight by (d_az, d_el) degrees.
inline double misalignment_loss_db(const AntennaModel &m, double d_az_deg, double d_el_deg)
{
    return gain_dbi(m, m.steer_az_deg, m.steer_el_deg) -
           gain_dbi(m, m.steer_az_deg + d_az_deg, m.steer_el_deg + d_el_deg);
}

/// Rescales every ray from isotropic to the given patterns, using departure angles at the
/// satellite and arrival angles at the ground station. Angles are unchanged.
inline Snapshot spatial_filter(const Snapshot &snap, const AntennaModel &sat, const AntennaModel &gs)
{
    Snapshot out = snap;
    for (auto &ray : out.mpcs)
    {
        const auto [s_az, s_el] = sat.to_local(ray.aod_az_deg, ray.aod_el_deg);
        const auto [g_az, g_el] = gs.to_local(ray.aoa_az_deg, ray.aoa_el_deg);
        ray.amplitude *= db_to_linear_amplitude(gain_dbi(sat, s_az, s_el) + gain_dbi(gs, g_az, g_el));
    }
    return out;
}

} // namespace leochan
