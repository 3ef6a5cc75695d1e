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

#include "../error.hpp"
#include "../fading.hpp"
#include "../geometry.hpp"
#include "../link_budget.hpp"
#include "../mpc.hpp"
#include "../units.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

// Synthetic MPC scenarios. This is non-physical scaffolding standing in for a ray tracer: it
// reproduces qualitative trends (LOS shadowing near the horizon, more and stronger building
// reflections at low elevation, fewer detectable rays on longer passes), not measured values.

namespace leochan::io
{

struct SynthParams
{
    double p_tx_dbm = 30.0;
    double fc_ghz = 10.0;
    double psi2_deg = 0.0;                 // LOS shadowing below this; <= 0 selects asin(100/d)
    double detection_threshold_dbm = -160; // weaker NLOS rays are not reported
    int max_building_rays = 8;             // candidates, in two scatterer groups
    double los_shadow_max_db = 30.0;       // mean LOS shadowing at the horizon
    double los_shadow_sigma_db = 3.0;
    double ground_permittivity = 3.5;
    double ground_blockage_db = 12.0;      // roof edge between the GS and the ground reflection
    double ground_min_elevation_deg = 3.0; // ground reflection blocked below this
    double decay_db_per_ns = 0.05;         // building-ray loss per ns of excess delay

    void validate() const
    {
        if (max_building_rays < 0 || max_building_rays > 8)
            throw ConfigError("synth: max_building_rays must be in [0, 8]");
        if (!(fc_ghz > 0.0))
            throw ConfigError("synth: carrier frequency must be positive");
        if (!(ground_permittivity >= 1.0))
            throw ConfigError("synth: ground permittivity must be >= 1");
        if (!(decay_db_per_ns >= 0.0))
            throw ConfigError("synth: decay_db_per_ns must be non-negative");
    }
};

/// Fresnel reflection magnitude of a smooth dielectric half-space at grazing angle psi,
/// averaged over the two linear polarisations (circular polarisation).
inline double ground_reflection_magnitude(double psi_rad, double eps_r)
{
    const double s = std::sin(psi_rad);
    const double c2 = std::cos(psi_rad) * std::cos(psi_rad);
    const double root = std::sqrt(eps_r - c2);
    const double gh = (s - root) / (s + root);
    const double gv = (eps_r * s - root) / (eps_r * s + root);
    return 0.5 * (std::fabs(gh) + std::fabs(gv));
}

namespace detail
{

inline std::mt19937_64 snapshot_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                      std::uint32_t(index >> 32), 0x6c656fu};
    return std::mt19937_64(seq);
}

} // namespace detail

/// One snapshot per pass point. Every snapshot draws the same sequence of random numbers
/// whatever rays survive, so passes with matching elevation grids see matching scatterers.
inline std::vector<Snapshot> synth_scenario(const PassGeometry &geo, const SynthParams &sp, std::uint64_t seed)
{
    geo.validate();
    sp.validate();
    const double d = geo.arc_radius_km;
    const double psi2 = sp.psi2_deg > 0.0 ? sp.psi2_deg : default_psi2_deg(d);
    const double fs_amp = db_to_linear_amplitude(-fspl_db(d, sp.fc_ghz));
    const double los_delay = d * 1e3 / speed_of_light;
    const double gs_h_m = geo.gs_height_km * 1e3;
    const double threshold_amp = db_to_linear_amplitude(sp.detection_threshold_dbm - sp.p_tx_dbm);

    std::vector<Snapshot> out;
    const auto points = pass_points(geo);
    for (std::size_t j = 0; j < points.size(); ++j)
    {
        auto rng = detail::snapshot_rng(seed, j);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);

        const double h = points[j].altitude_km;
        const double az = points[j].azimuth_deg;
        const ElevationAngle psi = altitude_to_elevation(h, d);
        const double psi_deg = psi.degrees();
        const double psi_rad = psi.radians();
        const double back_az = wrap_360(az + 180.0);

        Snapshot snap{h, psi, d, {}};

        // LOS, shadowed by terrain and foliage below psi2.
        const double depth = psi_deg < psi2 ? 1.0 - psi_deg / psi2 : 0.0;
        const double shadow_db = std::fmax(0.0, depth * (sp.los_shadow_max_db + sp.los_shadow_sigma_db * gauss(rng)));
        Mpc los;
        los.amplitude = fs_amp * db_to_linear_amplitude(-shadow_db);
        los.phase_rad = 2.0 * std::numbers::pi * unit(rng);
        los.delay_s = los_delay;
        los.aod_az_deg = back_az;
        los.aod_el_deg = -psi_deg;
        los.aoa_az_deg = wrap_360(az);
        los.aoa_el_deg = psi_deg;
        los.interactions = 0;
        snap.mpcs.push_back(los);

        // Specular ground reflection below the roof-mounted GS.
        {
            const double gamma = ground_reflection_magnitude(psi_rad, sp.ground_permittivity);
            const double excess_db = -20.0 * std::log10(gamma) + sp.ground_blockage_db * (0.5 + std::sin(psi_rad)) +
                                     3.0 * unit(rng);
            const double phase = 2.0 * std::numbers::pi * unit(rng);
            Mpc g;
            g.amplitude = fs_amp * db_to_linear_amplitude(-excess_db);
            g.phase_rad = phase;
            g.delay_s = los_delay + 2.0 * gs_h_m * std::sin(psi_rad) / speed_of_light;
            g.aod_az_deg = back_az;
            g.aod_el_deg = std::max(-90.0, -psi_deg - rad2deg(2.0 * gs_h_m * std::cos(psi_rad) / (d * 1e3)));
            g.aoa_az_deg = wrap_360(az);
            g.aoa_el_deg = -psi_deg;
            g.interactions = 1;
            if (psi_deg >= sp.ground_min_elevation_deg && g.amplitude >= threshold_amp)
                snap.mpcs.push_back(g);
        }

        // Building reflections: two scatterer groups of four candidates each. Group centres
        // share delay and arrival direction; members jitter around them.
        constexpr int group_size = 4;
        struct Group
        {
            double delay_ns, az_off_deg, el_deg, base_db, dist_m;
        };
        Group groups[2];
        for (int gi = 0; gi < 2; ++gi)
        {
            const double side = unit(rng) < 0.5 ? -1.0 : 1.0;
            groups[gi].delay_ns = 30.0 + 400.0 * unit(rng);
            groups[gi].az_off_deg = side * (30.0 + 120.0 * unit(rng));
            groups[gi].el_deg = 4.0 * unit(rng);
            groups[gi].base_db = 8.0 + 40.0 * std::sin(psi_rad) + 6.0 * gi + 6.0 * unit(rng);
            groups[gi].dist_m = 0.5 * speed_of_light * groups[gi].delay_ns * 1e-9;
        }
        for (int k = 0; k < 2 * group_size; ++k)
        {
            const Group &grp = groups[k / group_size];
            const double jitter_delay_ns = 8.0 * (unit(rng) - 0.5);
            const double jitter_az = 6.0 * (unit(rng) - 0.5);
            const double jitter_el = 0.6 * (unit(rng) - 0.5);
            const double extra_db = 4.0 * unit(rng);
            const double phase = 2.0 * std::numbers::pi * unit(rng);
            if (k >= sp.max_building_rays)
                continue;

            const double az_off = grp.az_off_deg + jitter_az;
            Mpc b;
            const double excess_ns = grp.delay_ns + jitter_delay_ns;
            b.amplitude = fs_amp * db_to_linear_amplitude(-(grp.base_db + extra_db + sp.decay_db_per_ns * excess_ns));
            b.phase_rad = phase;
            b.delay_s = los_delay + excess_ns * 1e-9;
            // At the satellite the scatterer is displaced by ~dist/d radians from the GS.
            const double spread_deg = rad2deg(grp.dist_m / (d * 1e3));
            b.aod_az_deg = wrap_360(back_az + spread_deg * std::sin(deg2rad(az_off)));
            b.aod_el_deg = std::clamp(-psi_deg + spread_deg * std::cos(deg2rad(az_off)) * std::sin(psi_rad), -90.0, 90.0);
            b.aoa_az_deg = wrap_360(az + az_off);
            b.aoa_el_deg = grp.el_deg + jitter_el;
            b.interactions = 1 + (k % 2);
            if (b.amplitude >= threshold_amp)
                snap.mpcs.push_back(b);
        }

        normalize(snap);
        validate(snap);
        out.push_back(std::move(snap));
    }
    return out;
}

} // namespace leochan::io
