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

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace leochan
{

struct DelaySpread
{
    double rms_ds_s;
    double mean_excess_delay_s;
};

/// Power-weighted mean and standard deviation of the MPC delays. The mean is reported as an
/// excess delay, relative to the first arrival.
inline DelaySpread rms_delay_spread(const Snapshot &snap)
{
    if (snap.mpcs.empty())
        throw InputError("rms_delay_spread: empty snapshot");
    // Relative to the first arrival: absolute delays (~1 ms) would swamp ns spreads.
    double t0 = snap.mpcs.front().delay_s;
    for (const auto &m : snap.mpcs)
        t0 = std::fmin(t0, m.delay_s);

    double p_sum = 0.0;
    double pt_sum = 0.0;
    for (const auto &m : snap.mpcs)
    {
        p_sum += m.power();
        pt_sum += m.power() * (m.delay_s - t0);
    }
    if (p_sum <= 0.0)
        throw NumericError("rms_delay_spread: total power is zero");
    const double mean = pt_sum / p_sum;
    double var = 0.0;
    for (const auto &m : snap.mpcs)
    {
        const double d = (m.delay_s - t0) - mean;
        var += m.power() * d * d;
    }
    return {std::sqrt(var / p_sum), mean};
}

/// Circular spread of azimuths in degrees. Infinity marks a vanishing mean resultant length
/// (spread unbounded); the value is otherwise (180/pi) sqrt(-2 ln l).
inline double azimuth_spread(std::span<const double> angles_deg)
{
    if (angles_deg.empty())
        throw InputError("azimuth_spread: no angles");
    double c = 0.0;
    double s = 0.0;
    for (double a : angles_deg)
    {
        c += std::cos(deg2rad(a));
        s += std::sin(deg2rad(a));
    }
    const double n = double(angles_deg.size());
    const double l = std::hypot(c, s) / n;
    // Resultant lengths within rounding of 0 or 1 are the degenerate cases.
    constexpr double tol = 1e-12;
    if (l <= tol)
        return std::numeric_limits<double>::infinity();
    if (l >= 1.0 - 4.0 * std::numeric_limits<double>::epsilon())
        return 0.0;
    return rad2deg(std::sqrt(-2.0 * std::log(l)));
}

/// Population standard deviation of elevation angles, degrees.
inline double elevation_spread(std::span<const double> angles_deg)
{
    if (angles_deg.empty())
        throw InputError("elevation_spread: no angles");
    const double n = double(angles_deg.size());
    double mean = 0.0;
    for (double a : angles_deg)
        mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : angles_deg)
        var += (a - mean) * (a - mean);
    return std::sqrt(var / n);
}

inline bool is_unbounded(double spread) { return std::isinf(spread); }

struct SpreadReport
{
    double rms_ds_s = 0.0;
    double mean_excess_delay_s = 0.0;
    double az_spread_sat_deg = 0.0;
    double el_spread_sat_deg = 0.0;
    double az_spread_gs_deg = 0.0;
    double el_spread_gs_deg = 0.0;
};

inline SpreadReport spreads(const Snapshot &snap)
{
    const auto ds = rms_delay_spread(snap);
    std::vector<double> aod_az, aod_el, aoa_az, aoa_el;
    for (const auto &m : snap.mpcs)
    {
        aod_az.push_back(m.aod_az_deg);
        aod_el.push_back(m.aod_el_deg);
        aoa_az.push_back(m.aoa_az_deg);
        aoa_el.push_back(m.aoa_el_deg);
    }
    return {ds.rms_ds_s,          ds.mean_excess_delay_s,    azimuth_spread(aod_az),
            elevation_spread(aod_el), azimuth_spread(aoa_az), elevation_spread(aoa_el)};
}

} // namespace leochan
