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
#include "units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace leochan
{

/// One multipath component. Amplitudes are linear path gains relative to the transmitted signal.
struct Mpc
{
    double amplitude = 0.0;
    double phase_rad = 0.0;
    double delay_s = 0.0;
    double aod_az_deg = 0.0; // departure, at the satellite
    double aod_el_deg = 0.0;
    double aoa_az_deg = 0.0; // arrival, at the ground station
    double aoa_el_deg = 0.0;
    int interactions = 1; // reflections/diffractions along the path; 0 marks the LOS ray

    bool is_los() const { return interactions == 0; }
    double power() const { return amplitude * amplitude; }
    std::complex<double> phasor() const { return std::polar(amplitude, phase_rad); }

    friend bool operator==(const Mpc &, const Mpc &) = default;
};

/// All MPCs observed at one satellite position on the pass.
struct Snapshot
{
    double altitude_km;
    ElevationAngle psi;
    double distance_km;
    std::vector<Mpc> mpcs;

    std::size_t size() const { return mpcs.size(); }

    friend bool operator==(const Snapshot &, const Snapshot &) = default;
};

/// Checks the MPC and snapshot invariants; throws InputError on the first violation.
inline void validate(const Snapshot &snap)
{
    if (snap.mpcs.empty())
        throw InputError("snapshot has no MPCs");
    int n_los = 0;
    for (const auto &m : snap.mpcs)
    {
        if (!(m.amplitude >= 0.0) || !std::isfinite(m.amplitude))
            throw InputError("MPC amplitude must be finite and non-negative");
        if (!(m.delay_s >= 0.0))
            throw InputError("MPC delay must be non-negative");
        if (!(m.aod_az_deg >= 0.0 && m.aod_az_deg < 360.0) || !(m.aoa_az_deg >= 0.0 && m.aoa_az_deg < 360.0))
            throw InputError("MPC azimuth outside [0, 360)");
        if (std::fabs(m.aod_el_deg) > 90.0 || std::fabs(m.aoa_el_deg) > 90.0)
            throw InputError("MPC elevation outside [-90, 90]");
        if (m.interactions < 0)
            throw InputError("negative interaction count");
        n_los += m.is_los();
    }
    if (n_los > 1)
        throw InputError("snapshot has more than one LOS MPC");
}

/// Stable sort by delay; wraps azimuths to [0, 360) and phases to [0, 2pi).
inline void normalize(Snapshot &snap)
{
    for (auto &m : snap.mpcs)
    {
        m.aod_az_deg = wrap_360(m.aod_az_deg);
        m.aoa_az_deg = wrap_360(m.aoa_az_deg);
        m.phase_rad = wrap_phase(m.phase_rad);
    }
    std::stable_sort(snap.mpcs.begin(), snap.mpcs.end(),
                     [](const Mpc &a, const Mpc &b) { return a.delay_s < b.delay_s; });
}

inline std::optional<std::size_t> los_index(const Snapshot &snap)
{
    for (std::size_t i = 0; i < snap.mpcs.size(); ++i)
        if (snap.mpcs[i].is_los())
            return i;
    return std::nullopt;
}

/// Marks the strongest MPC as LOS when no MPC carries the flag.
inline void designate_strongest_as_los(Snapshot &snap)
{
    if (snap.mpcs.empty() || los_index(snap))
        return;
    auto it = std::max_element(snap.mpcs.begin(), snap.mpcs.end(),
                               [](const Mpc &a, const Mpc &b) { return a.power() < b.power(); });
    it->interactions = 0;
}

enum class CoherentMode
{
    power_sum, // sum_i |alpha_i e^{j chi_i}|^2, the printed link-budget form
    phasor_sum // |sum_i alpha_i e^{j chi_i}|^2
};

struct CoherentPower
{
    double dbm;     // -inf when `cancelled`
    bool cancelled; // total received power is zero
};

/// Received power from the MPC set for a transmitter at `p_tx_dbm`.
inline CoherentPower coherent_power_dbm(const Snapshot &snap, CoherentMode mode, double p_tx_dbm)
{
    if (snap.mpcs.empty())
        throw InputError("coherent power of an empty snapshot");

    double total = 0.0;
    double abs_sum = 0.0;
    std::complex<double> phasor{0.0, 0.0};
    for (const auto &m : snap.mpcs)
    {
        total += m.power();
        abs_sum += m.amplitude;
        phasor += m.phasor();
    }

    double gain = total;
    if (mode == CoherentMode::phasor_sum)
    {
        // Residue of exact cancellation is rounding noise of order eps * sum|alpha|.
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
        gain = std::abs(phasor) <= noise ? 0.0 : std::norm(phasor);
    }
    if (gain <= 0.0)
        return {-std::numeric_limits<double>::infinity(), true};
    return {p_tx_dbm + linear_power_to_db(gain), false};
}

/// Rician K-factor: LOS power over total NLOS power. Empty optional when the LOS is the only path.
inline std::optional<double> k_factor(const Snapshot &snap)
{
    if (snap.mpcs.size() <= 1)
        return std::nullopt;
    const auto los = los_index(snap);
    if (!los)
        throw InputError("k_factor: snapshot has several MPCs but none is flagged LOS");
    double nlos = 0.0;
    for (std::size_t i = 0; i < snap.mpcs.size(); ++i)
        if (i != *los)
            nlos += snap.mpcs[i].power();
    const double p_los = snap.mpcs[*los].power();
    if (nlos == 0.0)
        return p_los > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
    return p_los / nlos;
}

} // namespace leochan
