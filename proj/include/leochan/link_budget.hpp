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

#include "antenna.hpp"
#include "atmosphere.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "mpc.hpp"
#include "units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace leochan
{

/// Free-space path loss 20 log10(4 pi d / lambda), dB.
inline double fspl_db(double d_km, double fc_ghz)
{
    if (!(d_km > 0.0))
        throw DomainError("fspl_db: distance must be positive");
    if (!(fc_ghz > 0.0))
        throw DomainError("fspl_db: frequency must be positive");
    const double lambda_m = speed_of_light / (fc_ghz * 1e9);
    return 20.0 * std::log10(4.0 * std::numbers::pi * d_km * 1e3 / lambda_m);
}

enum class MisalignmentMode
{
    aggregate, // beam misalignment subtracted once from the aggregate budget
    per_ray    // GS beam mispointed before spatial filtering; aggregate term is zero
};

struct LinkBudgetConfig
{
    double p_tx_dbm = 30.0;
    double l_hd_db = 1.5;
    AtmosphereParams atmosphere;
    Weather weather;
    AntennaModel sat_antenna;
    AntennaModel gs_antenna;
    bool track_los = true; // steer both antennas at the LOS (or strongest) ray
    double misalign_az_deg = 0.0;
    double misalign_el_deg = 0.0;
    MisalignmentMode misalignment_mode = MisalignmentMode::aggregate;
    CoherentMode coherent_mode = CoherentMode::power_sum;
};

struct LinkBudgetRow
{
    double psi_deg;
    double altitude_km;
    double l_total_db;
    double p_rx_dbm;
    double p_coh_dbm;
    double l_hd_db;
    double l_am_db;
    double l_atm_db;
    double fspl_db;
};

/// Total link attenuation for one snapshot: spatial filtering, coherent power, then hardware,
/// misalignment and atmospheric losses.
inline LinkBudgetRow evaluate(const Snapshot &snap, const LinkBudgetConfig &cfg, const PassGeometry &geo)
{
    if (snap.mpcs.empty())
        throw InputError("evaluate: empty snapshot");
    cfg.sat_antenna.validate();
    cfg.gs_antenna.validate();

    AntennaModel sat = cfg.sat_antenna;
    AntennaModel gs = cfg.gs_antenna;
    if (cfg.track_los)
    {
        auto idx = los_index(snap);
        if (!idx)
        {
            const auto it = std::max_element(snap.mpcs.begin(), snap.mpcs.end(),
                                             [](const Mpc &a, const Mpc &b) { return a.power() < b.power(); });
            idx = std::size_t(it - snap.mpcs.begin());
        }
        const Mpc &ref = snap.mpcs[*idx];
        sat = sat.pointed_at(ref.aod_az_deg, ref.aod_el_deg);
        gs = gs.pointed_at(ref.aoa_az_deg, ref.aoa_el_deg);
    }

    double l_am = 0.0;
    if (cfg.misalignment_mode == MisalignmentMode::aggregate)
        l_am = misalignment_loss_db(gs, cfg.misalign_az_deg, cfg.misalign_el_deg);
    else
        gs = gs.steered(gs.steer_az_deg + cfg.misalign_az_deg, gs.steer_el_deg + cfg.misalign_el_deg);

    const auto coh = coherent_power_dbm(spatial_filter(snap, sat, gs), cfg.coherent_mode, cfg.p_tx_dbm);
    if (coh.cancelled)
        throw NumericError("evaluate: received MPC power cancels to zero");

    LinkBudgetRow row{};
    row.psi_deg = snap.psi.degrees();
    row.altitude_km = snap.altitude_km;
    row.p_coh_dbm = coh.dbm;
    row.l_hd_db = cfg.l_hd_db;
    row.l_am_db = l_am;
    row.l_atm_db = total_atmospheric_db(snap.psi, cfg.atmosphere, cfg.weather, geo);
    row.p_rx_dbm = row.p_coh_dbm - row.l_hd_db - row.l_am_db - row.l_atm_db;
    row.l_total_db = cfg.p_tx_dbm - row.p_rx_dbm;
    row.fspl_db = fspl_db(snap.distance_km, cfg.atmosphere.fc_ghz);
    return row;
}

/// Evaluates every snapshot of a pass; rows come back ordered by altitude (stable for the
/// repeated altitudes of a full pass).
inline std::vector<LinkBudgetRow> sweep_pass(const PassGeometry &pass, const std::vector<Snapshot> &snapshots,
                                             const LinkBudgetConfig &cfg)
{
    pass.validate();
    if (!pass.altitudes_km.empty())
    {
        const auto points = pass_points(pass);
        if (points.size() != snapshots.size())
            throw ConfigError("sweep_pass: expected one snapshot per pass altitude");
    }
    std::vector<LinkBudgetRow> rows;
    rows.reserve(snapshots.size());
    for (const auto &s : snapshots)
        rows.push_back(evaluate(s, cfg, pass));
    std::stable_sort(rows.begin(), rows.end(),
                     [](const LinkBudgetRow &a, const LinkBudgetRow &b) { return a.altitude_km < b.altitude_km; });
    return rows;
}

} // namespace leochan
