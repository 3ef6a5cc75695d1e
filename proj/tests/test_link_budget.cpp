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

#include <leochan/link_budget.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace leochan;

namespace
{

Snapshot los_only(double h_km, double d_km = 400.0, double amplitude = -1.0)
{
    const auto psi = altitude_to_elevation(h_km, d_km);
    Mpc m;
    m.interactions = 0;
    m.amplitude = amplitude >= 0 ? amplitude : std::pow(10.0, -fspl_db(d_km, 10.0) / 20.0);
    m.delay_s = d_km * 1e3 / speed_of_light;
    m.aoa_el_deg = psi.degrees();
    m.aod_el_deg = -psi.degrees();
    return Snapshot{h_km, psi, d_km, {m}};
}

AntennaModel single_element()
{
    AntennaModel m;
    m.kind = AntennaKind::single_element;
    m.peak_gain_dbi = 0.0;
    m.hpbw_deg = 2.0;
    return m;
}

void expect_identity(const LinkBudgetRow &r, const LinkBudgetConfig &cfg)
{
    EXPECT_NEAR(cfg.p_tx_dbm - r.p_rx_dbm, r.l_total_db, 1e-9);
    EXPECT_NEAR(r.p_coh_dbm - r.l_hd_db - r.l_am_db - r.l_atm_db, r.p_rx_dbm, 1e-9);
}

} // namespace

TEST(Fspl, Goldens)
{
    EXPECT_NEAR(fspl_db(400, 10), 164.49, 0.01);
    EXPECT_NEAR(fspl_db(500, 10), 166.43, 0.01);
    EXPECT_NEAR(fspl_db(800, 10) - fspl_db(400, 10), 20 * std::log10(2.0), 1e-12);
    EXPECT_NEAR(fspl_db(800, 10) - fspl_db(400, 10), 6.0206, 1e-4);
    EXPECT_THROW(fspl_db(0, 10), DomainError);
    EXPECT_THROW(fspl_db(400, 0), DomainError);
}

TEST(LinkBudget, SingleLosClearSky)
{
    const LinkBudgetConfig cfg;
    const auto r = evaluate(los_only(100), cfg, {});
    EXPECT_NEAR(r.l_total_db, fspl_db(400, 10) + 3.0, 1e-9);
    EXPECT_NEAR(r.l_total_db, 167.49, 0.01);
    EXPECT_NEAR(r.fspl_db, fspl_db(400, 10), 1e-12);
    EXPECT_EQ(r.l_am_db, 0.0);
    EXPECT_DOUBLE_EQ(r.l_atm_db, 1.5);
    expect_identity(r, cfg);
}

TEST(LinkBudget, MisalignmentAddsLobeLoss)
{
    LinkBudgetConfig cfg;
    cfg.gs_antenna = single_element();
    const auto snap = los_only(100);
    const auto base = evaluate(snap, cfg, {});
    cfg.misalign_az_deg = 1.0;
    const auto off = evaluate(snap, cfg, {});
    EXPECT_NEAR(off.l_total_db - base.l_total_db, 3.0, 1e-9);
    EXPECT_NEAR(off.l_am_db, 3.0, 1e-12);
    expect_identity(off, cfg);

    // Per-ray mode mispoints the beam instead; one ray gives the same total.
    cfg.misalignment_mode = MisalignmentMode::per_ray;
    const auto per_ray = evaluate(snap, cfg, {});
    EXPECT_EQ(per_ray.l_am_db, 0.0);
    EXPECT_NEAR(per_ray.l_total_db, off.l_total_db, 1e-9);
}

TEST(LinkBudget, ZeroLossIdentity)
{
    LinkBudgetConfig cfg;
    cfg.l_hd_db = 0.0;
    cfg.atmosphere.l_fixed_db = 0.0;
    const auto r = evaluate(los_only(100, 400, 1.0), cfg, {});
    EXPECT_NEAR(r.l_total_db, 0.0, 1e-12);
}

TEST(LinkBudget, ClearSkySweepTracksFspl)
{
    PassGeometry pass;
    pass.arc_radius_km = 500;
    pass.altitudes_km = {5, 20, 75, 150, 250, 400, 499.977};
    std::vector<Snapshot> snaps;
    for (double h : pass.altitudes_km)
        snaps.push_back(los_only(h, 500));
    LinkBudgetConfig cfg;
    const auto rows = sweep_pass(pass, snaps, cfg);
    ASSERT_EQ(rows.size(), snaps.size());
    for (const auto &r : rows)
    {
        EXPECT_NEAR(r.l_total_db - r.fspl_db, 3.0, 1e-9);
        expect_identity(r, cfg);
    }

    cfg.l_hd_db = 0.0;
    cfg.atmosphere.l_fixed_db = 0.0;
    for (const auto &r : sweep_pass(pass, snaps, cfg))
        EXPECT_NEAR(r.l_total_db, fspl_db(500, 10), 1e-9);
}

TEST(LinkBudget, WeatherAddsExactly)
{
    PassGeometry pass;
    pass.altitudes_km = {5, 50, 136, 264, 371};
    std::vector<Snapshot> snaps;
    for (double h : pass.altitudes_km)
        snaps.push_back(los_only(h));
    LinkBudgetConfig clear, rain, all;
    rain.weather.rain = true;
    all.weather = {true, true, true};
    const auto a = sweep_pass(pass, snaps, clear);
    const auto b = sweep_pass(pass, snaps, rain);
    const auto c = sweep_pass(pass, snaps, all);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const ElevationAngle psi(a[i].psi_deg);
        EXPECT_NEAR(b[i].l_total_db - a[i].l_total_db, rain_attenuation_db(psi, clear.atmosphere, pass), 1e-9);
        EXPECT_GE(c[i].l_total_db, b[i].l_total_db);
        expect_identity(c[i], all);
    }
}

TEST(LinkBudget, RowsOrderedByAltitude)
{
    PassGeometry pass;
    pass.altitudes_km = {5, 50, 300};
    pass.direction = PassDirection::full_pass;
    std::vector<Snapshot> snaps;
    for (double h : {5.0, 50.0, 300.0, 50.0, 5.0})
        snaps.push_back(los_only(h));
    const auto rows = sweep_pass(pass, snaps, {});
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_LE(rows[i - 1].altitude_km, rows[i].altitude_km);

    snaps.pop_back();
    EXPECT_THROW(sweep_pass(pass, snaps, {}), ConfigError);
}

TEST(LinkBudget, TracksStrongestRayWithoutLos)
{
    auto snap = los_only(100);
    snap.mpcs[0].interactions = 2;
    LinkBudgetConfig cfg;
    cfg.gs_antenna = single_element();
    EXPECT_NEAR(evaluate(snap, cfg, {}).l_total_db, fspl_db(400, 10) + 3.0, 1e-9);
}

TEST(LinkBudget, PhasorCancellationIsNumericError)
{
    auto snap = los_only(100);
    Mpc twin = snap.mpcs[0];
    twin.interactions = 1;
    twin.phase_rad = M_PI;
    snap.mpcs.push_back(twin);
    LinkBudgetConfig cfg;
    cfg.coherent_mode = CoherentMode::phasor_sum;
    EXPECT_THROW(evaluate(snap, cfg, {}), NumericError);
    cfg.coherent_mode = CoherentMode::power_sum;
    EXPECT_NEAR(evaluate(snap, cfg, {}).l_total_db, fspl_db(400, 10) + 3.0 - 10 * std::log10(2.0), 1e-9);
}
