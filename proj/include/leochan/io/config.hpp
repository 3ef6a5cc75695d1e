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

#include "../antenna.hpp"
#include "../atmosphere.hpp"
#include "../error.hpp"
#include "../fading.hpp"
#include "../geometry.hpp"
#include "../link_budget.hpp"
#include "../ntn.hpp"
#include "synth.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

// Scenario configuration file (JSON). Every section and key is optional; omitted values keep
// the defaults. Unknown keys are rejected so that typos do not silently fall back to defaults.
//
// {
//   "pass":        {"arc_radius_km": 400, "gs_height_km": 0.023, "altitudes_km": [...],
//                   "direction": "ascending" | "descending" | "full-pass"},
//   "link":        {"p_tx_dbm": 30, "l_hd_db": 1.5, "coherent_mode": "power-sum" | "phasor-sum",
//                   "misalignment_mode": "aggregate" | "per-ray", "track_los": true},
//   "misalignment":{"az_deg": 0, "el_deg": 0},
//   "weather":     {"rain": false, "clouds": false, "snow": false},
//   "atmosphere":  {"k_rn": 0.0363, ..., "slant_mode": "as-printed" | "itu-piecewise",
//                   "elevation_floor_deg": 0.5},
//   "antennas":    {"satellite": {...}, "ground_station": {...}},
//   "fading":      {"psi2_deg": 14.4775, "samples": 2000, "los_shadow_m": 2},
//   "ntn":         {"psi1_deg": 10, "psi2_deg": 15, "tap_table": "taps.csv", "antenna_gains_db": 0},
//   "clustering":  {"xi": 0.3, "zeta": 2},
//   "synth":       {"detection_threshold_dbm": -160, ...},
//   "seed": 1
// }

namespace leochan::io
{

struct ScenarioConfig
{
    PassGeometry pass;
    LinkBudgetConfig link;
    double psi2_deg = 0.0; // fading threshold; <= 0 selects asin(100/d)
    std::size_t fading_samples = 2000;
    double los_shadow_m = 2.0;
    ntn::ElevationGates gates;
    std::string tap_table_path;
    double ntn_antenna_gains_db = 0.0;
    double xi = 0.3;
    int zeta = 2;
    SynthParams synth;
    std::uint64_t seed = 1;

    double fading_psi2_deg() const { return psi2_deg > 0.0 ? psi2_deg : default_psi2_deg(pass.arc_radius_km); }

    /// Copies shared settings into the generator parameters and checks every range.
    void finalize()
    {
        synth.p_tx_dbm = link.p_tx_dbm;
        synth.fc_ghz = link.atmosphere.fc_ghz;
        synth.psi2_deg = psi2_deg;
        validate();
    }

    void validate() const
    {
        pass.validate();
        link.atmosphere.validate();
        link.sat_antenna.validate();
        link.gs_antenna.validate();
        gates.validate();
        synth.validate();
        if (!(fading_psi2_deg() > 0.0 && fading_psi2_deg() <= 90.0))
            throw ConfigError("fading psi2 must lie in (0, 90]");
        if (fading_samples < 100)
            throw ConfigError("fading.samples must be at least 100");
        if (!(los_shadow_m > 0.0))
            throw ConfigError("fading.los_shadow_m must be positive");
        if (!(xi > 0.0) || zeta < 1)
            throw ConfigError("clustering requires xi > 0 and zeta >= 1");
        if (!(link.l_hd_db >= 0.0))
            throw ConfigError("hardware loss must be non-negative");
        if (!tap_table_path.empty() && !std::filesystem::exists(tap_table_path))
            throw ConfigError("tap table '" + tap_table_path + "' does not exist");
    }
};

namespace detail
{

using nlohmann::json;

inline void check_keys(const json &obj, const char *section, std::initializer_list<const char *> allowed)
{
    if (!obj.is_object())
        throw ConfigError(std::string("config: '") + section + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool ok = false;
        for (const char *a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw ConfigError(std::string("config: unknown key '") + it.key() + "' in '" + section + "'");
    }
}

template <class T> void read(const json &obj, const char *key, T &out)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw ConfigError(std::string("config: wrong type for '") + key + "'");
    }
}

inline AntennaModel parse_antenna(const json &j, const char *section)
{
    check_keys(j, section,
               {"kind", "peak_gain_dbi", "hpbw_deg", "nx", "ny", "spacing_wavelengths", "steer_az_deg", "steer_el_deg",
                "mount_az_deg", "mount_el_deg", "floor_db"});
    AntennaModel m;
    std::string kind = "isotropic";
    read(j, "kind", kind);
    if (kind == "isotropic")
        m.kind = AntennaKind::isotropic;
    else if (kind == "single-element")
        m.kind = AntennaKind::single_element;
    else if (kind == "phased-array")
        m.kind = AntennaKind::phased_array;
    else
        throw ConfigError("config: unknown antenna kind '" + kind + "'");
    read(j, "peak_gain_dbi", m.peak_gain_dbi);
    read(j, "hpbw_deg", m.hpbw_deg);
    read(j, "nx", m.nx);
    read(j, "ny", m.ny);
    read(j, "spacing_wavelengths", m.spacing_wavelengths);
    read(j, "steer_az_deg", m.steer_az_deg);
    read(j, "steer_el_deg", m.steer_el_deg);
    read(j, "mount_az_deg", m.mount_az_deg);
    read(j, "mount_el_deg", m.mount_el_deg);
    read(j, "floor_db", m.floor_db);
    return m;
}

} // namespace detail

/// Builds a configuration from parsed JSON. Relative file references resolve against `base_dir`.
inline ScenarioConfig parse_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {})
{
    using detail::check_keys;
    using detail::read;
    ScenarioConfig c;
    check_keys(j, "<root>",
               {"pass", "link", "misalignment", "weather", "atmosphere", "antennas", "fading", "ntn", "clustering",
                "synth", "seed"});

    if (j.contains("pass"))
    {
        const auto &p = j["pass"];
        check_keys(p, "pass", {"arc_radius_km", "gs_height_km", "altitudes_km", "direction"});
        read(p, "arc_radius_km", c.pass.arc_radius_km);
        read(p, "gs_height_km", c.pass.gs_height_km);
        read(p, "altitudes_km", c.pass.altitudes_km);
        std::string dir = "ascending";
        read(p, "direction", dir);
        if (dir == "ascending")
            c.pass.direction = PassDirection::ascending;
        else if (dir == "descending")
            c.pass.direction = PassDirection::descending;
        else if (dir == "full-pass")
            c.pass.direction = PassDirection::full_pass;
        else
            throw ConfigError("config: unknown pass direction '" + dir + "'");
    }
    if (j.contains("link"))
    {
        const auto &l = j["link"];
        check_keys(l, "link", {"p_tx_dbm", "l_hd_db", "coherent_mode", "misalignment_mode", "track_los"});
        read(l, "p_tx_dbm", c.link.p_tx_dbm);
        read(l, "l_hd_db", c.link.l_hd_db);
        read(l, "track_los", c.link.track_los);
        std::string mode = "power-sum";
        read(l, "coherent_mode", mode);
        if (mode == "power-sum")
            c.link.coherent_mode = CoherentMode::power_sum;
        else if (mode == "phasor-sum")
            c.link.coherent_mode = CoherentMode::phasor_sum;
        else
            throw ConfigError("config: unknown coherent_mode '" + mode + "'");
        std::string mis = "aggregate";
        read(l, "misalignment_mode", mis);
        if (mis == "aggregate")
            c.link.misalignment_mode = MisalignmentMode::aggregate;
        else if (mis == "per-ray")
            c.link.misalignment_mode = MisalignmentMode::per_ray;
        else
            throw ConfigError("config: unknown misalignment_mode '" + mis + "'");
    }
    if (j.contains("misalignment"))
    {
        const auto &m = j["misalignment"];
        check_keys(m, "misalignment", {"az_deg", "el_deg"});
        read(m, "az_deg", c.link.misalign_az_deg);
        read(m, "el_deg", c.link.misalign_el_deg);
    }
    if (j.contains("weather"))
    {
        const auto &w = j["weather"];
        check_keys(w, "weather", {"rain", "clouds", "snow"});
        read(w, "rain", c.link.weather.rain);
        read(w, "clouds", c.link.weather.clouds);
        read(w, "snow", c.link.weather.snow);
    }
    if (j.contains("atmosphere"))
    {
        const auto &a = j["atmosphere"];
        auto &p = c.link.atmosphere;
        check_keys(a, "atmosphere",
                   {"k_rn", "epsilon", "rain_rate_mmh", "beta_db", "h_rain_km", "k_cl", "cloud_thickness_km",
                    "lwc_gm3", "k_sn", "snow_rate_mmh", "h_snow_km", "l_fixed_db", "fc_ghz", "r_earth_km",
                    "slant_mode", "elevation_floor_deg"});
        read(a, "k_rn", p.k_rn);
        read(a, "epsilon", p.epsilon);
        read(a, "rain_rate_mmh", p.rain_rate_mmh);
        read(a, "beta_db", p.beta_db);
        read(a, "h_rain_km", p.h_rain_km);
        read(a, "k_cl", p.k_cl);
        read(a, "cloud_thickness_km", p.cloud_thickness_km);
        read(a, "lwc_gm3", p.lwc_gm3);
        read(a, "k_sn", p.k_sn);
        read(a, "snow_rate_mmh", p.snow_rate_mmh);
        read(a, "h_snow_km", p.h_snow_km);
        read(a, "l_fixed_db", p.l_fixed_db);
        read(a, "fc_ghz", p.fc_ghz);
        read(a, "r_earth_km", p.r_earth_km);
        read(a, "elevation_floor_deg", p.elevation_floor_deg);
        std::string slant = "as-printed";
        read(a, "slant_mode", slant);
        if (slant == "as-printed")
            p.slant_mode = SlantMode::as_printed;
        else if (slant == "itu-piecewise")
            p.slant_mode = SlantMode::itu_piecewise;
        else
            throw ConfigError("config: unknown slant_mode '" + slant + "'");
    }
    if (j.contains("antennas"))
    {
        const auto &a = j["antennas"];
        check_keys(a, "antennas", {"satellite", "ground_station"});
        if (a.contains("satellite"))
            c.link.sat_antenna = detail::parse_antenna(a["satellite"], "antennas.satellite");
        if (a.contains("ground_station"))
            c.link.gs_antenna = detail::parse_antenna(a["ground_station"], "antennas.ground_station");
    }
    if (j.contains("fading"))
    {
        const auto &f = j["fading"];
        check_keys(f, "fading", {"psi2_deg", "samples", "los_shadow_m"});
        read(f, "psi2_deg", c.psi2_deg);
        read(f, "samples", c.fading_samples);
        read(f, "los_shadow_m", c.los_shadow_m);
    }
    if (j.contains("ntn"))
    {
        const auto &n = j["ntn"];
        check_keys(n, "ntn", {"psi1_deg", "psi2_deg", "tap_table", "antenna_gains_db"});
        read(n, "psi1_deg", c.gates.psi1_deg);
        read(n, "psi2_deg", c.gates.psi2_deg);
        read(n, "antenna_gains_db", c.ntn_antenna_gains_db);
        std::string table;
        read(n, "tap_table", table);
        if (!table.empty())
        {
            std::filesystem::path tp(table);
            c.tap_table_path = (tp.is_relative() && !base_dir.empty() ? base_dir / tp : tp).string();
        }
    }
    if (j.contains("clustering"))
    {
        const auto &k = j["clustering"];
        check_keys(k, "clustering", {"xi", "zeta"});
        read(k, "xi", c.xi);
        read(k, "zeta", c.zeta);
    }
    if (j.contains("synth"))
    {
        const auto &s = j["synth"];
        check_keys(s, "synth",
                   {"detection_threshold_dbm", "max_building_rays", "los_shadow_max_db", "los_shadow_sigma_db",
                    "ground_permittivity", "ground_blockage_db", "ground_min_elevation_deg", "decay_db_per_ns"});
        read(s, "detection_threshold_dbm", c.synth.detection_threshold_dbm);
        read(s, "max_building_rays", c.synth.max_building_rays);
        read(s, "los_shadow_max_db", c.synth.los_shadow_max_db);
        read(s, "los_shadow_sigma_db", c.synth.los_shadow_sigma_db);
        read(s, "ground_permittivity", c.synth.ground_permittivity);
        read(s, "ground_blockage_db", c.synth.ground_blockage_db);
        read(s, "ground_min_elevation_deg", c.synth.ground_min_elevation_deg);
        read(s, "decay_db_per_ns", c.synth.decay_db_per_ns);
    }
    read(j, "seed", c.seed);
    return c;
}

inline ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_config(j, std::filesystem::path(path).parent_path());
}

} // namespace leochan::io
