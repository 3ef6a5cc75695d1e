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

#include "../clustering.hpp"
#include "../dispersion.hpp"
#include "../error.hpp"
#include "../fading.hpp"
#include "../link_budget.hpp"
#include "../mpc.hpp"
#include "../ntn.hpp"
#include "config.hpp"
#include "format.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace leochan::io
{

enum class Subcommand
{
    linkbudget,
    fading,
    spreads,
    cluster,
    ntn_compare
};

inline const char *to_string(Subcommand s)
{
    switch (s)
    {
    case Subcommand::linkbudget:
        return "linkbudget";
    case Subcommand::fading:
        return "fading";
    case Subcommand::spreads:
        return "spreads";
    case Subcommand::cluster:
        return "cluster";
    case Subcommand::ntn_compare:
        return "ntn-compare";
    }
    return "?";
}

inline constexpr int report_schema_version = 1;

struct Report
{
    std::string name; // file stem: <name>.csv
    std::string csv;
    nlohmann::ordered_json summary;
};

inline constexpr const char *linkbudget_columns =
    "psi_deg,altitude_km,l_total_db,p_rx_dbm,p_coh_dbm,l_hd_db,l_am_db,l_atm_db,fspl_db";
inline constexpr const char *fading_columns =
    "index,altitude_km,psi_deg,n_mpcs,regime,k_factor,fit_k,fit_m,fit_omega,samples";
inline constexpr const char *spreads_columns = "index,altitude_km,psi_deg,n_mpcs,rms_ds_s,mean_excess_delay_s,"
                                               "az_spread_sat_deg,el_spread_sat_deg,az_spread_gs_deg,el_spread_gs_deg";
inline constexpr const char *cluster_columns = "index,altitude_km,psi_deg,mpc_index,delay_s,label";
inline constexpr const char *ntn_columns =
    "index,altitude_km,psi_deg,profile,sigma_db,fspl_db,l_total_db,ntn_mean_db,ntn_lower_db,ntn_upper_db,ntn_draw_db";

namespace detail
{

inline std::string spread_text(double v) { return is_unbounded(v) ? "unbounded" : format_double(v); }

inline nlohmann::ordered_json spread_json(double v)
{
    if (is_unbounded(v))
        return "unbounded";
    return v;
}

// Empirical CDF points (value, P[X <= value]); unbounded values sort last.
inline nlohmann::ordered_json cdf(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < values.size(); ++i)
        out.push_back({{"value", spread_json(values[i])}, {"p", double(i + 1) / double(values.size())}});
    return out;
}

inline double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

inline Report linkbudget_report(const ScenarioConfig &cfg, const std::vector<Snapshot> &snaps)
{
    const auto rows = sweep_pass(cfg.pass, snaps, cfg.link);
    std::ostringstream csv;
    csv << linkbudget_columns << '\n';
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const auto &r = rows[i];
        csv << format_double(r.psi_deg) << ',' << format_double(r.altitude_km) << ',' << format_double(r.l_total_db)
            << ',' << format_double(r.p_rx_dbm) << ',' << format_double(r.p_coh_dbm) << ','
            << format_double(r.l_hd_db) << ',' << format_double(r.l_am_db) << ',' << format_double(r.l_atm_db) << ','
            << format_double(r.fspl_db) << '\n';
        lo = i ? std::min(lo, r.l_total_db) : r.l_total_db;
        hi = i ? std::max(hi, r.l_total_db) : r.l_total_db;
    }
    nlohmann::ordered_json s;
    s["rows"] = rows.size();
    s["l_total_min_db"] = lo;
    s["l_total_max_db"] = hi;
    s["weather"] = {{"rain", cfg.link.weather.rain}, {"clouds", cfg.link.weather.clouds}, {"snow", cfg.link.weather.snow}};
    s["misalignment_deg"] = {{"az", cfg.link.misalign_az_deg}, {"el", cfg.link.misalign_el_deg}};
    return {"linkbudget", csv.str(), s};
}

inline Report fading_report(const ScenarioConfig &cfg, const std::vector<Snapshot> &snaps)
{
    const ElevationAngle psi2(cfg.fading_psi2_deg());
    std::ostringstream csv;
    csv << fading_columns << '\n';
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < snaps.size(); ++i)
    {
        const auto &snap = snaps[i];
        const auto regime = select_regime(snap, psi2);
        Snapshot work = snap;
        designate_strongest_as_los(work);
        const auto k = k_factor(work);

        nlohmann::ordered_json e;
        e["index"] = i;
        e["altitude_km"] = snap.altitude_km;
        e["psi_deg"] = snap.psi.degrees();
        e["n_mpcs"] = snap.size();
        e["regime"] = to_string(regime.regime);
        e["k_factor"] = k ? nlohmann::ordered_json(*k) : nlohmann::ordered_json(nullptr);

        std::string fit_k, fit_m, fit_omega, n_samples = "0";
        if (regime.regime != Regime::deterministic_los)
        {
            const auto samples = envelope_samples(work, regime.regime, cfg.fading_samples, cfg.seed + i, cfg.los_shadow_m);
            const auto params = fit_scaled(samples, regime);
            nlohmann::ordered_json f;
            f["samples"] = samples.size();
            n_samples = std::to_string(samples.size());
            if (const auto *r = std::get_if<RicianParams>(&params))
            {
                f["K"] = r->k;
                f["m"] = nullptr;
                f["omega"] = r->omega;
                fit_k = format_double(r->k);
                fit_omega = format_double(r->omega);
            }
            else
            {
                const auto &sr = std::get<ShadowedRicianParams>(params);
                f["K"] = sr.k;
                f["m"] = sr.m;
                f["omega"] = sr.omega;
                fit_k = format_double(sr.k);
                fit_m = format_double(sr.m);
                fit_omega = format_double(sr.omega);
            }
            e["fit"] = f;
        }
        else
        {
            e["fit"] = nullptr;
        }
        per.push_back(e);
        csv << i << ',' << format_double(snap.altitude_km) << ',' << format_double(snap.psi.degrees()) << ','
            << snap.size() << ',' << to_string(regime.regime) << ',' << (k ? format_double(*k) : "") << ',' << fit_k
            << ',' << fit_m << ',' << fit_omega << ',' << n_samples << '\n';
    }
    nlohmann::ordered_json s;
    s["psi2_deg"] = psi2.degrees();
    s["snapshots"] = per;
    return {"fading", csv.str(), s};
}

inline Report spreads_report(const ScenarioConfig &, const std::vector<Snapshot> &snaps)
{
    std::ostringstream csv;
    csv << spreads_columns << '\n';
    std::vector<double> ds, az_s, el_s, az_g, el_g;
    for (std::size_t i = 0; i < snaps.size(); ++i)
    {
        const auto r = spreads(snaps[i]);
        csv << i << ',' << format_double(snaps[i].altitude_km) << ',' << format_double(snaps[i].psi.degrees()) << ','
            << snaps[i].size() << ',' << format_double(r.rms_ds_s) << ',' << format_double(r.mean_excess_delay_s)
            << ',' << detail::spread_text(r.az_spread_sat_deg) << ',' << format_double(r.el_spread_sat_deg) << ','
            << detail::spread_text(r.az_spread_gs_deg) << ',' << format_double(r.el_spread_gs_deg) << '\n';
        ds.push_back(r.rms_ds_s);
        az_s.push_back(r.az_spread_sat_deg);
        el_s.push_back(r.el_spread_sat_deg);
        az_g.push_back(r.az_spread_gs_deg);
        el_g.push_back(r.el_spread_gs_deg);
    }
    nlohmann::ordered_json s;
    s["median_rms_ds_s"] = detail::median(ds);
    s["cdf"] = {{"rms_ds_s", detail::cdf(ds)},
                {"az_spread_sat_deg", detail::cdf(az_s)},
                {"el_spread_sat_deg", detail::cdf(el_s)},
                {"az_spread_gs_deg", detail::cdf(az_g)},
                {"el_spread_gs_deg", detail::cdf(el_g)}};
    return {"spreads", csv.str(), s};
}

inline Report cluster_report(const ScenarioConfig &cfg, const std::vector<Snapshot> &snaps)
{
    std::ostringstream csv;
    csv << cluster_columns << '\n';
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    int total_clusters = 0;
    std::size_t total_mpcs = 0;
    for (std::size_t i = 0; i < snaps.size(); ++i)
    {
        const auto res = cluster_snapshot(snaps[i], cfg.xi, cfg.zeta);
        std::size_t noise = 0;
        for (std::size_t k = 0; k < res.labels.size(); ++k)
        {
            noise += res.labels[k] == noise_label;
            csv << i << ',' << format_double(snaps[i].altitude_km) << ',' << format_double(snaps[i].psi.degrees())
                << ',' << k << ',' << format_double(snaps[i].mpcs[k].delay_s) << ',' << res.labels[k] << '\n';
        }
        per.push_back({{"index", i},
                       {"altitude_km", snaps[i].altitude_km},
                       {"psi_deg", snaps[i].psi.degrees()},
                       {"n_mpcs", snaps[i].size()},
                       {"n_clusters", res.n_clusters},
                       {"noise", noise}});
        total_clusters += res.n_clusters;
        total_mpcs += snaps[i].size();
    }
    nlohmann::ordered_json s;
    s["xi"] = cfg.xi;
    s["zeta"] = cfg.zeta;
    s["total_mpcs"] = total_mpcs;
    s["total_clusters"] = total_clusters;
    s["snapshots"] = per;
    return {"cluster", csv.str(), s};
}

inline Report ntn_report(const ScenarioConfig &cfg, const std::vector<Snapshot> &snaps)
{
    if (cfg.tap_table_path.empty())
        throw ConfigError("ntn-compare needs ntn.tap_table in the config");
    const auto table = ntn::load_tdl_table(cfg.tap_table_path);

    std::ostringstream csv;
    csv << ntn_columns << '\n';
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < snaps.size(); ++i)
    {
        const auto &snap = snaps[i];
        const auto name = ntn::select_profile(snap.psi, cfg.gates);
        const auto &profile = ntn::lookup(table, name);
        const double fspl = fspl_db(snap.distance_km, cfg.link.atmosphere.fc_ghz);
        const double mean = fspl - cfg.ntn_antenna_gains_db;
        const double sigma = profile.shadow_sigma_db;
        const double draw = ntn::ntn_attenuation_db(snap.distance_km, cfg.link.atmosphere.fc_ghz, profile,
                                                    cfg.ntn_antenna_gains_db, cfg.seed + i);
        const auto row = evaluate(snap, cfg.link, cfg.pass);
        csv << i << ',' << format_double(snap.altitude_km) << ',' << format_double(snap.psi.degrees()) << ','
            << ntn::to_string(name) << ',' << format_double(sigma) << ',' << format_double(fspl) << ','
            << format_double(row.l_total_db) << ',' << format_double(mean) << ',' << format_double(mean - sigma) << ','
            << format_double(mean + sigma) << ',' << format_double(draw) << '\n';
        per.push_back({{"index", i}, {"psi_deg", snap.psi.degrees()}, {"profile", ntn::to_string(name)}});
    }
    nlohmann::ordered_json s;
    s["psi1_deg"] = cfg.gates.psi1_deg;
    s["psi2_deg"] = cfg.gates.psi2_deg;
    s["antenna_gains_db"] = cfg.ntn_antenna_gains_db;
    s["profiles"] = per;
    return {"ntn-compare", csv.str(), s};
}

inline Report build_report(const ScenarioConfig &cfg, Subcommand sub, const std::vector<Snapshot> &snaps)
{
    if (snaps.empty())
        throw InputError("no snapshots to report on");
    Report r;
    switch (sub)
    {
    case Subcommand::linkbudget:
        r = linkbudget_report(cfg, snaps);
        break;
    case Subcommand::fading:
        r = fading_report(cfg, snaps);
        break;
    case Subcommand::spreads:
        r = spreads_report(cfg, snaps);
        break;
    case Subcommand::cluster:
        r = cluster_report(cfg, snaps);
        break;
    case Subcommand::ntn_compare:
        r = ntn_report(cfg, snaps);
        break;
    }
    nlohmann::ordered_json head;
    head["subcommand"] = to_string(sub);
    head["schema_version"] = report_schema_version;
    head["seed"] = cfg.seed;
    head["snapshots_total"] = snaps.size();
    head["arc_radius_km"] = cfg.pass.arc_radius_km;
    head.update(r.summary);
    r.summary = std::move(head);
    return r;
}

/// Writes a set of files so that either all of them or none appear: each is written to a
/// temporary sibling first and renamed once every write succeeded.
inline void write_files_atomically(const std::filesystem::path &dir,
                                   const std::vector<std::pair<std::string, std::string>> &files)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<fs::path> temps;
    auto cleanup = [&] {
        for (const auto &t : temps)
            fs::remove(t, ec);
    };
    for (const auto &[name, content] : files)
    {
        const fs::path tmp = dir / ("." + name + ".tmp");
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        out.close();
        if (!out)
        {
            cleanup();
            throw InputError("cannot write '" + tmp.string() + "'");
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i)
    {
        fs::rename(temps[i], dir / files[i].first, ec);
        if (ec)
        {
            const std::string msg = ec.message();
            cleanup();
            for (std::size_t k = 0; k < i; ++k) // undo the renames already done
                fs::remove(dir / files[k].first, ec);
            throw InputError("cannot rename into '" + (dir / files[i].first).string() + "': " + msg);
        }
    }
}

/// Builds the report and writes `<subcommand>.csv` and `summary.json` into `out_dir`.
inline Report run_report(const ScenarioConfig &cfg, Subcommand sub, const std::vector<Snapshot> &snaps,
                         const std::filesystem::path &out_dir)
{
    Report r = build_report(cfg, sub, snaps);
    write_files_atomically(out_dir, {{r.name + ".csv", r.csv}, {"summary.json", r.summary.dump(2) + "\n"}});
    return r;
}

} // namespace leochan::io
