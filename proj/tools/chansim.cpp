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

#include <leochan/leochan.hpp>

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

struct Options
{
    std::string config;
    std::string trace;
    std::string out = ".";
    bool rain = false;
    bool clouds = false;
    bool snow = false;
    std::optional<double> misalign_az;
    std::optional<double> misalign_el;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App &sub, Options &o, bool with_trace)
{
    sub.add_option("--config", o.config, "Scenario configuration (JSON)")->required();
    if (with_trace)
        sub.add_option("--trace", o.trace, "MPC trace CSV; synthesized from the config when omitted");
    sub.add_flag("--rain", o.rain, "Enable rain attenuation");
    sub.add_flag("--clouds", o.clouds, "Enable cloud attenuation");
    sub.add_flag("--snow", o.snow, "Enable snow attenuation");
    sub.add_option("--misalign-az", o.misalign_az, "GS beam misalignment in azimuth, degrees");
    sub.add_option("--misalign-el", o.misalign_el, "GS beam misalignment in elevation, degrees");
    sub.add_option("--seed", o.seed, "Random seed");
    sub.add_option("--out", o.out, "Output directory");
}

leochan::io::ScenarioConfig resolve_config(const Options &o)
{
    auto cfg = leochan::io::load_config(o.config);
    cfg.link.weather.rain = cfg.link.weather.rain || o.rain;
    cfg.link.weather.clouds = cfg.link.weather.clouds || o.clouds;
    cfg.link.weather.snow = cfg.link.weather.snow || o.snow;
    if (o.misalign_az)
        cfg.link.misalign_az_deg = *o.misalign_az;
    if (o.misalign_el)
        cfg.link.misalign_el_deg = *o.misalign_el;
    if (o.seed)
        cfg.seed = *o.seed;
    cfg.finalize();
    return cfg;
}

std::vector<leochan::Snapshot> scenario(const leochan::io::ScenarioConfig &cfg, const Options &o)
{
    if (o.trace.empty())
        return leochan::io::synth_scenario(cfg.pass, cfg.synth, cfg.seed);
    leochan::io::TraceContext ctx;
    ctx.arc_radius_km = cfg.pass.arc_radius_km;
    ctx.p_tx_dbm = cfg.link.p_tx_dbm;
    return leochan::io::load_trace(o.trace, ctx);
}

int fail(const char *kind, const std::exception &e, int code)
{
    std::cerr << "chansim: " << kind << ": " << e.what() << '\n';
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    using leochan::io::Subcommand;

    CLI::App app{"LEO satellite-to-ground channel simulator"};
    app.require_subcommand(1);

    Options o;
    const std::vector<std::pair<const char *, Subcommand>> reports = {
        {"linkbudget", Subcommand::linkbudget}, {"fading", Subcommand::fading},
        {"spreads", Subcommand::spreads},       {"cluster", Subcommand::cluster},
        {"ntn-compare", Subcommand::ntn_compare}};
    std::vector<std::pair<CLI::App *, Subcommand>> subs;
    for (const auto &[name, sub] : reports)
    {
        auto *s = app.add_subcommand(name, std::string("Write ") + name + ".csv and summary.json");
        add_common(*s, o, true);
        subs.emplace_back(s, sub);
    }
    auto *synth = app.add_subcommand("synth", "Write the synthetic scenario as trace.csv");
    add_common(*synth, o, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try
    {
        const auto cfg = resolve_config(o);
        if (synth->parsed())
        {
            const auto snaps = leochan::io::synth_scenario(cfg.pass, cfg.synth, cfg.seed);
            leochan::io::write_files_atomically(o.out, {{"trace.csv", leochan::io::trace_to_string(snaps)}});
            return 0;
        }
        for (const auto &[s, sub] : subs)
        {
            if (s->parsed())
            {
                leochan::io::run_report(cfg, sub, scenario(cfg, o), o.out);
                return 0;
            }
        }
        return 2;
    }
    catch (const leochan::ConfigError &e)
    {
        return fail("config error", e, 2);
    }
    catch (const leochan::DomainError &e)
    {
        return fail("config error", e, 2);
    }
    catch (const leochan::InputError &e)
    {
        return fail("input error", e, 3);
    }
    catch (const leochan::NumericError &e)
    {
        return fail("numeric error", e, 4);
    }
}
