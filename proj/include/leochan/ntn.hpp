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
#include "link_budget.hpp"
#include "units.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

// 3GPP NTN comparison channel: elevation-gated TDL profile plus log-normal shadowing on top
// of free-space loss, antenna gains as deterministic offsets. Weather, atmospheric and
// hardware losses are deliberately not part of this curve.

namespace leochan::ntn
{

enum class ProfileName
{
    tdl_a,
    tdl_b,
    tdl_c
};

inline const char *to_string(ProfileName p)
{
    switch (p)
    {
    case ProfileName::tdl_a:
        return "NTN-TDL-A";
    case ProfileName::tdl_b:
        return "NTN-TDL-B";
    case ProfileName::tdl_c:
        return "NTN-TDL-C";
    }
    return "?";
}

inline ProfileName profile_from_string(const std::string &s)
{
    if (s == "NTN-TDL-A" || s == "A")
        return ProfileName::tdl_a;
    if (s == "NTN-TDL-B" || s == "B")
        return ProfileName::tdl_b;
    if (s == "NTN-TDL-C" || s == "C")
        return ProfileName::tdl_c;
    throw ConfigError("unknown TDL profile '" + s + "'");
}

/// Log-normal shadowing standard deviation per profile, dB.
inline double default_shadow_sigma_db(ProfileName p)
{
    switch (p)
    {
    case ProfileName::tdl_a:
        return 8.0;
    case ProfileName::tdl_b:
        return 6.0;
    case ProfileName::tdl_c:
        return 4.0;
    }
    return 0.0;
}

struct Tap
{
    double delay_norm; // delay normalised to the target delay spread
    double power_db;
    bool los;
};

struct TdlProfile
{
    ProfileName name;
    std::vector<Tap> taps;
    double shadow_sigma_db;

    /// Shifts tap powers so that their linear sum is 1.
    void normalize()
    {
        double total = 0.0;
        for (const auto &t : taps)
            total += db_to_linear_power(t.power_db);
        if (!(total > 0.0))
            throw ConfigError(std::string(to_string(name)) + ": tap powers sum to zero");
        const double offset = linear_power_to_db(total);
        for (auto &t : taps)
            t.power_db -= offset;
    }
};

using TdlTable = std::map<ProfileName, TdlProfile>;

/// Parses a tap table: CSV with header `profile,delay_norm,power_db,los`, one tap per line,
/// '#' comments allowed. Profiles are normalised to unit total power.
inline TdlTable parse_tdl_table(std::istream &in)
{
    TdlTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen)
        {
            if (line != "profile,delay_norm,power_db,los")
                throw ConfigError("tap table: unexpected header '" + line + "' (line " + std::to_string(line_no) + ")");
            header_seen = true;
            continue;
        }
        std::array<std::string, 4> f;
        std::stringstream ss(line);
        std::size_t n = 0;
        for (std::string cell; n < 4 && std::getline(ss, cell, ','); ++n)
            f[n] = cell;
        std::string extra;
        if (n != 4 || std::getline(ss, extra, ','))
            throw ConfigError("tap table: expected 4 fields (line " + std::to_string(line_no) + ")");
        try
        {
            const ProfileName name = profile_from_string(f[0]);
            Tap tap{std::stod(f[1]), std::stod(f[2]), f[3] == "1" || f[3] == "LOS" || f[3] == "los"};
            if (!(f[3] == "0" || f[3] == "1" || f[3] == "LOS" || f[3] == "NLOS" || f[3] == "los" || f[3] == "nlos"))
                throw ConfigError("bad LOS flag");
            if (!(tap.delay_norm >= 0.0))
                throw ConfigError("negative delay");
            auto [it, inserted] = table.try_emplace(name, TdlProfile{name, {}, default_shadow_sigma_db(name)});
            it->second.taps.push_back(tap);
        }
        catch (const std::logic_error &)
        {
            throw ConfigError("tap table: malformed number (line " + std::to_string(line_no) + ")");
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(std::string("tap table: ") + e.what() + " (line " + std::to_string(line_no) + ")");
        }
    }
    if (!header_seen)
        throw ConfigError("tap table: empty file");
    for (auto &[name, prof] : table)
        prof.normalize();
    return table;
}

inline TdlTable load_tdl_table(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open tap table '" + path + "'");
    return parse_tdl_table(in);
}

struct ElevationGates
{
    double psi1_deg = 10.0;
    double psi2_deg = 15.0;

    void validate() const
    {
        if (!(psi1_deg < psi2_deg))
            throw ConfigError("TDL gates require psi1 < psi2");
    }
};

/// A below psi1, B in [psi1, psi2), C at or above psi2.
inline ProfileName select_profile(ElevationAngle psi, const ElevationGates &g)
{
    g.validate();
    if (psi.degrees() < g.psi1_deg)
        return ProfileName::tdl_a;
    if (psi.degrees() < g.psi2_deg)
        return ProfileName::tdl_b;
    return ProfileName::tdl_c;
}

inline const TdlProfile &lookup(const TdlTable &table, ProfileName name)
{
    const auto it = table.find(name);
    if (it == table.end() || it->second.taps.empty())
        throw ConfigError(std::string("no tap data for ") + to_string(name));
    return it->second;
}

/// One realisation of the 3GPP attenuation: FSPL + N(0, sigma^2) - antenna gains, dB.
inline double ntn_attenuation_db(double d_km, double fc_ghz, const TdlProfile &profile, double antenna_gains_db,
                                 std::uint64_t seed)
{
    if (profile.taps.empty())
        throw ConfigError(std::string("no tap data for ") + to_string(profile.name));
    std::mt19937_64 rng(seed);
    double shadow = 0.0;
    if (profile.shadow_sigma_db > 0.0)
        shadow = std::normal_distribution<double>(0.0, profile.shadow_sigma_db)(rng);
    return fspl_db(d_km, fc_ghz) + shadow - antenna_gains_db;
}

/// Same, with the profile chosen from the elevation.
inline double ntn_attenuation_db(ElevationAngle psi, double d_km, double fc_ghz, const TdlTable &table,
                                 const ElevationGates &gates, double antenna_gains_db, std::uint64_t seed)
{
    return ntn_attenuation_db(d_km, fc_ghz, lookup(table, select_profile(psi, gates)), antenna_gains_db, seed);
}

/// n independent realisations from one seeded stream.
inline std::vector<double> ntn_attenuation_draws(double d_km, double fc_ghz, const TdlProfile &profile,
                                                 double antenna_gains_db, std::size_t n, std::uint64_t seed)
{
    if (profile.taps.empty())
        throw ConfigError(std::string("no tap data for ") + to_string(profile.name));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> shadow(0.0, profile.shadow_sigma_db > 0.0 ? profile.shadow_sigma_db : 1.0);
    const double base = fspl_db(d_km, fc_ghz) - antenna_gains_db;
    std::vector<double> out(n);
    for (auto &v : out)
        v = base + (profile.shadow_sigma_db > 0.0 ? shadow(rng) : 0.0);
    return out;
}

} // namespace leochan::ntn
