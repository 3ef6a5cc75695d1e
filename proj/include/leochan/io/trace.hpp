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
#include "../geometry.hpp"
#include "../mpc.hpp"
#include "../units.hpp"
#include "format.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// MPC trace files: the ray-tracer export format.
//
//   # leochan-trace v1
//   snapshot,altitude_km,amplitude,power_dbm,phase_rad,delay_s,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg,n_interactions
//   0,0.005,1.9e-09,,0.31,0.0013343,180,-0.0007,0,0.0007,0
//
// One row per ray. Rows of a snapshot are contiguous and share the altitude. Exactly one of
// `amplitude` (linear path gain) and `power_dbm` (received power for an isotropic link) is
// given per row. n_interactions = 0 marks the LOS ray.

namespace leochan::io
{

inline constexpr std::string_view trace_version_line = "# leochan-trace v1";
inline constexpr std::string_view trace_header =
    "snapshot,altitude_km,amplitude,power_dbm,phase_rad,delay_s,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg,"
    "n_interactions";

struct TraceContext
{
    double arc_radius_km = 400.0; // slant range of every snapshot
    double p_tx_dbm = 30.0;       // converts power_dbm rows to path gains
};

namespace detail
{

inline std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
    {
        if (i == line.size() || line[i] == ',')
        {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

} // namespace detail

/// Parses, validates and normalises a trace. Errors carry the 1-based line number.
inline std::vector<Snapshot> parse_trace(std::istream &in, const TraceContext &ctx)
{
    if (!(ctx.arc_radius_km > 0.0))
        throw ConfigError("trace: arc radius must be positive");

    std::vector<Snapshot> out;
    std::vector<std::size_t> first_line; // line where each snapshot starts
    std::string line;
    std::size_t line_no = 0;
    int stage = 0; // 0: expect version, 1: expect header, 2: rows
    long current_id = -1;

    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (stage == 0)
        {
            if (line != trace_version_line)
                throw InputError("trace: missing version line '" + std::string(trace_version_line) + "'", line_no);
            stage = 1;
            continue;
        }
        if (line.front() == '#')
            continue;
        if (stage == 1)
        {
            if (line != trace_header)
                throw InputError("trace: unexpected column header", line_no);
            stage = 2;
            continue;
        }

        const auto f = detail::split_csv(line);
        if (f.size() != 11)
            throw InputError("trace: expected 11 fields, got " + std::to_string(f.size()), line_no);

        auto num = [&](std::size_t i, const char *name) {
            double v;
            if (!parse_double(f[i], v) || !std::isfinite(v))
                throw InputError(std::string("trace: bad value for ") + name, line_no);
            return v;
        };

        double id_d = num(0, "snapshot");
        if (id_d < 0 || id_d != std::floor(id_d))
            throw InputError("trace: snapshot id must be a non-negative integer", line_no);
        const long id = static_cast<long>(id_d);
        const double altitude = num(1, "altitude_km");

        Mpc m;
        const bool has_amp = !f[2].empty();
        const bool has_pow = !f[3].empty();
        if (has_amp == has_pow)
            throw InputError("trace: exactly one of amplitude and power_dbm must be given", line_no);
        m.amplitude = has_amp ? num(2, "amplitude") : db_to_linear_amplitude(num(3, "power_dbm") - ctx.p_tx_dbm);
        if (m.amplitude < 0.0)
            throw InputError("trace: negative amplitude", line_no);
        m.phase_rad = num(4, "phase_rad");
        m.delay_s = num(5, "delay_s");
        if (m.delay_s < 0.0)
            throw InputError("trace: negative delay", line_no);
        m.aod_az_deg = num(6, "aod_az_deg");
        m.aod_el_deg = num(7, "aod_el_deg");
        m.aoa_az_deg = num(8, "aoa_az_deg");
        m.aoa_el_deg = num(9, "aoa_el_deg");
        if (std::fabs(m.aod_el_deg) > 90.0 || std::fabs(m.aoa_el_deg) > 90.0)
            throw InputError("trace: elevation outside [-90, 90]", line_no);
        const double inter = num(10, "n_interactions");
        if (inter < 0 || inter != std::floor(inter))
            throw InputError("trace: n_interactions must be a non-negative integer", line_no);
        m.interactions = static_cast<int>(inter);

        if (id != current_id)
        {
            if (id <= current_id)
                throw InputError("trace: snapshot ids must increase and rows of a snapshot must be contiguous", line_no);
            ElevationAngle psi(90.0);
            try
            {
                psi = altitude_to_elevation(altitude, ctx.arc_radius_km);
            }
            catch (const DomainError &e)
            {
                throw InputError(std::string("trace: ") + e.what(), line_no);
            }
            out.push_back(Snapshot{altitude, psi, ctx.arc_radius_km, {}});
            first_line.push_back(line_no);
            current_id = id;
        }
        else if (altitude != out.back().altitude_km)
        {
            throw InputError("trace: altitude changes within a snapshot", line_no);
        }
        if (m.is_los() && los_index(out.back()))
            throw InputError("trace: duplicate LOS ray in snapshot " + std::to_string(id), line_no);
        out.back().mpcs.push_back(m);
    }

    if (stage < 2 || out.empty())
        throw InputError(stage == 0 ? "trace: empty file" : "trace: no rays", line_no);

    for (std::size_t i = 0; i < out.size(); ++i)
    {
        normalize(out[i]);
        try
        {
            validate(out[i]);
        }
        catch (const InputError &e)
        {
            throw InputError(e.what(), first_line[i]);
        }
    }
    return out;
}

inline std::vector<Snapshot> load_trace(const std::string &path, const TraceContext &ctx)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("trace: cannot open '" + path + "'");
    return parse_trace(in, ctx);
}

/// Writes snapshots with amplitudes as linear path gains, in shortest exact decimal form.
inline void write_trace(std::ostream &out, const std::vector<Snapshot> &snapshots)
{
    out << trace_version_line << '\n' << trace_header << '\n';
    for (std::size_t i = 0; i < snapshots.size(); ++i)
    {
        const auto &s = snapshots[i];
        for (const auto &m : s.mpcs)
        {
            out << i << ',' << format_double(s.altitude_km) << ',' << format_double(m.amplitude) << ",,"
                << format_double(m.phase_rad) << ',' << format_double(m.delay_s) << ','
                << format_double(m.aod_az_deg) << ',' << format_double(m.aod_el_deg) << ','
                << format_double(m.aoa_az_deg) << ',' << format_double(m.aoa_el_deg) << ',' << m.interactions
                << '\n';
        }
    }
}

inline std::string trace_to_string(const std::vector<Snapshot> &snapshots)
{
    std::ostringstream os;
    write_trace(os, snapshots);
    return os.str();
}

} // namespace leochan::io
