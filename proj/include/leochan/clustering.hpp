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
#include <cstddef>
#include <deque>
#include <vector>

namespace leochan
{

/// Row-major N x 7 matrix of normalised MPC features:
/// [delay, sin az_sat, cos az_sat, el_sat, sin az_gs, cos az_gs, el_gs].
struct FeatureMatrix
{
    static constexpr std::size_t cols = 7;

    std::size_t rows = 0;
    std::vector<double> data;

    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

/// Z-scores every column (population variance). Columns without spread become all zeros.
inline void zscore_columns(FeatureMatrix &f)
{
    if (f.rows == 0)
        return;
    const double n = double(f.rows);
    for (std::size_t c = 0; c < FeatureMatrix::cols; ++c)
    {
        double mean = 0.0;
        double scale = 0.0;
        for (std::size_t r = 0; r < f.rows; ++r)
        {
            mean += f(r, c);
            scale = std::fmax(scale, std::fabs(f(r, c)));
        }
        mean /= n;
        double var = 0.0;
        for (std::size_t r = 0; r < f.rows; ++r)
            var += (f(r, c) - mean) * (f(r, c) - mean);
        const double sd = std::sqrt(var / n);
        const bool constant = sd <= 1e-12 * std::fmax(1.0, scale);
        for (std::size_t r = 0; r < f.rows; ++r)
            f(r, c) = constant ? 0.0 : (f(r, c) - mean) / sd;
    }
}

/// Delay/angle feature vectors with azimuths mapped onto the unit circle, then z-scored.
inline FeatureMatrix build_features(const Snapshot &snap)
{
    if (snap.mpcs.empty())
        throw InputError("build_features: empty snapshot");
    FeatureMatrix f;
    f.rows = snap.mpcs.size();
    f.data.reserve(f.rows * FeatureMatrix::cols);
    for (const auto &m : snap.mpcs)
    {
        f.data.push_back(m.delay_s);
        f.data.push_back(std::sin(deg2rad(m.aod_az_deg)));
        f.data.push_back(std::cos(deg2rad(m.aod_az_deg)));
        f.data.push_back(m.aod_el_deg);
        f.data.push_back(std::sin(deg2rad(m.aoa_az_deg)));
        f.data.push_back(std::cos(deg2rad(m.aoa_az_deg)));
        f.data.push_back(m.aoa_el_deg);
    }
    zscore_columns(f);
    return f;
}

inline constexpr int noise_label = -1;

struct ClusterResult
{
    std::vector<int> labels; // cluster id 0..n_clusters-1, or noise_label
    int n_clusters = 0;
    double xi = 0.3;
    int zeta = 2;
};

/// DBSCAN with Euclidean distance and closed neighbourhoods that contain the query point.
/// Points are scanned in input order; a border point joins the first cluster that reaches it.
inline ClusterResult dbscan(const FeatureMatrix &features, double xi = 0.3, int zeta = 2)
{
    if (!(xi > 0.0))
        throw DomainError("dbscan: radius must be positive");
    if (zeta < 1)
        throw DomainError("dbscan: minimum points must be at least 1");

    const std::size_t n = features.rows;
    const double xi2 = xi * xi;
    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            double d2 = 0.0;
            for (std::size_t c = 0; c < FeatureMatrix::cols; ++c)
            {
                const double d = features(i, c) - features(j, c);
                d2 += d * d;
            }
            if (d2 <= xi2)
                neighbours[i].push_back(j);
        }
    }

    constexpr int unvisited = -2;
    ClusterResult res;
    res.xi = xi;
    res.zeta = zeta;
    res.labels.assign(n, unvisited);
    const auto is_core = [&](std::size_t i) { return neighbours[i].size() >= std::size_t(zeta); };

    for (std::size_t i = 0; i < n; ++i)
    {
        if (res.labels[i] != unvisited)
            continue;
        if (!is_core(i))
        {
            res.labels[i] = noise_label;
            continue;
        }
        const int id = res.n_clusters++;
        res.labels[i] = id;
        std::deque<std::size_t> frontier(neighbours[i].begin(), neighbours[i].end());
        while (!frontier.empty())
        {
            const std::size_t q = frontier.front();
            frontier.pop_front();
            if (res.labels[q] == noise_label)
                res.labels[q] = id;
            if (res.labels[q] != unvisited)
                continue;
            res.labels[q] = id;
            if (is_core(q))
                frontier.insert(frontier.end(), neighbours[q].begin(), neighbours[q].end());
        }
    }
    return res;
}

inline ClusterResult cluster_snapshot(const Snapshot &snap, double xi = 0.3, int zeta = 2)
{
    return dbscan(build_features(snap), xi, zeta);
}

} // namespace leochan
