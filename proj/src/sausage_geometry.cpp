// SPDX-License-Identifier: Apache-2.0
//
// string-sausage: random strings moving through Poisson trap fields
// Copyright (C) 2026 The string-sausage authors
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
#include "string_sausage/sausage_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "string_sausage/error.hpp"
#include "string_sausage/model.hpp"

namespace string_sausage {

void PointCloud::append(std::span<double const> z, double t)
{
    if (d == 0) {
        d = static_cast<int>(z.size());
    }
    if (static_cast<int>(z.size()) != d) {
        throw ConfigError("point dimension does not match the cloud");
    }
    points.insert(points.end(), z.begin(), z.end());
    times.push_back(t);
}

void PointCloud::check() const
{
    if (d < 1 || points.empty() || points.size() % d != 0) {
        throw ConfigError("point cloud must be nonempty with d >= 1");
    }
    if (!times.empty() && times.size() != size()) {
        throw ConfigError("point cloud times must match the number of points");
    }
    for (double v : points) {
        if (!std::isfinite(v)) {
            throw ConfigError("point cloud coordinates must be finite");
        }
    }
}

PointCloud PointCloud::from_samples(FieldSamples const& samples, double t)
{
    samples.check();
    PointCloud cloud;
    cloud.d = samples.d;
    cloud.points = samples.values;
    cloud.times.assign(samples.M, t);
    return cloud;
}

PointCloud PointCloud::from_trajectory(Trajectory const& traj)
{
    PointCloud cloud;
    cloud.d = traj.d;
    cloud.points = traj.values;
    cloud.times.reserve(traj.samples() * traj.M);
    for (double t : traj.times) {
        cloud.times.insert(cloud.times.end(), traj.M, t);
    }
    return cloud;
}

PointCloud PointCloud::from_path(PathRecord const& path)
{
    path.check();
    PointCloud cloud;
    cloud.d = path.d;
    cloud.points = path.X;
    cloud.times = path.times;
    return cloud;
}

char const* to_string(SausageMethod method)
{
    return method == SausageMethod::kVoxel ? "voxel" : "hit_or_miss";
}

Box bounding_box(PointCloud const& cloud, double pad)
{
    cloud.check();
    if (!(pad >= 0.0)) {
        throw ConfigError("bounding box padding must be >= 0");
    }
    int const d = cloud.d;
    Box box{std::vector<double>(cloud.points.begin(), cloud.points.begin() + d),
            std::vector<double>(cloud.points.begin(), cloud.points.begin() + d)};
    for (std::size_t p = 1; p < cloud.size(); ++p) {
        for (int j = 0; j < d; ++j) {
            double const v = cloud.points[p * d + j];
            box.lower[j] = std::min(box.lower[j], v);
            box.upper[j] = std::max(box.upper[j], v);
        }
    }
    for (int j = 0; j < d; ++j) {
        box.lower[j] -= pad;
        box.upper[j] += pad;
    }
    return box;
}

GridIndex cloud_index(PointCloud const& cloud, double radius)
{
    auto const box = bounding_box(cloud, radius);
    return GridIndex(cloud.d, cloud.points, box, radius);
}

SausageEstimate sausage_volume_hit_or_miss(PointCloud const& cloud, double radius, long n_mc, RandomStream& rng)
{
    if (!(radius > 0.0)) {
        throw ConfigError("sausage radius must be > 0");
    }
    if (n_mc < 1000) {
        throw ConfigError("hit-or-miss needs at least 1000 samples");
    }
    auto const box = bounding_box(cloud, radius);
    GridIndex const index(cloud.d, cloud.points, box, radius);
    int const d = cloud.d;
    std::vector<double> z(d);
    long hits = 0;
    for (long i = 0; i < n_mc; ++i) {
        for (int j = 0; j < d; ++j) {
            z[j] = box.lower[j] + rng.uniform() * (box.upper[j] - box.lower[j]);
        }
        hits += index.any_within(z, radius) ? 1 : 0;
    }
    double const vol = box.volume();
    double const p = static_cast<double>(hits) / n_mc;
    SausageEstimate est;
    est.method = SausageMethod::kHitOrMiss;
    est.box_volume = vol;
    est.n_samples = n_mc;
    est.volume = vol * p;
    est.std_error = vol * std::sqrt(p * (1.0 - p) / n_mc);
    return est;
}

SausageEstimate sausage_volume_voxel(PointCloud const& cloud, double radius, double voxel_size)
{
    cloud.check();
    if (!(radius > 0.0)) {
        throw ConfigError("sausage radius must be > 0");
    }
    if (cloud.d > 3) {
        throw ConfigError("voxel estimator supports d <= 3");
    }
    if (!(voxel_size > 0.0) || voxel_size > radius / 4.0) {
        throw ConfigError("voxel size must be in (0, radius/4]");
    }
    int const d = cloud.d;
    auto const box = bounding_box(cloud, radius);
    GridIndex const index(d, cloud.points, box, radius);
    std::vector<long> dims(d);
    double total = 1.0;
    for (int j = 0; j < d; ++j) {
        dims[j] = static_cast<long>(std::ceil((box.upper[j] - box.lower[j]) / voxel_size));
        total *= static_cast<double>(dims[j]);
    }
    if (total > 2e8) {
        throw ConfigError("voxel grid too large; raise the voxel size");
    }
    double const half_diag = 0.5 * voxel_size * std::sqrt(static_cast<double>(d));
    long center_in = 0;
    long inner = 0;
    long outer = 0;
    std::vector<long> idx(d, 0);
    std::vector<double> z(d);
    auto const n = static_cast<long>(total);
    for (long v = 0; v < n; ++v) {
        for (int j = 0; j < d; ++j) {
            z[j] = box.lower[j] + (static_cast<double>(idx[j]) + 0.5) * voxel_size;
        }
        double const dist = index.nearest_distance(z);
        center_in += dist <= radius ? 1 : 0;
        inner += dist <= radius - half_diag ? 1 : 0;
        outer += dist <= radius + half_diag ? 1 : 0;
        for (int j = 0; j < d; ++j) {
            if (++idx[j] < dims[j]) {
                break;
            }
            idx[j] = 0;
        }
    }
    double const cell = std::pow(voxel_size, d);
    SausageEstimate est;
    est.method = SausageMethod::kVoxel;
    est.box_volume = total * cell;
    est.n_samples = n;
    est.volume = static_cast<double>(center_in) * cell;
    est.discretization = 0.5 * static_cast<double>(outer - inner) * cell;
    return est;
}

SausageEstimate wiener_sausage_volume(PointCloud const& path, double radius, long n_mc, RandomStream& rng,
                                      bool allow_coarse)
{
    path.check();
    double max_step = 0.0;
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        max_step = std::max(max_step, path.times[i] - path.times[i - 1]);
    }
    bool const coarse = std::sqrt(max_step) > radius / 10.0;
    if (coarse && !allow_coarse) {
        throw ResolutionError("path time step too coarse for the sausage radius: need sqrt(dt) <= radius/10");
    }
    auto est = sausage_volume_hit_or_miss(path, radius, n_mc, rng);
    est.coarse = coarse;
    return est;
}

double spitzer_volume_3d(double r, double t)
{
    double const pi = std::numbers::pi;
    return 2.0 * pi * r * t + 4.0 * r * r * std::sqrt(2.0 * pi * t) + 4.0 * pi * r * r * r / 3.0;
}

namespace {

// Integer cube coordinates of every point, sorted and deduplicated, flat d-tuples.
std::vector<std::int64_t> cube_keys(PointCloud const& cloud, double eps)
{
    int const d = cloud.d;
    std::size_t const n = cloud.size();
    std::vector<std::int64_t> keys(n * d);
    for (std::size_t i = 0; i < n * d; ++i) {
        keys[i] = static_cast<std::int64_t>(std::floor(cloud.points[i] / eps));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(keys.begin() + a * d, keys.begin() + (a + 1) * d,
                                            keys.begin() + b * d, keys.begin() + (b + 1) * d);
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<std::int64_t> out;
    out.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        auto const first = keys.begin() + order[i] * d;
        if (i > 0 && std::equal(first, first + d, out.end() - d)) {
            continue;
        }
        out.insert(out.end(), first, first + d);
    }
    return out;
}

} // namespace

long occupied_cubes(PointCloud const& cloud, double eps)
{
    cloud.check();
    if (!(eps > 0.0)) {
        throw ConfigError("cube side must be > 0");
    }
    return static_cast<long>(cube_keys(cloud, eps).size() / cloud.d);
}

BoxCountResult box_counting_dimension(PointCloud const& cloud, std::span<double const> scales)
{
    cloud.check();
    if (scales.size() < 4) {
        throw ConfigError("box counting needs at least 4 scales");
    }
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || (i > 0 && !(scales[i] < scales[i - 1]))) {
            throw ConfigError("box counting scales must be positive and strictly decreasing");
        }
    }
    if (std::log10(scales.front() / scales.back()) < 1.5 - 1e-12) {
        throw ConfigError("box counting scales must span at least 1.5 decades");
    }
    BoxCountResult res;
    res.scales.assign(scales.begin(), scales.end());
    std::size_t const n = scales.size();
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        res.counts.push_back(occupied_cubes(cloud, scales[i]));
        xs[i] = -std::log(scales[i]);
        ys[i] = std::log(static_cast<double>(res.counts[i]));
    }
    double const mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double const my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double const r = ys[i] - res.intercept - res.slope * xs[i];
        rss += r * r;
    }
    res.slope_stderr = std::sqrt(rss / (n - 2.0) / sxx);
    return res;
}

CubeCountBound cube_counting_bound(PointCloud const& cloud, double a)
{
    cloud.check();
    if (!(a > 0.0)) {
        throw ConfigError("cube side must be > 0");
    }
    int const d = cloud.d;
    auto const keys = cube_keys(cloud, a);
    std::size_t const n = keys.size() / d;
    // Greedy in lexicographic order; a cube is taken unless a taken cube is a neighbour.
    std::vector<std::size_t> taken;
    auto adjacent = [&](std::size_t p, std::size_t q) {
        for (int j = 0; j < d; ++j) {
            if (std::abs(keys[p * d + j] - keys[q * d + j]) > 1) {
                return false;
            }
        }
        return true;
    };
    for (std::size_t p = 0; p < n; ++p) {
        bool ok = true;
        // Taken cubes are sorted; only those whose first key is within 1 can be neighbours.
        for (auto it = taken.rbegin(); it != taken.rend(); ++it) {
            if (keys[p * d] - keys[*it * d] > 1) {
                break;
            }
            if (adjacent(p, *it)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            taken.push_back(p);
        }
    }
    CubeCountBound out;
    out.occupied = static_cast<long>(n);
    out.separated = static_cast<long>(taken.size());
    out.volume_lower_bound = static_cast<double>(taken.size()) * unit_ball_volume(d) * std::pow(0.5 * a, d);
    return out;
}

} // namespace string_sausage
