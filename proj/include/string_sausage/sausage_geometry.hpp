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
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "spatial_index.hpp"
#include "spectral_string.hpp"
#include "string_statistics.hpp"

namespace string_sausage {

/*!
 * Finite set of points in R^d that stands in for a continuous object
 * (space-time sampled string, fixed-time string, or center-of-mass path).
 * times is optional; when present it holds one time per point.
 */
struct PointCloud {
    int d = 0;
    std::vector<double> points;
    std::vector<double> times;

    std::size_t size() const { return d == 0 ? 0 : points.size() / d; }
    std::span<double const> point(std::size_t i) const { return {points.data() + i * d, static_cast<std::size_t>(d)}; }
    void append(std::span<double const> z, double t = 0.0);
    //! Throws ConfigError if empty, mis-shaped or not finite.
    void check() const;

    static PointCloud from_samples(FieldSamples const& samples, double t = 0.0);
    //! Every grid point at every sample time.
    static PointCloud from_trajectory(Trajectory const& traj);
    //! Center-of-mass positions.
    static PointCloud from_path(PathRecord const& path);
};

enum class SausageMethod { kHitOrMiss, kVoxel };
char const* to_string(SausageMethod method);

struct SausageEstimate {
    double volume = 0.0;
    //! Monte Carlo standard error; zero for the voxel method.
    double std_error = 0.0;
    //! Voxel only: half-width of the bracket [inner, outer] that holds the exact volume.
    double discretization = 0.0;
    long n_samples = 0;
    SausageMethod method = SausageMethod::kHitOrMiss;
    double box_volume = 0.0;
    //! Set when a resolution guard failed and the caller asked to proceed anyway.
    bool coarse = false;
};

Box bounding_box(PointCloud const& cloud, double pad);

//! Index over the cloud with cell size matched to the query radius.
GridIndex cloud_index(PointCloud const& cloud, double radius);

/*!
 * Volume of the union of closed balls B(p, radius) over the cloud points.
 *
 * Uniform samples in the bounding box padded by radius; the estimate is box
 * volume times the hit fraction and is unbiased for the sampled cloud.
 */
SausageEstimate sausage_volume_hit_or_miss(PointCloud const& cloud, double radius, long n_mc,
                                           RandomStream& rng);

/*!
 * Deterministic estimate: voxels of side voxel_size whose centers lie within
 * radius of the cloud. Also counts voxels entirely inside and possibly
 * touching the union, which bracket the exact volume.
 */
SausageEstimate sausage_volume_voxel(PointCloud const& cloud, double radius, double voxel_size);

/*!
 * Sausage around a sampled path, with the temporal guard
 * sqrt(max time step) <= radius / 10. A violated guard throws ResolutionError
 * unless allow_coarse is set, in which case the estimate is flagged.
 */
SausageEstimate wiener_sausage_volume(PointCloud const& path, double radius, long n_mc, RandomStream& rng,
                                      bool allow_coarse = false);

//! Expected Wiener sausage volume in d = 3: 2 pi r t + 4 r^2 sqrt(2 pi t) + 4 pi r^3 / 3.
double spitzer_volume_3d(double r, double t);

struct BoxCountResult {
    std::vector<double> scales;
    std::vector<long> counts;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

//! Number of cubes of side eps (aligned with the origin) that hold a cloud point.
long occupied_cubes(PointCloud const& cloud, double eps);

/*!
 * Least-squares slope of log N(eps) against log(1/eps). Scales must be
 * strictly decreasing, at least four, and span at least 1.5 decades.
 */
BoxCountResult box_counting_dimension(PointCloud const& cloud, std::span<double const> scales);

/*!
 * Lower bound on the sausage volume from a cube partition of side a: a greedy
 * set of occupied cubes, no two adjacent, carries points at distance >= a from
 * each other, so balls of radius a/2 around them are disjoint.
 */
struct CubeCountBound {
    long occupied = 0;
    long separated = 0;
    double volume_lower_bound = 0.0;
};
CubeCountBound cube_counting_bound(PointCloud const& cloud, double a);

} // namespace string_sausage
