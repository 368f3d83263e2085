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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spectral_string.hpp"

namespace string_sausage {

//! Center of mass and radius of one replica at its sample times.
struct PathRecord {
    int d = 0;
    std::vector<double> times;
    std::vector<double> X; //!< times.size() * d, time-major
    std::vector<double> R;

    std::size_t size() const { return times.size(); }
    std::span<double const> position(std::size_t i) const { return {X.data() + i * d, static_cast<std::size_t>(d)}; }
    //! Throws ConfigError unless lengths agree, times increase strictly and R >= 0.
    void check() const;
};

//! Spatial mean of each coordinate; exactly the mode-0 coefficients.
std::vector<double> center_of_mass(StringState const& state);

/*!
 * Largest distance between the string and its center of mass over M grid
 * points. A grid maximum, hence a lower bound on the continuum supremum.
 */
double radius(StringState const& state, int M);

/*!
 * Diameter of the sampled point set, sup |f(x) - f(y)| over grid pairs.
 * Exact for the samples: max - min when d = 1, all pairs otherwise.
 */
double range_of(FieldSamples const& samples);

//! Same as range_of for a flat array of d-dimensional points.
double point_set_diameter(std::span<double const> points, int d);

//! Record X_t and R_t at every sample time of one simulated replica.
PathRecord record_path(ModelParams const& params, StringState const& initial, std::uint64_t seed,
                       std::uint64_t replica);

struct ReplicaEndpoint {
    std::vector<double> X;
    double R = 0.0;
};

/*!
 * Sample correlation between each center-of-mass coordinate and the radius.
 *
 * Passes when every |rho| <= 4 / sqrt(N). A factor with zero sample variance
 * has correlation 0 by convention.
 */
struct IndependenceReport {
    std::vector<double> correlations;
    double threshold = 0.0;
    std::size_t n = 0;
    bool pass = false;
};

IndependenceReport independence_test(std::span<ReplicaEndpoint const> replicas);

double pearson_correlation(std::span<double const> x, std::span<double const> y);

double normal_cdf(double z);

//! Kolmogorov-Smirnov distance between the empirical law of \p samples and \p cdf.
double ks_statistic(std::vector<double> samples, std::function<double(double)> const& cdf);

//! Asymptotic two-sided critical value of the KS statistic at level 1%.
double ks_critical_1pct(std::size_t n);

/*!
 * Checks that increments over a lag delta look like N(0, delta): mean and
 * sample variance within 4 standard errors, and the KS distance of the
 * normalized increments to N(0,1) below the 1% critical value.
 */
struct BrownianIncrementReport {
    std::size_t n = 0;
    double mean = 0.0;
    double mean_stderr = 0.0;
    double variance = 0.0;
    double variance_stderr = 0.0;
    double ks = 0.0;
    double ks_critical = 0.0;
    bool mean_ok = false;
    bool variance_ok = false;
    bool ks_ok = false;
    bool pass() const { return mean_ok && variance_ok && ks_ok; }
};

BrownianIncrementReport brownian_increment_test(std::span<double const> increments, double delta);

} // namespace string_sausage
