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

#include <string>

namespace string_sausage {

enum class PotentialKind { kHard, kSoftIndicator };

/*!
 * Single-trap potential H, supported on the closed ball of radius a.
 *
 * Hard: H = infinity on the ball. SoftIndicator: H = height on the ball, which
 * satisfies the soft-trap lower-bound assumption with constant = height.
 */
struct PotentialSpec {
    PotentialKind kind = PotentialKind::kHard;
    double a = 0.3;
    double height = 1.0;

    void validate() const;
};

/*!
 * Physical and numerical parameters of one random-string model.
 *
 * The string lives on a circle of length J, takes values in R^d, and is
 * represented by K real Fourier mode pairs per coordinate. M is the number of
 * equally spaced evaluation points used for geometry and trap checks; dt is
 * the sampling interval (the mode integrator itself is exact).
 */
struct ModelParams {
    int d = 2;
    double J = 1.0;
    double nu = 1.0;
    double a = 0.3;
    PotentialKind potential = PotentialKind::kHard;
    double height = 1.0;
    int K = 64;
    int M = 256;
    double dt = 0.01;
    double T = 1.0;
    //! Upper limit for sum_{k>K} 1/(4 pi^2 k^2), the neglected variance per mode pair.
    double tail_tolerance = 1e-3;

    //! Throws ConfigError on any violated invariant.
    void validate() const;

    PotentialSpec potential_spec() const { return {potential, a, height}; }
    //! Number of sampling steps to reach T (the last one may be shorter than dt).
    long steps() const;
    //! Time of sample i, exactly i * dt except for the clamped final sample.
    double sample_time(long i) const;
    double dx() const { return J / M; }
};

//! Mean-reversion rate of Fourier mode k on a circle of length J: 2 pi^2 k^2 / J^2.
double mode_rate(int k, double J = 1.0);

//! sum_{k>K} 1/(4 pi^2 k^2).
double tail_variance(int K);

//! Lebesgue volume of the unit ball in R^d.
double unit_ball_volume(int d);

/*!
 * Typical sampling moduli of the string versus the trap radius.
 *
 * spatial = sqrt(dx (1 - dx/J)) is the standard deviation of a spatial
 * increment over one grid cell at stationarity; temporal = (2 dt / pi)^(1/4)
 * that of a time increment over one sampling step. The sampled geometry is
 * considered fine when both are below a/10.
 */
struct ResolutionReport {
    double spatial_modulus = 0;
    double temporal_modulus = 0;
    double threshold = 0;
    bool fine = false;
    std::string tag;
};

ResolutionReport resolution_report(ModelParams const& params);

} // namespace string_sausage
