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
#include <span>
#include <vector>

#include "model.hpp"
#include "rng.hpp"

namespace string_sausage {

/*!
 * Spectral state of the random string at one time.
 *
 * For each coordinate j the string is
 *   u_j(t,x) = b0 + sum_{k=1..K} sqrt(2) [b_k cos(2 pi k x / J) + c_k sin(2 pi k x / J)],
 * so b0 is the spatial mean (center of mass). Coefficients are stored in d
 * blocks of 2K+1 values: b0, b1, c1, b2, c2, ..., bK, cK.
 */
struct StringState {
    double t = 0.0;
    double J = 1.0;
    int d = 1;
    int K = 1;
    std::vector<double> coeffs;

    static StringState zero(int d, int K, double J = 1.0, double t = 0.0);

    std::size_t stride() const { return 2 * static_cast<std::size_t>(K) + 1; }
    double& b0(int j) { return coeffs[j * stride()]; }
    double b0(int j) const { return coeffs[j * stride()]; }
    double& cos_coeff(int j, int k) { return coeffs[j * stride() + 2 * k - 1]; }
    double cos_coeff(int j, int k) const { return coeffs[j * stride() + 2 * k - 1]; }
    double& sin_coeff(int j, int k) { return coeffs[j * stride() + 2 * k]; }
    double sin_coeff(int j, int k) const { return coeffs[j * stride() + 2 * k]; }

    //! Throws ConfigError if the layout is inconsistent or a coefficient is not finite.
    void check() const;
};

/*!
 * Values of an R^d-valued function on M equally spaced points x_m = m J / M
 * of the circle [0, J). Stored point-major: values[m * d + j].
 */
struct FieldSamples {
    double J = 1.0;
    int M = 0;
    int d = 0;
    std::vector<double> values;

    static FieldSamples zeros(int M, int d, double J = 1.0);

    double x(int m) const { return J * m / M; }
    std::span<double const> point(int m) const
    {
        return {values.data() + static_cast<std::size_t>(m) * d, static_cast<std::size_t>(d)};
    }
    double& at(int m, int j) { return values[static_cast<std::size_t>(m) * d + j]; }
    double at(int m, int j) const { return values[static_cast<std::size_t>(m) * d + j]; }

    void check() const;
};

//! Truncated discrete Fourier transform of a profile sampled on the params.M grid.
StringState init_from_profile(ModelParams const& params, FieldSamples const& profile);

/*!
 * Advance every retained mode exactly by \p delta.
 *
 * Mode 0 gains N(0, delta / J); mode k >= 1 coefficients follow an
 * Ornstein-Uhlenbeck transition with rate lambda_k = 2 pi^2 k^2 / J^2 and
 * noise intensity 1/J. Draws are taken in (coordinate, slot) order from
 * \p rng, so one stream per (replica, step) fixes every draw.
 */
StringState evolve(StringState const& state, double delta, RandomStream& rng);

//! Deterministic part of evolve (noise injection switched off).
StringState evolve_mean(StringState const& state, double delta);

//! Evaluate the string on M grid points.
FieldSamples evaluate(StringState const& state, int M);

//! Heat semigroup: mode k damped by exp(-lambda_k delta); time stamp unchanged.
StringState heat_convolve(StringState const& state, double delta);

//! Heat semigroup on sampled data via the grid DFT (all M frequencies, incl. Nyquist).
FieldSamples heat_convolve(FieldSamples const& samples, double delta);

//! Coefficients of u(t) - G_{t-s} * u(s) for two states of one trajectory.
StringState noise_segment_coeffs(StringState const& earlier, StringState const& later);

//! u(t) - G_{t-s} * u(s) on M grid points.
FieldSamples noise_segment(StringState const& earlier, StringState const& later, int M);

/*!
 * One draw of the stationary noise field anchored at x = 0.
 *
 * Mode 0 is absent and each mode coefficient is N(0, 1/(2 J lambda_k)); the
 * field is shifted so its value at grid point 0 is exactly 0.
 */
FieldSamples sample_stationary_field(ModelParams const& params, RandomStream& rng);

/*!
 * Per-coordinate variance series on the unit circle, truncated at K modes.
 *
 * With h = x - y and |1 - e^{2 pi i k h}|^2 = 2 - 2 cos(2 pi k h):
 *   kU      Var u_j(t,x), zero data:       t + sum (1 - e^{-2 l_k t}) / l_k
 *   kN2     Var of transient increment:    sum e^{-2 l_k t} / l_k |1 - e^{2 pi i k h}|^2
 *   kN1Diff Var of stationary increment:   sum 1 / l_k |1 - e^{2 pi i k h}|^2
 *   kNDiff  Var of N(0,t;x) - N(0,t;y):   sum (1 - e^{-2 l_k t}) / l_k |...|^2
 * Each real mode pair contributes twice the single complex-mode term, which
 * is why 1/l_k appears rather than 1/(2 l_k).
 */
enum class VarianceKind { kU, kN2, kN1Diff, kNDiff };

double variance_series(VarianceKind kind, double t, double x, double y, int K);

//! Upper bound on the neglected terms k > K of variance_series.
double variance_series_tail_bound(VarianceKind kind, double t, int K);

//! All sampled snapshots of one replica on the params.M grid.
struct Trajectory {
    int d = 0;
    int M = 0;
    double J = 1.0;
    std::vector<double> times;
    std::vector<double> values;

    std::size_t samples() const { return times.size(); }
    std::size_t points_per_sample() const { return static_cast<std::size_t>(M); }
    FieldSamples slice(std::size_t i) const;
};

/*!
 * Drive one replica from \p initial through all sample times of \p params.
 *
 * fn(state) is called for the initial state and after each sampling step.
 * Step i draws from noise_stream(seed, replica, i).
 */
template<class Fn>
void for_each_sample(ModelParams const& params, StringState initial, std::uint64_t seed,
                     std::uint64_t replica, Fn&& fn)
{
    StringState state = std::move(initial);
    fn(static_cast<StringState const&>(state));
    long const n = params.steps();
    for (long i = 1; i <= n; ++i) {
        double const delta = params.sample_time(i) - params.sample_time(i - 1);
        auto rng = noise_stream(seed, replica, static_cast<std::uint64_t>(i));
        state = evolve(state, delta, rng);
        state.t = params.sample_time(i);
        fn(static_cast<StringState const&>(state));
    }
}

Trajectory simulate_trajectory(ModelParams const& params, StringState const& initial,
                               std::uint64_t seed, std::uint64_t replica);

} // namespace string_sausage
