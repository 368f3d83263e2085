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
#include "string_sausage/spectral_string.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "string_sausage/error.hpp"

namespace string_sausage {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

struct TrigTable {
    std::vector<double> cos;
    std::vector<double> sin;

    explicit TrigTable(int M) : cos(M), sin(M)
    {
        for (int m = 0; m < M; ++m) {
            double const arg = 2.0 * kPi * m / M;
            cos[m] = std::cos(arg);
            sin[m] = std::sin(arg);
        }
    }
};

void require_same_layout(StringState const& a, StringState const& b)
{
    if (a.d != b.d || a.K != b.K || a.J != b.J) {
        throw ConfigError("states have different dimension, mode cutoff or circle length");
    }
}

// 1 - e^{-x} without cancellation for small x.
double one_minus_exp(double x) { return -std::expm1(-x); }

} // namespace

StringState StringState::zero(int d, int K, double J, double t)
{
    if (d < 1 || K < 1) {
        throw ConfigError("state needs d >= 1 and K >= 1");
    }
    StringState s;
    s.t = t;
    s.J = J;
    s.d = d;
    s.K = K;
    s.coeffs.assign(static_cast<std::size_t>(d) * s.stride(), 0.0);
    return s;
}

void StringState::check() const
{
    if (d < 1 || K < 1 || coeffs.size() != static_cast<std::size_t>(d) * stride()) {
        throw ConfigError("malformed string state");
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            throw ConfigError("string state has a non-finite coefficient");
        }
    }
}

FieldSamples FieldSamples::zeros(int M, int d, double J)
{
    FieldSamples f;
    f.J = J;
    f.M = M;
    f.d = d;
    f.values.assign(static_cast<std::size_t>(M) * d, 0.0);
    return f;
}

void FieldSamples::check() const
{
    if (M < 1 || d < 1 || values.size() != static_cast<std::size_t>(M) * d) {
        throw ConfigError("malformed field samples");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ConfigError("field samples contain a non-finite value");
        }
    }
}

StringState init_from_profile(ModelParams const& params, FieldSamples const& profile)
{
    params.validate();
    profile.check();
    if (profile.M != params.M || profile.d != params.d || profile.J != params.J) {
        throw ConfigError("profile grid does not match the model grid");
    }
    int const M = params.M;
    TrigTable const trig(M);
    auto state = StringState::zero(params.d, params.K, params.J);
    for (int j = 0; j < params.d; ++j) {
        double mean = 0.0;
        for (int m = 0; m < M; ++m) {
            mean += profile.at(m, j);
        }
        state.b0(j) = mean / M;
        for (int k = 1; k <= params.K; ++k) {
            double cs = 0.0;
            double sn = 0.0;
            std::size_t idx = 0;
            for (int m = 0; m < M; ++m) {
                cs += profile.at(m, j) * trig.cos[idx];
                sn += profile.at(m, j) * trig.sin[idx];
                idx += k;
                if (idx >= static_cast<std::size_t>(M)) {
                    idx -= M;
                }
            }
            state.cos_coeff(j, k) = kSqrt2 * cs / M;
            state.sin_coeff(j, k) = kSqrt2 * sn / M;
        }
    }
    return state;
}

StringState evolve(StringState const& state, double delta, RandomStream& rng)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ConfigError("evolve requires delta > 0");
    }
    StringState next = state;
    next.t = state.t + delta;
    double const inv_j = 1.0 / state.J;
    double const sd0 = std::sqrt(delta * inv_j);
    for (int j = 0; j < state.d; ++j) {
        next.b0(j) += sd0 * rng.normal();
        for (int k = 1; k <= state.K; ++k) {
            double const rate = mode_rate(k, state.J);
            double const decay = std::exp(-rate * delta);
            double const sd = std::sqrt(inv_j * one_minus_exp(2.0 * rate * delta) / (2.0 * rate));
            next.cos_coeff(j, k) = decay * state.cos_coeff(j, k) + sd * rng.normal();
            next.sin_coeff(j, k) = decay * state.sin_coeff(j, k) + sd * rng.normal();
        }
    }
    return next;
}

StringState evolve_mean(StringState const& state, double delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ConfigError("evolve requires delta > 0");
    }
    StringState next = heat_convolve(state, delta);
    next.t = state.t + delta;
    return next;
}

FieldSamples evaluate(StringState const& state, int M)
{
    if (M < 1) {
        throw ConfigError("evaluation grid must have at least one point");
    }
    TrigTable const trig(M);
    auto out = FieldSamples::zeros(M, state.d, state.J);
    std::vector<double> cs(state.K + 1);
    std::vector<double> sn(state.K + 1);
    for (int j = 0; j < state.d; ++j) {
        for (int k = 1; k <= state.K; ++k) {
            cs[k] = kSqrt2 * state.cos_coeff(j, k);
            sn[k] = kSqrt2 * state.sin_coeff(j, k);
        }
        double const b0 = state.b0(j);
        for (int m = 0; m < M; ++m) {
            double sum = b0;
            std::size_t idx = 0;
            for (int k = 1; k <= state.K; ++k) {
                idx += m;
                if (idx >= static_cast<std::size_t>(M)) {
                    idx -= M;
                }
                sum += cs[k] * trig.cos[idx] + sn[k] * trig.sin[idx];
            }
            out.at(m, j) = sum;
        }
    }
    return out;
}

StringState heat_convolve(StringState const& state, double delta)
{
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ConfigError("heat_convolve requires delta >= 0");
    }
    StringState out = state;
    for (int k = 1; k <= state.K; ++k) {
        double const decay = std::exp(-mode_rate(k, state.J) * delta);
        for (int j = 0; j < state.d; ++j) {
            out.cos_coeff(j, k) *= decay;
            out.sin_coeff(j, k) *= decay;
        }
    }
    return out;
}

FieldSamples heat_convolve(FieldSamples const& samples, double delta)
{
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw ConfigError("heat_convolve requires delta >= 0");
    }
    samples.check();
    if (delta == 0.0) {
        return samples;
    }
    int const M = samples.M;
    int const half = M / 2;
    TrigTable const trig(M);
    auto out = FieldSamples::zeros(M, samples.d, samples.J);
    std::vector<double> A(half + 1);
    std::vector<double> B(half + 1);
    for (int j = 0; j < samples.d; ++j) {
        for (int k = 0; k <= half; ++k) {
            double a = 0.0;
            double b = 0.0;
            std::size_t idx = 0;
            for (int m = 0; m < M; ++m) {
                a += samples.at(m, j) * trig.cos[idx];
                b += samples.at(m, j) * trig.sin[idx];
                idx += k;
                if (idx >= static_cast<std::size_t>(M)) {
                    idx -= M;
                }
            }
            double const decay = std::exp(-mode_rate(k, samples.J) * delta);
            A[k] = a * decay;
            B[k] = b * decay;
        }
        for (int m = 0; m < M; ++m) {
            double sum = A[0];
            std::size_t idx = 0;
            for (int k = 1; k <= half; ++k) {
                idx += m;
                if (idx >= static_cast<std::size_t>(M)) {
                    idx -= M;
                }
                bool const nyquist = (2 * k == M);
                double const weight = nyquist ? 1.0 : 2.0;
                sum += weight * (A[k] * trig.cos[idx] + (nyquist ? 0.0 : B[k] * trig.sin[idx]));
            }
            out.at(m, j) = sum / M;
        }
    }
    return out;
}

StringState noise_segment_coeffs(StringState const& earlier, StringState const& later)
{
    require_same_layout(earlier, later);
    if (!(earlier.t < later.t)) {
        throw ConfigError("noise segment needs the earlier state strictly before the later one");
    }
    StringState seg = heat_convolve(earlier, later.t - earlier.t);
    for (std::size_t i = 0; i < seg.coeffs.size(); ++i) {
        seg.coeffs[i] = later.coeffs[i] - seg.coeffs[i];
    }
    seg.t = later.t;
    return seg;
}

FieldSamples noise_segment(StringState const& earlier, StringState const& later, int M)
{
    return evaluate(noise_segment_coeffs(earlier, later), M);
}

FieldSamples sample_stationary_field(ModelParams const& params, RandomStream& rng)
{
    params.validate();
    auto state = StringState::zero(params.d, params.K, params.J);
    for (int j = 0; j < params.d; ++j) {
        for (int k = 1; k <= params.K; ++k) {
            double const sd = std::sqrt(1.0 / (2.0 * params.J * mode_rate(k, params.J)));
            state.cos_coeff(j, k) = sd * rng.normal();
            state.sin_coeff(j, k) = sd * rng.normal();
        }
    }
    auto field = evaluate(state, params.M);
    std::vector<double> const anchor(field.values.begin(), field.values.begin() + params.d);
    for (int m = 0; m < params.M; ++m) {
        for (int j = 0; j < params.d; ++j) {
            field.at(m, j) -= anchor[j];
        }
    }
    return field;
}

double variance_series(VarianceKind kind, double t, double x, double y, int K)
{
    if (!(t >= 0.0)) {
        throw ConfigError("variance series needs t >= 0");
    }
    if (K < 1) {
        throw ConfigError("variance series needs K >= 1");
    }
    double const h = x - y;
    double sum = 0.0;
    // Smallest terms first.
    for (int k = K; k >= 1; --k) {
        double const rate = mode_rate(k);
        double const chord = 2.0 - 2.0 * std::cos(2.0 * kPi * k * h);
        switch (kind) {
        case VarianceKind::kU:
            sum += one_minus_exp(2.0 * rate * t) / rate;
            break;
        case VarianceKind::kN2:
            sum += std::exp(-2.0 * rate * t) / rate * chord;
            break;
        case VarianceKind::kN1Diff:
            sum += chord / rate;
            break;
        case VarianceKind::kNDiff:
            sum += one_minus_exp(2.0 * rate * t) / rate * chord;
            break;
        default:
            throw ConfigError("unknown variance kind");
        }
    }
    return kind == VarianceKind::kU ? t + sum : sum;
}

double variance_series_tail_bound(VarianceKind kind, double t, int K)
{
    // sum_{k>K} 1/l_k <= 1 / (2 pi^2 K)
    double const base = 1.0 / (2.0 * kPi * kPi * K);
    switch (kind) {
    case VarianceKind::kU:
        return base;
    case VarianceKind::kN2:
        return 4.0 * base * std::exp(-2.0 * mode_rate(K + 1) * t);
    case VarianceKind::kN1Diff:
    case VarianceKind::kNDiff:
        return 4.0 * base;
    }
    throw ConfigError("unknown variance kind");
}

FieldSamples Trajectory::slice(std::size_t i) const
{
    auto f = FieldSamples::zeros(M, d, J);
    auto const n = static_cast<std::size_t>(M) * d;
    std::copy(values.begin() + i * n, values.begin() + (i + 1) * n, f.values.begin());
    return f;
}

Trajectory simulate_trajectory(ModelParams const& params, StringState const& initial,
                               std::uint64_t seed, std::uint64_t replica)
{
    params.validate();
    initial.check();
    if (initial.d != params.d || initial.K != params.K || initial.J != params.J) {
        throw ConfigError("initial state does not match the model parameters");
    }
    Trajectory traj;
    traj.d = params.d;
    traj.M = params.M;
    traj.J = params.J;
    auto const n = static_cast<std::size_t>(params.steps()) + 1;
    traj.times.reserve(n);
    traj.values.reserve(n * params.M * params.d);
    for_each_sample(params, initial, seed, replica, [&](StringState const& s) {
        auto const f = evaluate(s, params.M);
        traj.times.push_back(s.t);
        traj.values.insert(traj.values.end(), f.values.begin(), f.values.end());
    });
    return traj;
}

} // namespace string_sausage
