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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "string_sausage/error.hpp"
#include "string_sausage/spectral_string.hpp"

using namespace string_sausage;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams small_params(int d = 2, int K = 8, int M = 32)
{
    ModelParams p;
    p.d = d;
    p.K = K;
    p.M = M;
    p.tail_tolerance = 0.1;
    return p;
}

StringState random_state(int d, int K, std::uint64_t seed, double J = 1.0)
{
    auto s = StringState::zero(d, K, J);
    RandomStream rng(seed, 99);
    for (double& c : s.coeffs) {
        c = rng.normal();
    }
    return s;
}

} // namespace

TEST_CASE("model parameter invariants")
{
    auto p = small_params();
    CHECK_NOTHROW(p.validate());
    p.M = 2 * p.K;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small_params();
    p.J = 0.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small_params();
    p.a = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = small_params();
    p.tail_tolerance = 1e-4;
    CHECK_THROWS_AS(p.validate(), ConfigError); // K = 8 leaves ~3e-3
    ModelParams defaults;
    CHECK_NOTHROW(defaults.validate());
}

TEST_CASE("tail variance matches a direct long sum")
{
    for (int K : {1, 8, 64}) {
        long double s = 0.0L;
        for (long k = 2000000; k > K; --k) {
            s += 1.0L / (4.0L * kPi * kPi * static_cast<long double>(k) * k);
        }
        s += 1.0L / (4.0L * kPi * kPi * 2000000.0L); // integral remainder
        CHECK(tail_variance(K) == doctest::Approx(static_cast<double>(s)).epsilon(1e-6));
    }
    CHECK(tail_variance(64) > 1e-4);
}

TEST_CASE("sample times reach T exactly")
{
    auto p = small_params();
    p.T = 1.0;
    p.dt = 0.3;
    CHECK(p.steps() == 4);
    CHECK(p.sample_time(3) == doctest::Approx(0.9));
    CHECK(p.sample_time(4) == 1.0);
    p.dt = 0.1;
    CHECK(p.steps() == 10);
    CHECK(p.sample_time(10) == 1.0);
}

TEST_CASE("profile transform round trip and Parseval")
{
    auto p = small_params(3, 8, 40);
    auto const s = random_state(3, 8, 1);
    auto const f = evaluate(s, p.M);
    auto const back = init_from_profile(p, f);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        CHECK(back.coeffs[i] == doctest::Approx(s.coeffs[i]).epsilon(1e-12));
    }
    for (int j = 0; j < 3; ++j) {
        double quad = 0.0;
        for (int m = 0; m < p.M; ++m) {
            quad += std::pow(f.at(m, j) - s.b0(j), 2) / p.M;
        }
        double coef = 0.0;
        for (int k = 1; k <= 8; ++k) {
            coef += s.cos_coeff(j, k) * s.cos_coeff(j, k) + s.sin_coeff(j, k) * s.sin_coeff(j, k);
        }
        CHECK(quad == doctest::Approx(coef).epsilon(1e-12));
    }
}

TEST_CASE("evaluation matches the defining series pointwise")
{
    auto const s = random_state(2, 5, 3);
    int const M = 17;
    auto const f = evaluate(s, M);
    for (int m = 0; m < M; ++m) {
        double const x = static_cast<double>(m) / M;
        for (int j = 0; j < 2; ++j) {
            double u = s.b0(j);
            for (int k = 1; k <= 5; ++k) {
                u += std::sqrt(2.0) * (s.cos_coeff(j, k) * std::cos(2 * kPi * k * x) +
                                       s.sin_coeff(j, k) * std::sin(2 * kPi * k * x));
            }
            CHECK(f.at(m, j) == doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("heat semigroup agrees on coefficients and on grid samples")
{
    auto const s = random_state(2, 8, 5);
    int const M = 32;
    for (double t : {0.0, 0.01, 0.1, 1.0}) {
        auto const a = evaluate(heat_convolve(s, t), M);
        auto const b = heat_convolve(evaluate(s, M), t);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("heat semigroup property and mean conservation")
{
    auto const s = random_state(1, 8, 6);
    auto const once = heat_convolve(s, 0.3);
    auto const twice = heat_convolve(heat_convolve(s, 0.1), 0.2);
    for (std::size_t i = 0; i < once.coeffs.size(); ++i) {
        CHECK(twice.coeffs[i] == doctest::Approx(once.coeffs[i]).epsilon(1e-12));
    }
    CHECK(once.b0(0) == s.b0(0));
}

TEST_CASE("noise segment is exactly the injected noise")
{
    auto const s = random_state(2, 8, 7);
    RandomStream rng(11, 0);
    auto const next = evolve(s, 0.05, rng);
    auto const mean = evolve_mean(s, 0.05);
    auto const seg = noise_segment_coeffs(s, next);
    for (std::size_t i = 0; i < seg.coeffs.size(); ++i) {
        CHECK(seg.coeffs[i] == doctest::Approx(next.coeffs[i] - mean.coeffs[i]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(noise_segment_coeffs(next, s), ConfigError);
}

TEST_CASE("Ornstein-Uhlenbeck transition moments")
{
    // Closed form: mean e^{-l D} c, variance (1 - e^{-2 l D}) / (2 l); mode 0 variance D.
    double const delta = 0.02;
    int const n = 20000;
    int const K = 3;
    auto start = StringState::zero(1, K);
    for (int k = 1; k <= K; ++k) {
        start.cos_coeff(0, k) = 1.0;
    }
    std::vector<double> sum(2 * K + 1, 0.0);
    std::vector<double> sum2(2 * K + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        RandomStream rng(21, static_cast<std::uint64_t>(i));
        auto const next = evolve(start, delta, rng);
        for (int c = 0; c < 2 * K + 1; ++c) {
            sum[c] += next.coeffs[c];
            sum2[c] += next.coeffs[c] * next.coeffs[c];
        }
    }
    for (int c = 0; c < 2 * K + 1; ++c) {
        int const k = (c + 1) / 2;
        double const lam = 2.0 * kPi * kPi * k * k;
        double const m = c == 0 ? 0.0 : (c % 2 == 1 ? std::exp(-lam * delta) : 0.0);
        double const v = c == 0 ? delta : (1.0 - std::exp(-2.0 * lam * delta)) / (2.0 * lam);
        double const mean = sum[c] / n;
        double const var = sum2[c] / n - mean * mean;
        CHECK(std::abs(mean - m) < 4.0 * std::sqrt(v / n));
        CHECK(std::abs(var - v) < 4.0 * v * std::sqrt(2.0 / n));
    }
}

TEST_CASE("mode rate on a circle of length J")
{
    CHECK(mode_rate(1) == doctest::Approx(2 * kPi * kPi));
    CHECK(mode_rate(3, 2.0) == doctest::Approx(2 * kPi * kPi * 9 / 4));
}

TEST_CASE("variance series closed forms")
{
    // Stationary increments: sum (2 - 2cos 2 pi k h) / (2 pi^2 k^2) = h (1 - h).
    for (double h : {0.5, 0.25, 0.1, 1.0 / 128}) {
        double const s = variance_series(VarianceKind::kN1Diff, 0.0, h, 0.0, 200000);
        CHECK(std::abs(s - h * (1 - h)) <= variance_series_tail_bound(VarianceKind::kN1Diff, 0, 200000));
    }
    // Zero data: t + 1/12 in the limit.
    double const u = variance_series(VarianceKind::kU, 1.0, 0.3, 0.3, 100000);
    CHECK(std::abs(u - (1.0 + 1.0 / 12.0)) <= variance_series_tail_bound(VarianceKind::kU, 1.0, 100000));
    // Transient part at t = 1, h = 1/2: only odd k contribute, k = 1 dominates.
    double const two_term = 2.0 * std::exp(-4 * kPi * kPi) / (kPi * kPi);
    CHECK(std::abs(variance_series(VarianceKind::kN2, 1.0, 0.5, 0.0, 64) - two_term) < 1e-20);
    CHECK(variance_series(VarianceKind::kN2, 1.0, 0.5, 0.0, 64) == doctest::Approx(1.45e-18).epsilon(0.01));
    // x = y gives no increment.
    CHECK(variance_series(VarianceKind::kNDiff, 1.0, 0.4, 0.4, 64) == 0.0);
    // kNDiff + kN2 = kN1Diff.
    double const a = variance_series(VarianceKind::kNDiff, 0.05, 0.3, 0.0, 256);
    double const b = variance_series(VarianceKind::kN2, 0.05, 0.3, 0.0, 256);
    double const c = variance_series(VarianceKind::kN1Diff, 0.05, 0.3, 0.0, 256);
    CHECK(a + b == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("stationary field is anchored at zero with h(1-h) increment variance")
{
    auto p = small_params(1, 64, 256);
    p.tail_tolerance = 1e-3;
    int const n = 4000;
    int const m_half = 128;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        RandomStream rng(3, static_cast<std::uint64_t>(i));
        auto const f = sample_stationary_field(p, rng);
        REQUIRE(f.at(0, 0) == 0.0);
        sum2 += f.at(m_half, 0) * f.at(m_half, 0);
    }
    double const expected = variance_series(VarianceKind::kN1Diff, 0.0, 0.5, 0.0, 64);
    CHECK(std::abs(sum2 / n - expected) < 4.0 * expected * std::sqrt(2.0 / n));
}

TEST_CASE("trajectories are reproducible per replica")
{
    auto p = small_params(2, 8, 32);
    p.T = 0.2;
    p.dt = 0.05;
    auto const zero = StringState::zero(2, 8);
    auto const a = simulate_trajectory(p, zero, 5, 3);
    auto const b = simulate_trajectory(p, zero, 5, 3);
    auto const c = simulate_trajectory(p, zero, 5, 4);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.samples() == 5);
    CHECK(a.times.back() == 0.2);
    // Initial slice is the zero string.
    for (double v : a.slice(0).values) {
        CHECK(v == 0.0);
    }
}
