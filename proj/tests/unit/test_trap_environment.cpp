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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "string_sausage/error.hpp"
#include "string_sausage/trap_environment.hpp"

using namespace string_sausage;

namespace {

double brute_min_distance(std::span<double const> z, std::span<double const> pts, int d)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < pts.size(); p += d) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            s += (z[j] - pts[p + j]) * (z[j] - pts[p + j]);
        }
        best = std::min(best, std::sqrt(s));
    }
    return best;
}

Box square(int d, double lo, double hi)
{
    return Box{std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

} // namespace

TEST_CASE("box checks")
{
    CHECK_THROWS_AS(Box({0.0, 0.0}, {1.0, 0.0}).check(), ConfigError);
    CHECK_THROWS_AS(Box({0.0}, {1.0, 1.0}).check(), ConfigError);
    auto const b = square(3, -1, 1);
    CHECK(b.volume() == doctest::Approx(8.0));
    CHECK(b.contains(square(3, -0.5, 0.5)));
    CHECK_FALSE(square(3, -0.5, 0.5).contains(b));
}

TEST_CASE("empty and trivial environments")
{
    RandomStream rng(1, 1);
    auto const env = sample_environment(square(2, 0, 1), 0.0, rng);
    CHECK(env.size() == 0);
    std::vector<double> z{0.5, 0.5};
    CHECK(std::isinf(min_distance(z, env)));
    PoissonEnvironment one(square(2, -10, 10), 1.0, {0.0, 0.0});
    std::vector<double> q{3.0, 4.0};
    CHECK(min_distance(q, one) == 5.0);
    CHECK_THROWS_AS(PoissonEnvironment(square(2, 0, 1), 1.0, {2.0, 0.5}), ConfigError);
}

TEST_CASE("Poisson counts: mean and dispersion")
{
    int const n = 10000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        RandomStream rng(5, static_cast<std::uint64_t>(i));
        auto const c = static_cast<double>(sample_environment(square(2, 0, 1), 10.0, rng).size());
        sum += c;
        sum2 += c * c;
    }
    double const mean = sum / n;
    double const var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 10.0) < 4.0 * std::sqrt(10.0 / n));
    // Var of the sample variance of Poisson(10) ~ (mu + 2 mu^2) / n.
    CHECK(std::abs(var - 10.0) < 4.0 * std::sqrt((10.0 + 200.0) / n));
}

TEST_CASE("points are uniform in the box")
{
    RandomStream rng(6, 0);
    auto const env = sample_environment(square(2, -2, 2), 500.0, rng);
    auto const pts = env.points();
    long left = 0;
    for (std::size_t p = 0; p < pts.size(); p += 2) {
        REQUIRE(pts[p] >= -2.0);
        REQUIRE(pts[p] <= 2.0);
        left += pts[p] < 0.0 ? 1 : 0;
    }
    double const n = static_cast<double>(env.size());
    CHECK(std::abs(left / n - 0.5) < 4.0 * 0.5 / std::sqrt(n));
}

TEST_CASE("nearest distance equals a brute-force scan")
{
    for (int d : {1, 2, 3}) {
        RandomStream rng(7, static_cast<std::uint64_t>(d));
        auto const env = sample_environment(square(d, -3, 3), 3.0, rng, 0.3);
        RandomStream q(8, static_cast<std::uint64_t>(d));
        for (int i = 0; i < 100; ++i) {
            std::vector<double> z(d);
            for (double& v : z) {
                v = -4.0 + 8.0 * q.uniform(); // some queries fall outside the box
            }
            REQUIRE(min_distance(z, env) == brute_min_distance(z, env.points(), d));
        }
    }
}

TEST_CASE("count_within matches brute force")
{
    RandomStream rng(9, 0);
    auto const env = sample_environment(square(2, 0, 5), 20.0, rng, 0.2);
    RandomStream q(10, 0);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> z{5.0 * q.uniform(), 5.0 * q.uniform()};
        std::size_t expect = 0;
        auto const pts = env.points();
        for (std::size_t p = 0; p < pts.size(); p += 2) {
            expect += std::hypot(z[0] - pts[p], z[1] - pts[p + 1]) <= 0.4 ? 1 : 0;
        }
        REQUIRE(env.index().count_within(z, 0.4) == expect);
    }
}

TEST_CASE("potentials: closed ball and soft height")
{
    PoissonEnvironment env(square(2, -5, 5), 1.0, {0.0, 0.0, 3.0, 0.0});
    PotentialSpec hard{PotentialKind::kHard, 0.5, 1.0};
    std::vector<double> on_boundary{0.5, 0.0};
    std::vector<double> outside{0.5000001, 0.0};
    CHECK(std::isinf(potential_at(on_boundary, env, hard)));
    CHECK(potential_at(outside, env, hard) == 0.0);
    PotentialSpec soft{PotentialKind::kSoftIndicator, 1.0, 2.0};
    std::vector<double> near_one{0.5, 0.0};
    CHECK(potential_at(near_one, env, soft) == 2.0);
    PotentialSpec wide{PotentialKind::kSoftIndicator, 1.0, 2.0};
    std::vector<double> between{1.5, 0.0};
    CHECK(potential_at(between, env, wide) == 0.0);
    std::vector<double> both{1.5, 0.0};
    PotentialSpec big{PotentialKind::kSoftIndicator, 1.0, 2.0};
    PoissonEnvironment close(square(2, -5, 5), 1.0, {1.0, 0.0, 2.0, 0.0});
    CHECK(potential_at(both, close, big) == 4.0);
}

TEST_CASE("potential is translation covariant")
{
    RandomStream rng(11, 0);
    auto const env = sample_environment(square(2, 0, 4), 5.0, rng);
    std::vector<double> shifted_pts(env.points().begin(), env.points().end());
    for (std::size_t p = 0; p < shifted_pts.size(); p += 2) {
        shifted_pts[p] += 10.0;
        shifted_pts[p + 1] -= 3.0;
    }
    PoissonEnvironment moved(Box{{10.0, -3.0}, {14.0, 1.0}}, 5.0, shifted_pts);
    PotentialSpec soft{PotentialKind::kSoftIndicator, 0.7, 1.5};
    RandomStream q(12, 0);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> z{4.0 * q.uniform(), 4.0 * q.uniform()};
        std::vector<double> w{z[0] + 10.0, z[1] - 3.0};
        REQUIRE(potential_at(z, env, soft) == potential_at(w, moved, soft));
    }
}

TEST_CASE("path functional quadrature")
{
    PoissonEnvironment env(square(2, -5, 5), 1.0, {0.0, 0.0});
    PotentialSpec soft{PotentialKind::kSoftIndicator, 0.5, 3.0};
    int const n = 11;
    std::vector<FieldSamples> traj;
    std::vector<double> times;
    for (int i = 0; i < n; ++i) {
        auto f = FieldSamples::zeros(16, 2);
        for (int m = 0; m < 16; ++m) {
            f.at(m, 0) = 0.1; // frozen inside exactly one trap
        }
        traj.push_back(f);
        times.push_back(0.2 * i);
    }
    SUBCASE("constant integrand gives height times T")
    {
        CHECK(std::abs(path_functional(traj, times, env, soft) - 3.0 * 2.0) < 1e-12);
    }
    SUBCASE("zero potential gives zero")
    {
        PoissonEnvironment empty(square(2, -5, 5), 0.0, {});
        CHECK(path_functional(traj, times, empty, soft) == 0.0);
    }
    SUBCASE("additive over windows sharing an endpoint")
    {
        std::vector<FieldSamples> moving = traj;
        for (int i = 0; i < n; ++i) {
            for (int m = 0; m < 16; ++m) {
                moving[i].at(m, 0) = 0.1 * i + 0.05 * m;
            }
        }
        double const whole = path_functional(moving, times, env, soft);
        double const first = path_functional(std::span(moving).subspan(0, 6), std::span(times).subspan(0, 6), env, soft);
        double const second = path_functional(std::span(moving).subspan(5), std::span(times).subspan(5), env, soft);
        CHECK(whole == doctest::Approx(first + second).epsilon(1e-14));
        CHECK(whole >= 0.0);
    }
    SUBCASE("monotone in radius and height")
    {
        PotentialSpec bigger{PotentialKind::kSoftIndicator, 0.9, 3.0};
        PotentialSpec taller{PotentialKind::kSoftIndicator, 0.5, 4.0};
        std::vector<FieldSamples> moving = traj;
        for (int i = 0; i < n; ++i) {
            for (int m = 0; m < 16; ++m) {
                moving[i].at(m, 1) = 0.07 * i - 0.03 * m;
            }
        }
        double const base = path_functional(moving, times, env, soft);
        CHECK(path_functional(moving, times, env, bigger) >= base);
        CHECK(path_functional(moving, times, env, taller) >= base);
    }
    SUBCASE("errors")
    {
        auto bad = times;
        bad[3] += 0.05;
        CHECK_THROWS_AS(path_functional(traj, bad, env, soft), ConfigError);
        PotentialSpec hard{PotentialKind::kHard, 0.5, 1.0};
        CHECK_THROWS_AS(path_functional(traj, times, env, hard), ConfigError);
    }
}

TEST_CASE("environment JSON round trip is exact")
{
    RandomStream rng(13, 0);
    auto const env = sample_environment(square(3, -1, 2), 4.0, rng);
    auto const text = environment_to_json(env);
    auto const back = environment_from_json(text);
    CHECK(back.dim() == 3);
    CHECK(back.nu() == env.nu());
    CHECK(back.size() == env.size());
    std::vector<double> a(env.points().begin(), env.points().end());
    std::vector<double> b(back.points().begin(), back.points().end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK_THROWS_AS(environment_from_json("{\"d\": 2}"), ConfigError);
    CHECK_THROWS_AS(environment_from_json("not json"), ConfigError);
}
