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
#include <vector>

#include "string_sausage/error.hpp"
#include "string_sausage/survival_engine.hpp"

using namespace string_sausage;

namespace {

ModelParams small_params()
{
    ModelParams p;
    p.d = 2;
    p.J = 1.0;
    p.nu = 1.0;
    p.a = 0.3;
    p.K = 32;
    p.M = 96;
    p.dt = 0.05;
    p.T = 0.5;
    return p;
}

Trajectory still_string(int d, int M, double T)
{
    Trajectory t;
    t.d = d;
    t.M = M;
    t.times = {0.0, T};
    t.values.assign(2 * static_cast<std::size_t>(M) * d, 0.0);
    return t;
}

PoissonEnvironment env_with(Box box, std::vector<double> pts) { return {std::move(box), 1.0, std::move(pts)}; }

} // namespace

TEST_CASE("method names round-trip")
{
    for (auto m : {SurvivalMethod::kHardDirect, SurvivalMethod::kHardViaVolume, SurvivalMethod::kSoftWeight}) {
        CHECK(survival_method_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(survival_method_from_string("bogus"), ConfigError);
}

TEST_CASE("trivial survival")
{
    auto p = small_params();
    SUBCASE("no traps")
    {
        p.nu = 0.0;
        for (auto m : {SurvivalMethod::kHardDirect, SurvivalMethod::kHardViaVolume}) {
            auto const e = annealed_hard(p, 100, m, 1);
            CHECK(e.p_hat == 1.0);
            CHECK(e.std_error == 0.0);
        }
        p.potential = PotentialKind::kSoftIndicator;
        CHECK(annealed_soft(p, 100, 1).p_hat == 1.0);
    }
    SUBCASE("zero horizon")
    {
        p.T = 0.0;
        CHECK(annealed_hard(p, 100, SurvivalMethod::kHardDirect, 1).p_hat == 1.0);
    }
    SUBCASE("too few replicas")
    {
        CHECK_THROWS_AS(annealed_hard(p, 99, SurvivalMethod::kHardDirect, 1), ConfigError);
    }
}

TEST_CASE("hard contact on a fixed string")
{
    auto const traj = still_string(2, 16, 1.0);
    Box box{{-2.0, -2.0}, {2.0, 2.0}};
    CHECK(survive_hard_once(traj, env_with(box, {}), 0.3));
    CHECK_FALSE(survive_hard_once(traj, env_with(box, {0.0, 0.0}), 0.3));
    CHECK_FALSE(survive_hard_once(traj, env_with(box, {0.3, 0.0}), 0.3));
    CHECK(survive_hard_once(traj, env_with(box, {0.3 + 1e-9, 0.0}), 0.3));
    Box small{{-0.1, -0.1}, {0.1, 0.1}};
    CHECK_THROWS_AS(survive_hard_once(traj, env_with(small, {}), 0.3), CoverageError);
}

TEST_CASE("environment box pads the trajectory")
{
    auto const traj = still_string(2, 8, 1.0);
    auto const b = environment_box(traj, 0.3, 0.5);
    CHECK(b.lower[0] == doctest::Approx(-0.8));
    CHECK(b.upper[1] == doctest::Approx(0.8));
}

TEST_CASE("soft weight dominates the hard indicator pathwise")
{
    auto p = small_params();
    p.height = 3.0;
    for (std::uint64_t r = 0; r < 50; ++r) {
        auto const o = replica_outcome(p, 17, r);
        CHECK(o.soft_weight >= (o.hard_survived ? 1.0 : 0.0) - 1e-15);
        CHECK(o.soft_weight <= 1.0);
        CHECK(o.soft_weight == doctest::Approx(std::exp(-o.path_functional)));
        if (o.path_functional > 0.0) {
            CHECK_FALSE(o.hard_survived);
        }
    }
}

TEST_CASE("replica outcomes do not depend on the thread count")
{
    auto p = small_params();
    SurvivalOptions one;
    one.threads = 1;
    SurvivalOptions four;
    four.threads = 4;
    for (auto m : {SurvivalMethod::kHardDirect, SurvivalMethod::kHardViaVolume}) {
        auto const a = annealed_hard(p, 120, m, 5, one);
        auto const b = annealed_hard(p, 120, m, 5, four);
        CHECK(a.p_hat == b.p_hat);
        CHECK(a.std_error == b.std_error);
    }
}

TEST_CASE("confidence intervals")
{
    SurvivalEstimate e;
    e.method = SurvivalMethod::kHardDirect;
    e.n_replicas = 1000;
    e.p_hat = 0.0;
    CHECK(e.ci_low() == 0.0);
    CHECK(e.ci_high() == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 1000)).epsilon(1e-6));
    SurvivalEstimate three = e;
    three.n_replicas = 2000;
    three.p_hat = 3.0 / 2000;
    // chi-square form of the exact binomial bounds: chi2(0.025; 6) / 2, chi2(0.975; 8) / 2
    CHECK(three.ci_low() == doctest::Approx(1.2373442 / 2 / 2000).epsilon(2e-3));
    CHECK(three.ci_high() == doctest::Approx(17.534546 / 2 / 2000).epsilon(2e-3));
    e.p_hat = 0.5;
    e.std_error = std::sqrt(0.25 / 1000);
    CHECK(e.ci_low() < 0.5);
    CHECK(e.ci_high() > 0.5);
    SurvivalEstimate f = e;
    f.method = SurvivalMethod::kSoftWeight;
    f.p_hat = 0.2;
    f.std_error = 0.01;
    CHECK(f.ci_low() == doctest::Approx(0.2 - 1.96 * 0.01));
    CHECK_FALSE(ci_overlap(e, f));
    f.p_hat = 0.48;
    CHECK(ci_overlap(e, f));
}

TEST_CASE("scaling transform")
{
    ModelParams p;
    p.d = 2;
    p.J = 4.0;
    p.nu = 1.0;
    p.a = 0.8;
    p.T = 32.0;
    auto const s = scaling_transform(p);
    CHECK(s.T_tilde == doctest::Approx(2.0));
    CHECK(s.nu_tilde == doctest::Approx(4.0));
    CHECK(s.a_tilde == doctest::Approx(0.4));
    CHECK(s.H_scale == doctest::Approx(64.0));
    ModelParams unit = p;
    unit.J = 1.0;
    auto const id = scaling_transform(unit);
    CHECK(id.T_tilde == unit.T);
    CHECK(id.nu_tilde == unit.nu);
    CHECK(id.a_tilde == unit.a);
    auto const img = unit_length_image(p);
    CHECK(img.J == 1.0);
    CHECK(img.K == p.K);
    CHECK(img.M == p.M);
    CHECK(img.dt == doctest::Approx(p.dt / 16.0));
}

TEST_CASE("same seed: the image is an exact rescaling")
{
    ModelParams p;
    p.d = 2;
    p.J = 2.0;
    p.nu = 0.1;
    p.a = 0.4;
    p.K = 32;
    p.M = 96;
    p.dt = 0.1;
    p.T = 1.0;
    double const root = std::sqrt(p.J);
    auto const img = unit_length_image(p);
    auto const a = simulate_trajectory(p, StringState::zero(p.d, p.K, p.J), 9, 3);
    auto const b = simulate_trajectory(img, StringState::zero(img.d, img.K, 1.0), 9, 3);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        CHECK(b.values[i] == doctest::Approx(a.values[i] / root).epsilon(1e-9).scale(1.0));
    }
    SurvivalOptions o;
    SurvivalOptions oi;
    oi.margin = o.margin / root;
    for (auto m : {SurvivalMethod::kHardDirect, SurvivalMethod::kHardViaVolume}) {
        auto const x = annealed_hard(p, 200, m, 21, o);
        auto const y = annealed_hard(img, 200, m, 21, oi);
        CHECK(x.p_hat == doctest::Approx(y.p_hat).epsilon(1e-9));
    }
}

TEST_CASE("quenched estimates")
{
    auto p = small_params();
    RandomStream rng(31, 0);
    auto const env = sample_environment(quenched_box(p), p.nu, rng, p.a);
    auto const a = quenched(p, env, 100, 4);
    auto const b = quenched(p, env, 100, 4);
    CHECK(a.p_hat == b.p_hat);
    auto const empty = PoissonEnvironment(quenched_box(p), p.nu, {});
    CHECK(quenched(p, empty, 100, 4).p_hat == 1.0);
    SUBCASE("averaging over environments matches the annealed value")
    {
        double sum = 0.0;
        int const n_env = 40;
        for (int e = 0; e < n_env; ++e) {
            RandomStream r(100, static_cast<std::uint64_t>(e));
            auto const env_e = sample_environment(quenched_box(p), p.nu, r, p.a);
            sum += quenched(p, env_e, 100, 200 + e).p_hat;
        }
        double const tower = sum / n_env;
        auto const ann = annealed_hard(p, 4000, SurvivalMethod::kHardDirect, 77);
        CHECK(std::abs(tower - ann.p_hat) < 0.06);
    }
}

TEST_CASE("survival decreases with density")
{
    auto p = small_params();
    double prev = 1.0;
    for (double nu : {0.2, 1.0, 3.0}) {
        p.nu = nu;
        double const s = annealed_hard(p, 400, SurvivalMethod::kHardDirect, 8).p_hat;
        CHECK(s <= prev + 1e-12);
        prev = s;
    }
}
