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
#include "string_sausage/survival_engine.hpp"

#include <algorithm>
#include <utility>
#include <cmath>
#include <vector>

#include "string_sausage/error.hpp"
#include "string_sausage/parallel.hpp"

namespace string_sausage {

char const* to_string(SurvivalMethod method)
{
    switch (method) {
    case SurvivalMethod::kHardDirect:
        return "hard_direct";
    case SurvivalMethod::kHardViaVolume:
        return "hard_via_volume";
    case SurvivalMethod::kSoftWeight:
        return "soft_weight";
    }
    return "unknown";
}

SurvivalMethod survival_method_from_string(std::string const& name)
{
    if (name == "hard_direct") {
        return SurvivalMethod::kHardDirect;
    }
    if (name == "hard_via_volume") {
        return SurvivalMethod::kHardViaVolume;
    }
    if (name == "soft_weight") {
        return SurvivalMethod::kSoftWeight;
    }
    throw ConfigError("unknown survival method: " + name);
}

namespace {

constexpr double kZ95 = 1.959963984540054;

// P(X <= x) for X ~ Binomial(n, p).
double binomial_cdf(long x, long n, double p)
{
    if (x < 0) {
        return 0.0;
    }
    if (x >= n || p <= 0.0) {
        return 1.0;
    }
    if (p >= 1.0) {
        return 0.0;
    }
    double const lp = std::log(p);
    double const lq = std::log1p(-p);
    double sum = 0.0;
    for (long k = 0; k <= x; ++k) {
        double const lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        sum += std::exp(lc + k * lp + (n - k) * lq);
    }
    return std::min(sum, 1.0);
}

// Clopper-Pearson interval; guaranteed coverage even when n p is of order one.
std::pair<double, double> clopper_pearson(long x, long n)
{
    double const tail = 0.025;
    auto solve = [](auto&& too_low) {
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 100; ++it) {
            double const mid = 0.5 * (lo + hi);
            (too_low(mid) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    double const low = x == 0 ? 0.0 : solve([&](double p) { return 1.0 - binomial_cdf(x - 1, n, p) < tail; });
    double const high = x == n ? 1.0 : solve([&](double p) { return binomial_cdf(x, n, p) > tail; });
    return {low, high};
}

std::pair<double, double> indicator_interval(SurvivalEstimate const& e)
{
    long const x = std::lround(e.p_hat * static_cast<double>(e.n_replicas));
    return clopper_pearson(x, e.n_replicas);
}

} // namespace

double SurvivalEstimate::ci_low() const
{
    if (method == SurvivalMethod::kHardDirect && n_replicas > 0) {
        return indicator_interval(*this).first;
    }
    return p_hat - kZ95 * std_error;
}

double SurvivalEstimate::ci_high() const
{
    if (method == SurvivalMethod::kHardDirect && n_replicas > 0) {
        return indicator_interval(*this).second;
    }
    return p_hat + kZ95 * std_error;
}

bool ci_overlap(SurvivalEstimate const& x, SurvivalEstimate const& y)
{
    return x.ci_low() <= y.ci_high() && y.ci_low() <= x.ci_high();
}

namespace {

Box trajectory_box(Trajectory const& traj)
{
    int const d = traj.d;
    if (traj.values.empty()) {
        throw ConfigError("empty trajectory");
    }
    Box box{std::vector<double>(traj.values.begin(), traj.values.begin() + d),
            std::vector<double>(traj.values.begin(), traj.values.begin() + d)};
    for (std::size_t p = 0; p < traj.values.size(); p += d) {
        for (int j = 0; j < d; ++j) {
            box.lower[j] = std::min(box.lower[j], traj.values[p + j]);
            box.upper[j] = std::max(box.upper[j], traj.values[p + j]);
        }
    }
    return box;
}

StringState initial_state(ModelParams const& params, SurvivalOptions const& options)
{
    if (!options.initial) {
        return StringState::zero(params.d, params.K, params.J);
    }
    auto s = *options.initial;
    s.check();
    if (s.d != params.d || s.K != params.K || s.J != params.J) {
        throw ConfigError("initial state does not match d, K or J");
    }
    s.t = 0.0;
    return s;
}

void check_resolution(ModelParams const& params, SurvivalOptions const& options)
{
    if (options.strict_resolution && !resolution_report(params).fine) {
        throw ResolutionError("sampling moduli exceed a/10 (" + resolution_report(params).tag + ")");
    }
}

double soft_functional(Trajectory const& traj, PoissonEnvironment const& env, PotentialSpec spec)
{
    spec.kind = PotentialKind::kSoftIndicator;
    PathFunctionalAccumulator acc(env, spec);
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        acc.add_sample(traj.times[i], traj.slice(i));
    }
    return acc.value();
}

SurvivalEstimate finish(std::vector<double> const& values, bool indicator, SurvivalMethod method,
                        ModelParams const& params, std::uint64_t seed)
{
    SurvivalEstimate est;
    est.method = method;
    est.params = params;
    est.seed = seed;
    est.resolution_tag = resolution_report(params).tag;
    est.n_replicas = static_cast<long>(values.size());
    double const n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    double const mean = sum / n;
    est.p_hat = mean;
    if (indicator) {
        est.std_error = std::sqrt(mean * (1.0 - mean) / n);
    } else if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
        }
        est.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return est;
}

SurvivalEstimate trivial(ModelParams const& params, long n_rep, SurvivalMethod method, std::uint64_t seed)
{
    return finish(std::vector<double>(n_rep, 1.0), method != SurvivalMethod::kSoftWeight &&
                                                       method != SurvivalMethod::kHardViaVolume,
                  method, params, seed);
}

void check_replicas(long n_rep)
{
    if (n_rep < 100) {
        throw ConfigError("survival estimation needs at least 100 replicas");
    }
}

} // namespace

Box environment_box(Trajectory const& traj, double a, double margin)
{
    auto box = trajectory_box(traj);
    for (int j = 0; j < traj.d; ++j) {
        box.lower[j] -= a + margin;
        box.upper[j] += a + margin;
    }
    return box;
}

bool survive_hard_once(Trajectory const& traj, PoissonEnvironment const& env, double a)
{
    if (traj.d != env.dim()) {
        throw ConfigError("trajectory dimension does not match the environment");
    }
    auto needed = trajectory_box(traj);
    for (int j = 0; j < traj.d; ++j) {
        needed.lower[j] -= a;
        needed.upper[j] += a;
    }
    if (!env.box().contains(needed)) {
        throw CoverageError("trap environment does not cover the trajectory padded by a");
    }
    if (env.size() == 0) {
        return true;
    }
    int const d = traj.d;
    for (std::size_t p = 0; p < traj.values.size(); p += d) {
        if (env.index().any_within(std::span<double const>(traj.values.data() + p, d), a)) {
            return false;
        }
    }
    return true;
}

ReplicaOutcome replica_outcome(ModelParams const& params, std::uint64_t seed, std::uint64_t replica,
                               SurvivalOptions const& options)
{
    params.validate();
    auto const traj = simulate_trajectory(params, initial_state(params, options), seed, replica);
    auto rng = purpose_stream(seed, Purpose::kEnvironment, replica);
    auto const env = sample_environment(environment_box(traj, params.a, options.margin), params.nu, rng, params.a);
    ReplicaOutcome out;
    out.traps = env.size();
    out.hard_survived = survive_hard_once(traj, env, params.a);
    out.path_functional = soft_functional(traj, env, params.potential_spec());
    out.soft_weight = std::exp(-out.path_functional);
    return out;
}

SurvivalEstimate annealed_hard(ModelParams const& params, long n_rep, SurvivalMethod method, std::uint64_t seed,
                               SurvivalOptions const& options)
{
    params.validate();
    check_replicas(n_rep);
    if (params.potential != PotentialKind::kHard) {
        throw ConfigError("annealed_hard needs a hard potential; use annealed_soft");
    }
    if (method == SurvivalMethod::kSoftWeight) {
        throw ConfigError("soft_weight is not a hard-obstacle method");
    }
    check_resolution(params, options);
    if (params.T == 0.0 || params.nu == 0.0) {
        return trivial(params, n_rep, method, seed);
    }
    auto const init = initial_state(params, options);
    std::vector<double> values(n_rep);
    parallel_for(static_cast<std::size_t>(n_rep), options.threads, [&](std::size_t r) {
        auto const traj = simulate_trajectory(params, init, seed, r);
        if (method == SurvivalMethod::kHardDirect) {
            auto rng = purpose_stream(seed, Purpose::kEnvironment, r);
            auto const env =
                sample_environment(environment_box(traj, params.a, options.margin), params.nu, rng, params.a);
            values[r] = survive_hard_once(traj, env, params.a) ? 1.0 : 0.0;
        } else {
            PointCloud cloud;
            cloud.d = traj.d;
            cloud.points = traj.values;
            auto rng = purpose_stream(seed, Purpose::kVolume, r);
            auto const vol = sausage_volume_hit_or_miss(cloud, params.a, options.n_mc, rng);
            values[r] = std::exp(-params.nu * vol.volume);
        }
    });
    return finish(values, method == SurvivalMethod::kHardDirect, method, params, seed);
}

SurvivalEstimate annealed_soft(ModelParams const& params, long n_rep, std::uint64_t seed,
                               SurvivalOptions const& options)
{
    params.validate();
    check_replicas(n_rep);
    if (params.potential != PotentialKind::kSoftIndicator) {
        throw ConfigError("annealed_soft needs a SoftIndicator potential; use annealed_hard");
    }
    check_resolution(params, options);
    if (params.T == 0.0 || params.nu == 0.0) {
        return trivial(params, n_rep, SurvivalMethod::kSoftWeight, seed);
    }
    auto const init = initial_state(params, options);
    std::vector<double> values(n_rep);
    parallel_for(static_cast<std::size_t>(n_rep), options.threads, [&](std::size_t r) {
        auto const traj = simulate_trajectory(params, init, seed, r);
        auto rng = purpose_stream(seed, Purpose::kEnvironment, r);
        auto const env =
            sample_environment(environment_box(traj, params.a, options.margin), params.nu, rng, params.a);
        values[r] = std::exp(-soft_functional(traj, env, params.potential_spec()));
    });
    return finish(values, false, SurvivalMethod::kSoftWeight, params, seed);
}

SurvivalEstimate quenched(ModelParams const& params, PoissonEnvironment const& env, long n_rep, std::uint64_t seed,
                          SurvivalOptions const& options)
{
    params.validate();
    check_replicas(n_rep);
    if (env.dim() != params.d) {
        throw ConfigError("environment dimension does not match d");
    }
    check_resolution(params, options);
    bool const hard = params.potential == PotentialKind::kHard;
    auto const method = hard ? SurvivalMethod::kHardDirect : SurvivalMethod::kSoftWeight;
    if (params.T == 0.0) {
        return trivial(params, n_rep, method, seed);
    }
    auto const init = initial_state(params, options);
    std::vector<double> values(n_rep);
    parallel_for(static_cast<std::size_t>(n_rep), options.threads, [&](std::size_t r) {
        auto const traj = simulate_trajectory(params, init, seed, r);
        if (hard) {
            values[r] = survive_hard_once(traj, env, params.a) ? 1.0 : 0.0;
        } else {
            auto needed = trajectory_box(traj);
            for (int j = 0; j < traj.d; ++j) {
                needed.lower[j] -= params.a;
                needed.upper[j] += params.a;
            }
            if (!env.box().contains(needed)) {
                throw CoverageError("trap environment does not cover the trajectory padded by a");
            }
            values[r] = std::exp(-soft_functional(traj, env, params.potential_spec()));
        }
    });
    return finish(values, hard, method, params, seed);
}

Box quenched_box(ModelParams const& params, SurvivalOptions const& options)
{
    params.validate();
    auto const init = initial_state(params, options);
    auto const field = evaluate(init, params.M);
    // Per-coordinate sd of u(t,x) at T from zero data: sqrt(T/J + stationary part).
    double const sd = std::sqrt(params.T / params.J + params.J / 12.0);
    double const pad = 8.0 * sd + params.a + options.margin;
    Box box{std::vector<double>(params.d, 0.0), std::vector<double>(params.d, 0.0)};
    for (int j = 0; j < params.d; ++j) {
        double lo = field.at(0, j);
        double hi = lo;
        for (int m = 1; m < field.M; ++m) {
            lo = std::min(lo, field.at(m, j));
            hi = std::max(hi, field.at(m, j));
        }
        box.lower[j] = lo - pad;
        box.upper[j] = hi + pad;
    }
    return box;
}

ScaledParams scaling_transform(ModelParams const& params)
{
    if (!(params.J >= 1.0)) {
        throw ConfigError("scaling needs J >= 1");
    }
    double const J = params.J;
    ScaledParams s;
    s.T_tilde = params.T / (J * J);
    s.nu_tilde = params.nu * std::pow(J, 0.5 * params.d);
    s.a_tilde = params.a / std::sqrt(J);
    s.H_scale = J * J * J;
    s.height_tilde = params.height * s.H_scale;
    return s;
}

ModelParams unit_length_image(ModelParams const& params)
{
    auto const s = scaling_transform(params);
    ModelParams img = params;
    img.J = 1.0;
    img.T = s.T_tilde;
    img.nu = s.nu_tilde;
    img.a = s.a_tilde;
    img.height = s.height_tilde;
    img.dt = params.dt / (params.J * params.J);
    return img;
}

ScalingReport scaling_check(ModelParams const& params, long n_rep, std::uint64_t seed_original,
                            std::uint64_t seed_image, SurvivalOptions const& options)
{
    params.validate();
    ScalingReport rep;
    rep.scaled = scaling_transform(params);
    auto const img = unit_length_image(params);
    auto img_options = options;
    if (options.initial) {
        // u~(x) = J^(-1/2) u(J x): same coefficients, rescaled, on the unit circle.
        auto s = *options.initial;
        for (double& c : s.coeffs) {
            c /= std::sqrt(params.J);
        }
        s.J = 1.0;
        img_options.initial = s;
    }
    if (params.potential == PotentialKind::kHard) {
        rep.original = annealed_hard(params, n_rep, SurvivalMethod::kHardDirect, seed_original, options);
        rep.image = annealed_hard(img, n_rep, SurvivalMethod::kHardDirect, seed_image, img_options);
    } else {
        rep.original = annealed_soft(params, n_rep, seed_original, options);
        rep.image = annealed_soft(img, n_rep, seed_image, img_options);
    }
    rep.overlap = ci_overlap(rep.original, rep.image);
    return rep;
}

} // namespace string_sausage
