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
#include "string_sausage/trap_environment.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "string_sausage/error.hpp"

namespace string_sausage {

double environment_cell_size(Box const& box, double hint)
{
    return std::max(hint, box.max_extent() / 128.0);
}

PoissonEnvironment::PoissonEnvironment(Box box, double nu, std::vector<double> points, double cell_size_hint)
    : box_(std::move(box)), nu_(nu)
{
    box_.check();
    if (!(nu_ >= 0.0)) {
        throw ConfigError("trap intensity must be >= 0");
    }
    int const d = box_.dim();
    if (points.size() % d != 0) {
        throw ConfigError("trap coordinates do not match the box dimension");
    }
    for (std::size_t p = 0; p < points.size(); p += d) {
        if (!box_.contains(std::span<double const>(points.data() + p, d))) {
            throw ConfigError("trap center outside the environment box");
        }
    }
    index_ = GridIndex(d, points, box_, environment_cell_size(box_, cell_size_hint));
}

PoissonEnvironment sample_environment(Box const& box, double nu, RandomStream& rng, double cell_size_hint)
{
    box.check();
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw ConfigError("trap intensity must be >= 0");
    }
    double const mean = nu * box.volume();
    long long count = 0;
    if (mean > 0.0) {
        std::poisson_distribution<long long> poisson(mean);
        count = poisson(rng);
    }
    int const d = box.dim();
    std::vector<double> points(static_cast<std::size_t>(count) * d);
    for (long long p = 0; p < count; ++p) {
        for (int j = 0; j < d; ++j) {
            double const u = rng.uniform();
            points[p * d + j] = box.lower[j] + u * (box.upper[j] - box.lower[j]);
        }
    }
    return PoissonEnvironment(box, nu, std::move(points), cell_size_hint);
}

double min_distance(std::span<double const> z, PoissonEnvironment const& env)
{
    return env.index().nearest_distance(z);
}

double potential_at(std::span<double const> z, PoissonEnvironment const& env, PotentialSpec const& spec)
{
    if (spec.kind == PotentialKind::kHard) {
        return env.index().any_within(z, spec.a) ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return spec.height * static_cast<double>(env.index().count_within(z, spec.a));
}

PathFunctionalAccumulator::PathFunctionalAccumulator(PoissonEnvironment const& env, PotentialSpec spec)
    : env_(&env), spec_(spec)
{
    spec_.validate();
    if (spec_.kind != PotentialKind::kSoftIndicator) {
        throw ConfigError("path functional is defined for soft potentials; use the hard contact test");
    }
}

void PathFunctionalAccumulator::add_sample(double t, FieldSamples const& samples)
{
    samples.check();
    if (samples.d != env_->dim()) {
        throw ConfigError("field dimension does not match the environment");
    }
    if (started_ && !(t > last_t_)) {
        throw ConfigError("path functional samples must be in increasing time order");
    }
    double slice = 0.0;
    for (int m = 0; m < samples.M; ++m) {
        slice += potential_at(samples.point(m), *env_, spec_);
    }
    slice *= samples.J / samples.M;
    if (started_) {
        total_ += 0.5 * (t - last_t_) * (slice + last_slice_);
    }
    started_ = true;
    last_t_ = t;
    last_slice_ = slice;
}

double path_functional(std::span<FieldSamples const> trajectory, std::span<double const> times,
                       PoissonEnvironment const& env, PotentialSpec const& spec)
{
    if (trajectory.size() != times.size() || trajectory.empty()) {
        throw ConfigError("path functional needs one time per snapshot");
    }
    if (times.size() > 2) {
        double const step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
        for (std::size_t i = 1; i < times.size(); ++i) {
            if (std::abs((times[i] - times[i - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step))) {
                throw ConfigError("path functional requires uniformly spaced sample times");
            }
        }
    }
    PathFunctionalAccumulator acc(env, spec);
    for (std::size_t i = 0; i < times.size(); ++i) {
        acc.add_sample(times[i], trajectory[i]);
    }
    return acc.value();
}

std::string environment_to_json(PoissonEnvironment const& env)
{
    nlohmann::json j;
    int const d = env.dim();
    j["d"] = d;
    j["nu"] = env.nu();
    j["box"] = {{"lower", env.box().lower}, {"upper", env.box().upper}};
    auto pts = nlohmann::json::array();
    auto const flat = env.points();
    for (std::size_t p = 0; p < flat.size(); p += d) {
        pts.push_back(std::vector<double>(flat.begin() + p, flat.begin() + p + d));
    }
    j["points"] = std::move(pts);
    return j.dump();
}

PoissonEnvironment environment_from_json(std::string_view text, double cell_size_hint)
{
    try {
        auto const j = nlohmann::json::parse(text);
        int const d = j.at("d").get<int>();
        Box box{j.at("box").at("lower").get<std::vector<double>>(),
                j.at("box").at("upper").get<std::vector<double>>()};
        if (box.dim() != d) {
            throw ConfigError("environment box dimension differs from d");
        }
        std::vector<double> flat;
        for (auto const& p : j.at("points")) {
            auto const v = p.get<std::vector<double>>();
            if (static_cast<int>(v.size()) != d) {
                throw ConfigError("environment point has the wrong dimension");
            }
            flat.insert(flat.end(), v.begin(), v.end());
        }
        return PoissonEnvironment(std::move(box), j.at("nu").get<double>(), std::move(flat), cell_size_hint);
    } catch (nlohmann::json::exception const& e) {
        throw ConfigError(std::string("malformed environment JSON: ") + e.what());
    }
}

} // namespace string_sausage
