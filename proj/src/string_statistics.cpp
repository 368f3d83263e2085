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
#include "string_sausage/string_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "string_sausage/error.hpp"

namespace string_sausage {

void PathRecord::check() const
{
    if (d < 1 || X.size() != times.size() * d || R.size() != times.size()) {
        throw ConfigError("path record has inconsistent lengths");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw ConfigError("path record times must increase strictly");
        }
    }
    for (double r : R) {
        if (!(r >= 0.0)) {
            throw ConfigError("path record radius must be nonnegative");
        }
    }
}

std::vector<double> center_of_mass(StringState const& state)
{
    std::vector<double> x(state.d);
    for (int j = 0; j < state.d; ++j) {
        x[j] = state.b0(j);
    }
    return x;
}

double radius(StringState const& state, int M)
{
    auto const field = evaluate(state, M);
    auto const center = center_of_mass(state);
    double best = 0.0;
    for (int m = 0; m < M; ++m) {
        double r2 = 0.0;
        for (int j = 0; j < state.d; ++j) {
            double const diff = field.at(m, j) - center[j];
            r2 += diff * diff;
        }
        best = std::max(best, r2);
    }
    return std::sqrt(best);
}

double point_set_diameter(std::span<double const> points, int d)
{
    if (d < 1 || points.empty() || points.size() % d != 0) {
        throw ConfigError("diameter needs a nonempty set of d-dimensional points");
    }
    std::size_t const n = points.size() / d;
    if (d == 1) {
        auto const [lo, hi] = std::minmax_element(points.begin(), points.end());
        return *hi - *lo;
    }
    double best = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        double const* a = points.data() + p * d;
        for (std::size_t q = p + 1; q < n; ++q) {
            double const* b = points.data() + q * d;
            double r2 = 0.0;
            for (int j = 0; j < d; ++j) {
                double const diff = a[j] - b[j];
                r2 += diff * diff;
            }
            best = std::max(best, r2);
        }
    }
    return std::sqrt(best);
}

double range_of(FieldSamples const& samples)
{
    if (samples.M < 1 || samples.values.empty()) {
        throw ConfigError("range of an empty sample set");
    }
    return point_set_diameter(samples.values, samples.d);
}

PathRecord record_path(ModelParams const& params, StringState const& initial, std::uint64_t seed,
                       std::uint64_t replica)
{
    params.validate();
    PathRecord path;
    path.d = params.d;
    for_each_sample(params, initial, seed, replica, [&](StringState const& s) {
        path.times.push_back(s.t);
        for (int j = 0; j < s.d; ++j) {
            path.X.push_back(s.b0(j));
        }
        path.R.push_back(radius(s, params.M));
    });
    return path;
}

double pearson_correlation(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.empty()) {
        throw ConfigError("correlation needs two nonempty samples of equal size");
    }
    double const n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double const dx = x[i] - mx;
        double const dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

IndependenceReport independence_test(std::span<ReplicaEndpoint const> replicas)
{
    if (replicas.size() < 100) {
        throw ConfigError("independence test needs at least 100 replicas");
    }
    auto const d = replicas.front().X.size();
    std::vector<double> r(replicas.size());
    std::vector<double> x(replicas.size());
    for (std::size_t i = 0; i < replicas.size(); ++i) {
        if (replicas[i].X.size() != d) {
            throw ConfigError("replicas disagree on dimension");
        }
        r[i] = replicas[i].R;
    }
    IndependenceReport report;
    report.n = replicas.size();
    report.threshold = 4.0 / std::sqrt(static_cast<double>(report.n));
    report.pass = true;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < replicas.size(); ++i) {
            x[i] = replicas[i].X[j];
        }
        double const rho = pearson_correlation(x, r);
        report.correlations.push_back(rho);
        report.pass = report.pass && std::abs(rho) <= report.threshold;
    }
    return report;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ks_statistic(std::vector<double> samples, std::function<double(double)> const& cdf)
{
    if (samples.empty()) {
        throw ConfigError("KS statistic of an empty sample");
    }
    std::sort(samples.begin(), samples.end());
    double const n = static_cast<double>(samples.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double const f = cdf(samples[i]);
        dmax = std::max({dmax, (i + 1) / n - f, f - i / n});
    }
    return dmax;
}

double ks_critical_1pct(std::size_t n)
{
    // sqrt(-ln(alpha/2)/2) at alpha = 0.01
    return std::sqrt(-0.5 * std::log(0.005)) / std::sqrt(static_cast<double>(n));
}

BrownianIncrementReport brownian_increment_test(std::span<double const> increments, double delta)
{
    if (increments.size() < 2 || !(delta > 0.0)) {
        throw ConfigError("increment test needs >= 2 increments and delta > 0");
    }
    BrownianIncrementReport rep;
    rep.n = increments.size();
    double const n = static_cast<double>(rep.n);
    for (double v : increments) {
        rep.mean += v;
    }
    rep.mean /= n;
    for (double v : increments) {
        rep.variance += (v - rep.mean) * (v - rep.mean);
    }
    rep.variance /= (n - 1.0);
    rep.mean_stderr = std::sqrt(delta / n);
    rep.variance_stderr = delta * std::sqrt(2.0 / (n - 1.0));
    rep.mean_ok = std::abs(rep.mean) <= 4.0 * rep.mean_stderr;
    rep.variance_ok = std::abs(rep.variance - delta) <= 4.0 * rep.variance_stderr;

    std::vector<double> z(increments.begin(), increments.end());
    double const scale = 1.0 / std::sqrt(delta);
    for (double& v : z) {
        v *= scale;
    }
    rep.ks = ks_statistic(std::move(z), normal_cdf);
    rep.ks_critical = ks_critical_1pct(rep.n);
    rep.ks_ok = rep.ks < rep.ks_critical;
    return rep;
}

} // namespace string_sausage
