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
#include "string_sausage/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "string_sausage/error.hpp"

namespace string_sausage {

void PotentialSpec::validate() const
{
    if (!(a > 0.0 && a <= 1.0)) {
        throw ConfigError("trap radius a must lie in (0, 1]");
    }
    if (kind == PotentialKind::kSoftIndicator && !(height > 0.0 && std::isfinite(height))) {
        throw ConfigError("soft trap height must be positive and finite");
    }
}

void ModelParams::validate() const
{
    if (d < 1) {
        throw ConfigError("dimension d must be >= 1");
    }
    if (!(J >= 1.0) || !std::isfinite(J)) {
        throw ConfigError("circle length J must be >= 1");
    }
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw ConfigError("trap intensity nu must be >= 0");
    }
    potential_spec().validate();
    if (K < 1) {
        throw ConfigError("mode cutoff K must be >= 1");
    }
    if (M < 2 * K + 1) {
        throw ConfigError("grid size M must be >= 2K+1 to resolve all retained modes");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("sampling step dt must be > 0");
    }
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw ConfigError("horizon T must be >= 0");
    }
    if (tail_variance(K) >= tail_tolerance) {
        std::ostringstream os;
        os << "mode cutoff K=" << K << " leaves tail variance " << tail_variance(K)
           << " >= tolerance " << tail_tolerance;
        throw ConfigError(os.str());
    }
}

long ModelParams::steps() const
{
    if (T <= 0.0) {
        return 0;
    }
    return static_cast<long>(std::ceil(T / dt - 1e-9));
}

double ModelParams::sample_time(long i) const
{
    double const t = static_cast<double>(i) * dt;
    return i >= steps() ? T : std::min(t, T);
}

double mode_rate(int k, double J)
{
    double const kk = static_cast<double>(k) / J;
    return 2.0 * std::numbers::pi * std::numbers::pi * kk * kk;
}

double tail_variance(int K)
{
    // pi^2/6 - sum_{k<=K} 1/k^2, summed small-to-large to limit cancellation.
    double partial = 0.0;
    for (int k = K; k >= 1; --k) {
        partial += 1.0 / (static_cast<double>(k) * k);
    }
    double const tail = std::numbers::pi * std::numbers::pi / 6.0 - partial;
    return tail / (4.0 * std::numbers::pi * std::numbers::pi);
}

double unit_ball_volume(int d)
{
    double const half = 0.5 * d;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

ResolutionReport resolution_report(ModelParams const& params)
{
    ResolutionReport r;
    double const dx = params.dx();
    r.spatial_modulus = std::sqrt(dx * (1.0 - dx / params.J));
    r.temporal_modulus = std::pow(2.0 * params.dt / std::numbers::pi, 0.25);
    r.threshold = params.a / 10.0;
    r.fine = r.spatial_modulus < r.threshold && r.temporal_modulus < r.threshold;
    std::ostringstream os;
    os << "K" << params.K << "_M" << params.M << "_dt" << params.dt << (r.fine ? "_fine" : "_coarse");
    r.tag = os.str();
    return r;
}

} // namespace string_sausage
