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
#include "string_sausage/asymptotics_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "string_sausage/error.hpp"
#include "string_sausage/parallel.hpp"

namespace string_sausage {

namespace {

constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;

double distance(std::span<double const> x, std::span<double const> y)
{
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        s += (x[j] - y[j]) * (x[j] - y[j]);
    }
    return std::sqrt(s);
}

void require_unit_circle(double J)
{
    if (J != 1.0) {
        throw ConfigError("this diagnostic is formulated on the unit circle (J = 1)");
    }
}

} // namespace

RunTrace record_trace(ModelParams const& params, StringState const& initial, std::uint64_t seed,
                      std::uint64_t replica)
{
    params.validate();
    RunTrace trace;
    trace.params = params;
    trace.states.reserve(params.steps() + 1);
    for_each_sample(params, initial, seed, replica, [&](StringState const& s) { trace.states.push_back(s); });
    return trace;
}

PathRecord trace_path(RunTrace const& trace, bool with_radius)
{
    PathRecord path;
    path.d = trace.params.d;
    for (auto const& s : trace.states) {
        path.times.push_back(s.t);
        for (int j = 0; j < s.d; ++j) {
            path.X.push_back(s.b0(j));
        }
        path.R.push_back(with_radius ? radius(s, trace.params.M) : 0.0);
    }
    return path;
}

long TauSequence::count_up_to(double T) const
{
    long n = 0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        n += times[i] <= T ? 1 : 0;
    }
    return n;
}

TauSequence tau_sequence(PathRecord const& path, double Lambda)
{
    path.check();
    if (!(Lambda > 0.0)) {
        throw ConfigError("Lambda must be > 0");
    }
    TauSequence out;
    if (path.size() == 0) {
        return out;
    }
    out.times.push_back(path.times[0]);
    out.index.push_back(0);
    double const reach = 4.0 * Lambda;
    for (std::size_t i = 1; i < path.size(); ++i) {
        out.max_step = std::max(out.max_step, distance(path.position(i), path.position(i - 1)));
        bool far = true;
        for (auto c : out.index) {
            if (distance(path.position(i), path.position(c)) < reach) {
                far = false;
                break;
            }
        }
        if (far) {
            out.times.push_back(path.times[i]);
            out.index.push_back(i);
        }
    }
    out.guard_ok = out.max_step < Lambda / 10.0;
    return out;
}

bool tau_covering_holds(PathRecord const& path, TauSequence const& taus, double Lambda)
{
    std::size_t sel = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        while (sel + 1 < taus.index.size() && taus.index[sel + 1] <= i) {
            ++sel;
        }
        if (sel + 1 < taus.index.size() && taus.index[sel + 1] == i) {
            continue;
        }
        bool covered = false;
        for (std::size_t c = 0; c <= sel; ++c) {
            if (distance(path.position(i), path.position(taus.index[c])) < 4.0 * Lambda) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            return false;
        }
    }
    return true;
}

double centered_l2_norm(StringState const& state)
{
    double s = 0.0;
    for (int j = 0; j < state.d; ++j) {
        for (int k = 1; k <= state.K; ++k) {
            s += state.cos_coeff(j, k) * state.cos_coeff(j, k) + state.sin_coeff(j, k) * state.sin_coeff(j, k);
        }
    }
    return std::sqrt(s * state.J);
}

double centered_l2_norm(FieldSamples const& samples)
{
    samples.check();
    double s = 0.0;
    for (int j = 0; j < samples.d; ++j) {
        double mean = 0.0;
        for (int m = 0; m < samples.M; ++m) {
            mean += samples.at(m, j);
        }
        mean /= samples.M;
        for (int m = 0; m < samples.M; ++m) {
            s += (samples.at(m, j) - mean) * (samples.at(m, j) - mean);
        }
    }
    return std::sqrt(s * samples.J / samples.M);
}

namespace {

RangeSmoothingReport smoothing_report(double t, int d, double lhs, double norm)
{
    RangeSmoothingReport r;
    r.t = t;
    r.lhs = lhs;
    r.rhs = 4.0 * d * std::exp(-kTwoPiSq * t) * norm;
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-12) + 1e-300;
    r.in_hypothesis = t >= 1.0;
    return r;
}

} // namespace

RangeSmoothingReport range_smoothing_check(FieldSamples const& f, double t)
{
    require_unit_circle(f.J);
    return smoothing_report(t, f.d, range_of(heat_convolve(f, t)), centered_l2_norm(f));
}

RangeSmoothingReport range_smoothing_check(StringState const& f, double t, int M)
{
    require_unit_circle(f.J);
    return smoothing_report(t, f.d, range_of(evaluate(heat_convolve(f, t), M)), centered_l2_norm(f));
}

DeltaL choose_delta_L(double a, int d, double E_initial, double C0)
{
    if (!(a > 0.0 && a <= 1.0) || d < 1) {
        throw ConfigError("choose_delta_L needs a in (0,1] and d >= 1");
    }
    DeltaL out;
    out.a = a;
    out.d = d;
    out.C0 = C0;
    out.delta = a / 100.0;
    out.E = E_initial;
    auto ok = [&](double L) {
        return 4.0 * d * std::exp(-kTwoPiSq * L) <= out.delta &&
               std::exp(kTwoPiSq * L) >= 8.0 * C0 * std::pow(d, 1.5) / out.delta;
    };
    while (!ok(out.E + 3.0 * std::abs(std::log(a)))) {
        out.E += 1.0;
    }
    out.L = out.E + 3.0 * std::abs(std::log(a));
    out.checked = {"4 d exp(-2 pi^2 L) <= delta", "exp(2 pi^2 L) >= 8 C0 d^(3/2) / delta"};
    out.unchecked = {"L >= D + 2|log a| (D not constructive)",
                     "L large enough for the confinement tail bound (constants not constructive)"};
    return out;
}

LambdaCalibration calibrate_lambda(ModelParams const& params, double L, long n_rep, std::uint64_t seed, double q,
                                   unsigned threads)
{
    params.validate();
    require_unit_circle(params.J);
    if (!(L > 0.0) || n_rep < 1 || !(q > 0.0 && q < 1.0)) {
        throw ConfigError("calibrate_lambda needs L > 0, n_rep >= 1 and q in (0,1)");
    }
    LambdaCalibration out;
    out.ranges.resize(n_rep);
    parallel_for(static_cast<std::size_t>(n_rep), threads, [&](std::size_t r) {
        auto rng = purpose_stream(seed, Purpose::kCalibration, r);
        auto const s = evolve(StringState::zero(params.d, params.K, params.J), L, rng);
        out.ranges[r] = range_of(evaluate(s, params.M));
    });
    auto sorted = out.ranges;
    std::sort(sorted.begin(), sorted.end());
    double const pos = q * (static_cast<double>(n_rep) - 1.0);
    auto const lo = static_cast<std::size_t>(std::floor(pos));
    auto const hi = std::min(lo + 1, sorted.size() - 1);
    out.quantile = sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    out.Lambda = std::max(out.quantile, 1.0);
    return out;
}

bool StoppingChain::ordering_ok() const
{
    for (std::size_t i = 1; i < tau.size(); ++i) {
        if (!(tau[i] > tau[i - 1])) {
            return false;
        }
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < S.size() && i < T_seq.size(); ++i) {
        if (!(S[i] >= prev + L - 1e-12) || !(T_seq[i] >= S[i])) {
            return false;
        }
        auto first = std::lower_bound(tau.begin(), tau.end(), S[i]);
        if (first == tau.end() || *first != T_seq[i]) {
            return false;
        }
        prev = T_seq[i];
    }
    return true;
}

bool StoppingChain::all_ok() const
{
    if (!ordering_ok()) {
        return false;
    }
    for (auto const& iv : intervals) {
        if (!iv.range_ok || !iv.smoothing.holds || !iv.volume_ok) {
            return false;
        }
    }
    return true;
}

namespace {

// First t in [t0, t_end] with range(G_{t - base} f) <= delta; negative when none.
double first_smoothed_time(StringState const& f, double base, double t0, double t_end, double step, double delta,
                           int M)
{
    auto cond = [&](double t) { return range_of(evaluate(heat_convolve(f, t - base), M)) <= delta; };
    if (t0 > t_end) {
        return -1.0;
    }
    if (cond(t0)) {
        return t0;
    }
    double lo = t0;
    double hi = t0;
    for (;;) {
        hi = lo + step;
        if (hi > t_end) {
            return -1.0;
        }
        if (cond(hi)) {
            break;
        }
        lo = hi;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        double const mid = 0.5 * (lo + hi);
        (cond(mid) ? hi : lo) = mid;
    }
    return hi;
}

SausageEstimate fixed_time_volume(StringState const& s, double radius, int M, std::uint64_t stream)
{
    auto const cloud = PointCloud::from_samples(evaluate(s, M));
    if (cloud.d <= 3) {
        return sausage_volume_voxel(cloud, radius, radius / 8.0);
    }
    RandomStream rng(0x5eed, stream);
    return sausage_volume_hit_or_miss(cloud, radius, 20000, rng);
}

bool volume_dominates(SausageEstimate const& big, SausageEstimate const& small)
{
    double const slack = big.method == SausageMethod::kVoxel
                             ? big.discretization + small.discretization
                             : 4.0 * std::hypot(big.std_error, small.std_error);
    return big.volume + slack >= small.volume;
}

} // namespace

StoppingChain stopping_chain(RunTrace const& trace, double Lambda, double delta, double L, double a)
{
    require_unit_circle(trace.params.J);
    if (trace.states.empty()) {
        throw ConfigError("stopping chain needs a nonempty trace");
    }
    if (!(delta > 0.0) || !(L >= 1.0) || !(a > 0.0)) {
        throw ConfigError("stopping chain needs delta > 0, L >= 1 and a > 0");
    }
    int const M = trace.params.M;
    int const d = trace.params.d;
    StoppingChain chain;
    chain.Lambda = Lambda;
    chain.delta = delta;
    chain.L = L;
    chain.a = a;
    auto const path = trace_path(trace);
    auto const taus = tau_sequence(path, Lambda);
    chain.tau = taus.times;

    double const t_end = trace.states.back().t;
    double const step = trace.params.dt;
    std::size_t prev_index = 0;
    StringState f = trace.states.front();
    for (int j = 0; j < d; ++j) {
        f.b0(j) = 0.0;
    }
    for (std::size_t i = 1;; ++i) {
        double const base = trace.states[prev_index].t;
        double const S = first_smoothed_time(f, base, base + L, t_end, step, delta, M);
        if (S < 0.0) {
            break;
        }
        auto it = std::lower_bound(taus.times.begin(), taus.times.end(), S);
        if (it == taus.times.end()) {
            break;
        }
        std::size_t const next_index = taus.index[it - taus.times.begin()];
        ChainInterval iv;
        iv.T_prev = base;
        iv.S = S;
        iv.T = trace.states[next_index].t;
        iv.smoothing = range_smoothing_check(f, S - base, M);
        auto const& u = trace.states[next_index];
        auto const noise = noise_segment_coeffs(trace.states[prev_index], u);
        iv.range_noise = range_of(evaluate(noise, M));
        iv.range_u = range_of(evaluate(u, M));
        iv.range_ok = std::abs(iv.range_u - iv.range_noise) <= 2.0 * delta;
        iv.volume_u = fixed_time_volume(u, a, M, 2 * i);
        iv.volume_noise_half = fixed_time_volume(noise, a / 2.0, M, 2 * i + 1);
        iv.volume_ok = volume_dominates(iv.volume_u, iv.volume_noise_half);
        chain.S.push_back(S);
        chain.T_seq.push_back(iv.T);
        chain.intervals.push_back(iv);
        f = noise;
        for (int j = 0; j < d; ++j) {
            f.b0(j) = 0.0;
        }
        prev_index = next_index;
    }
    return chain;
}

GspaceRatioReport gspace_ratio(double t, std::span<std::pair<double, double> const> pairs, int K)
{
    if (!(t > 0.0) || K < 1) {
        throw ConfigError("gspace_ratio needs t > 0 and K >= 1");
    }
    GspaceRatioReport rep;
    for (auto const& [x, y] : pairs) {
        double h = std::abs(x - y);
        h -= std::floor(h);
        double const dist = std::min(h, 1.0 - h);
        if (dist == 0.0) {
            continue;
        }
        double const s = variance_series(VarianceKind::kNDiff, t, x, y, K);
        rep.pairs.emplace_back(x, y);
        rep.distance.push_back(dist);
        rep.series.push_back(s);
        rep.ratio.push_back(s / dist);
    }
    if (rep.ratio.empty()) {
        throw ConfigError("gspace_ratio needs at least one pair with x != y");
    }
    auto const [lo, hi] = std::minmax_element(rep.ratio.begin(), rep.ratio.end());
    rep.min_ratio = *lo;
    rep.max_ratio = *hi;
    rep.spread = rep.max_ratio / rep.min_ratio;
    rep.bounded = rep.spread <= 25.0;
    return rep;
}

double clearing_objective(double alpha, double A, double B, int d)
{
    return -A * std::pow(alpha, d) - B / (alpha * alpha);
}

double clearing_argmax(double A, double B, int d)
{
    if (!(A > 0.0) || !(B > 0.0) || d < 1) {
        throw ConfigError("clearing objective needs A > 0, B > 0 and d >= 1");
    }
    return std::pow(2.0 * B / (d * A), 1.0 / (d + 2.0));
}

ClearingBound clearing_bound(int d, double nu, double a, double J, double T, double log_C0)
{
    if (!(log_C0 < 0.0)) {
        throw ConfigError("log C0 must be negative");
    }
    if (!(T > 0.0) || !(nu > 0.0) || !(J >= 1.0) || !(a > 0.0) || d < 1) {
        throw ConfigError("clearing bound needs T > 0, nu > 0, J >= 1, a > 0, d >= 1");
    }
    ClearingBound out;
    out.c_d = unit_ball_volume(d);
    out.log_C0 = log_C0;
    out.A = nu * std::pow(J, 0.5 * d) * out.c_d * std::pow(2.0, d);
    out.B = -T * log_C0 / (J * J);
    out.alpha_star = clearing_argmax(out.A, out.B, d);
    out.exponent_value = clearing_objective(out.alpha_star, out.A, out.B, d);
    out.clearing_probability = std::exp(-nu * out.c_d * std::pow(out.alpha_star + a, d));
    return out;
}

double student_t_975(std::size_t dof)
{
    static constexpr std::array<double, 30> table{
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
        2.120,  2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (dof == 0) {
        throw ConfigError("t quantile needs at least one degree of freedom");
    }
    if (dof <= table.size()) {
        return table[dof - 1];
    }
    double const z = 1.959963984540054;
    double const n = static_cast<double>(dof);
    return z + (z * z * z + z) / (4.0 * n) + (5 * std::pow(z, 5) + 16 * z * z * z + 3 * z) / (96.0 * n * n);
}

ExponentFit exponent_fit(std::span<double const> Ts, std::span<double const> neg_log_S,
                         std::span<double const> std_errors)
{
    std::size_t const n = Ts.size();
    if (n != neg_log_S.size() || (!std_errors.empty() && std_errors.size() != n)) {
        throw ConfigError("exponent fit inputs must have equal length");
    }
    if (n < 4) {
        throw ConfigError("exponent fit needs at least 4 horizons");
    }
    auto const [tmin, tmax] = std::minmax_element(Ts.begin(), Ts.end());
    if (!(*tmin > 0.0) || *tmax / *tmin < 10.0 - 1e-9) {
        throw ConfigError("exponent fit horizons must be positive and span at least one decade");
    }
    std::vector<double> x(n);
    std::vector<double> y(n);
    std::vector<double> w(n, 1.0);
    bool const weighted = !std_errors.empty();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(neg_log_S[i] > 0.0) || !std::isfinite(neg_log_S[i])) {
            throw ConfigError("exponent fit needs finite positive -log S (survival estimate must be below 1)");
        }
        x[i] = std::log(Ts[i]);
        y[i] = std::log(neg_log_S[i]);
        if (weighted) {
            if (!(std_errors[i] > 0.0)) {
                throw ConfigError("exponent fit standard errors must be positive");
            }
            double const sy = std_errors[i] / neg_log_S[i];
            w[i] = 1.0 / (sy * sy);
        }
    }
    double const sw = std::accumulate(w.begin(), w.end(), 0.0);
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += w[i] * x[i];
        my += w[i] * y[i];
    }
    mx /= sw;
    my /= sw;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    ExponentFit fit;
    fit.n = n;
    fit.weighted = weighted;
    fit.gamma = sxy / sxx;
    fit.intercept = my - fit.gamma * mx;
    double q = 0.0;
    if (weighted) {
        fit.std_error = std::sqrt(1.0 / sxx);
        q = 1.959963984540054;
    } else {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double const r = y[i] - fit.intercept - fit.gamma * x[i];
            rss += r * r;
        }
        fit.std_error = std::sqrt(rss / (n - 2.0) / sxx);
        q = student_t_975(n - 2);
    }
    fit.ci_low = fit.gamma - q * fit.std_error;
    fit.ci_high = fit.gamma + q * fit.std_error;
    return fit;
}

ConfinementReport confinement_frequency(ModelParams const& params, double t, double eta, double c6, int n_sub,
                                        long n_rep, std::uint64_t seed, unsigned threads)
{
    params.validate();
    require_unit_circle(params.J);
    if (!(t > 0.0) || !(eta > 0.0) || !(c6 > 0.0) || n_sub < 1 || n_rep < 1) {
        throw ConfigError("confinement frequency needs t, eta, c6 > 0, n_sub >= 1, n_rep >= 1");
    }
    double const a = params.a;
    ConfinementReport rep;
    rep.t = t;
    rep.window = c6 * std::pow(a, 4.0 + eta);
    rep.n = n_rep;
    std::vector<std::array<int, 4>> hits(n_rep);
    int const M = params.M;
    int const d = params.d;
    parallel_for(static_cast<std::size_t>(n_rep), threads, [&](std::size_t r) {
        RandomStream rng0(seed, stream_id({static_cast<std::uint64_t>(Purpose::kGeneric), r, 0}));
        auto s = evolve(StringState::zero(d, params.K, params.J), t, rng0);
        auto const base = evaluate(s, M);
        auto const x0 = center_of_mass(s);
        bool const range_ok = range_of(base) <= a / 8.0;
        double sup_noise = 0.0;
        double sup_center = 0.0;
        for (int k = 1; k <= n_sub; ++k) {
            RandomStream rng(seed, stream_id({static_cast<std::uint64_t>(Purpose::kGeneric), r,
                                              static_cast<std::uint64_t>(k)}));
            s = evolve(s, rep.window / n_sub, rng);
            auto const field = evaluate(s, M);
            for (int m = 0; m < M; ++m) {
                sup_noise = std::max(sup_noise, distance(field.point(m), base.point(m)));
            }
            sup_center = std::max(sup_center, distance(center_of_mass(s), x0));
        }
        bool const noise_ok = sup_noise <= a / 16.0;
        bool const center_ok = sup_center <= a / 16.0;
        hits[r] = {range_ok, noise_ok, center_ok, range_ok && noise_ok && center_ok};
    });
    std::array<long, 4> total{};
    for (auto const& h : hits) {
        for (int i = 0; i < 4; ++i) {
            total[i] += h[i];
        }
    }
    double const n = static_cast<double>(n_rep);
    rep.freq_range = total[0] / n;
    rep.freq_noise = total[1] / n;
    rep.freq_center = total[2] / n;
    rep.freq_all = total[3] / n;
    return rep;
}

} // namespace string_sausage
