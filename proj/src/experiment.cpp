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
#include "string_sausage/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "string_sausage/asymptotics_lab.hpp"
#include "string_sausage/error.hpp"
#include "string_sausage/parallel.hpp"
#include "string_sausage/sausage_geometry.hpp"
#include "string_sausage/spectral_string.hpp"
#include "string_sausage/string_statistics.hpp"
#include "string_sausage/survival_engine.hpp"
#include "string_sausage/trap_environment.hpp"

namespace string_sausage {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto const e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string const& value)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) {
            out.push_back(t);
        }
    }
    return out;
}

double parse_double(std::string const& key, std::string const& text)
{
    double v = 0.0;
    auto const s = trim(text);
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("setting " + key + ": not a number: " + text);
    }
    return v;
}

long long parse_integer(std::string const& key, std::string const& text)
{
    long long v = 0;
    auto const s = trim(text);
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("setting " + key + ": not an integer: " + text);
    }
    return v;
}

std::uint64_t parse_seed(std::string const& key, std::string const& text)
{
    std::uint64_t v = 0;
    auto const s = trim(text);
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("setting " + key + ": not an unsigned 64-bit integer: " + text);
    }
    return v;
}

bool parse_bool(std::string const& key, std::string const& text)
{
    auto const s = trim(text);
    if (s == "1" || s == "true" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "0" || s == "false" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError("setting " + key + ": not a boolean: " + text);
}

std::vector<double> parse_double_list(std::string const& key, std::string const& value)
{
    std::vector<double> out;
    for (auto const& item : split_list(value)) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw ConfigError("setting " + key + ": empty list");
    }
    return out;
}

} // namespace

void apply_setting(ExperimentConfig& c, std::string const& raw_key, std::string const& value)
{
    auto const key = trim(raw_key);
    auto& m = c.model;
    if (key == "experiment") {
        c.experiment = trim(value);
    } else if (key == "d") {
        m.d = static_cast<int>(parse_integer(key, value));
    } else if (key == "J") {
        c.J_values = parse_double_list(key, value);
        m.J = c.J_values.front();
    } else if (key == "nu") {
        c.nu_values = parse_double_list(key, value);
        m.nu = c.nu_values.front();
    } else if (key == "a") {
        c.a_values = parse_double_list(key, value);
        m.a = c.a_values.front();
    } else if (key == "T") {
        c.T_values = parse_double_list(key, value);
        m.T = c.T_values.front();
    } else if (key == "K") {
        m.K = static_cast<int>(parse_integer(key, value));
    } else if (key == "M") {
        m.M = static_cast<int>(parse_integer(key, value));
    } else if (key == "dt") {
        m.dt = parse_double(key, value);
    } else if (key == "tail_tolerance") {
        m.tail_tolerance = parse_double(key, value);
    } else if (key == "potential") {
        auto const v = trim(value);
        if (v == "hard") {
            m.potential = PotentialKind::kHard;
        } else if (v == "soft") {
            m.potential = PotentialKind::kSoftIndicator;
        } else {
            throw ConfigError("setting potential: expected hard or soft, got " + v);
        }
    } else if (key == "height") {
        m.height = parse_double(key, value);
    } else if (key == "n") {
        c.n_replicas = static_cast<long>(parse_integer(key, value));
    } else if (key == "seed") {
        c.seed = parse_seed(key, value);
    } else if (key == "image_seed") {
        c.image_seed = parse_seed(key, value);
    } else if (key == "n_mc") {
        c.n_mc = static_cast<long>(parse_integer(key, value));
    } else if (key == "threads") {
        auto const t = parse_integer(key, value);
        if (t < 0) {
            throw ConfigError("setting threads: must be >= 0");
        }
        c.threads = static_cast<unsigned>(t);
    } else if (key == "strict") {
        c.strict = parse_bool(key, value);
    } else if (key == "allow_coarse") {
        c.allow_coarse = parse_bool(key, value);
    } else if (key == "methods") {
        c.methods = split_list(value);
    } else if (key == "environment") {
        c.environment_path = trim(value);
    } else if (key == "environment_out") {
        c.environment_out = trim(value);
    } else if (key == "input") {
        c.input_path = trim(value);
    } else if (key == "csv") {
        c.csv_path = trim(value);
    } else if (key == "json") {
        c.json_path = trim(value);
    } else {
        throw ConfigError("unknown setting: " + key);
    }
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base)
{
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto const hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig base)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (Json::exception const& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config JSON must be an object");
    }
    for (auto const& [key, v] : j.items()) {
        std::string value;
        if (v.is_array()) {
            for (auto const& item : v) {
                if (!value.empty()) {
                    value += ",";
                }
                value += item.is_string() ? item.get<std::string>() : item.dump();
            }
        } else if (v.is_string()) {
            value = v.get<std::string>();
        } else {
            value = v.dump();
        }
        apply_setting(base, key, value);
    }
    return base;
}

ExperimentConfig load_config_file(std::string const& path, ExperimentConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto const text = ss.str();
    auto const first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_config_json(text, std::move(base));
    }
    return parse_config_text(text, std::move(base));
}

std::vector<std::string> const& experiment_names()
{
    static std::vector<std::string> const names{"simulate",      "sausage",     "survival",
                                                "scaling-check", "diagnostics", "fit"};
    return names;
}

namespace {

template<class T>
std::vector<T> axis(std::vector<T> const& values, T fallback)
{
    return values.empty() ? std::vector<T>{fallback} : values;
}

std::vector<ModelParams> sweep(ExperimentConfig const& c)
{
    std::vector<ModelParams> out;
    for (double J : axis(c.J_values, c.model.J)) {
        for (double nu : axis(c.nu_values, c.model.nu)) {
            for (double a : axis(c.a_values, c.model.a)) {
                for (double T : axis(c.T_values, c.model.T)) {
                    auto p = c.model;
                    p.J = J;
                    p.nu = nu;
                    p.a = a;
                    p.T = T;
                    out.push_back(p);
                }
            }
        }
    }
    return out;
}

} // namespace

void ExperimentConfig::validate() const
{
    auto const& names = experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end()) {
        throw ConfigError("unknown experiment: " + experiment);
    }
    if (!seed) {
        throw ConfigError("a master seed is required");
    }
    if (n_replicas < 1) {
        throw ConfigError("n must be >= 1");
    }
    if (experiment == "fit" && !input_path.empty()) {
        return;
    }
    for (auto const& p : sweep(*this)) {
        p.validate();
    }
}

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_header()
{
    return "experiment,d,J,nu,a,T,method,estimate,stderr,n,seed,resolution_tag";
}

std::string to_csv(std::vector<ResultRow> const& rows)
{
    std::string out = csv_header() + "\n";
    for (auto const& r : rows) {
        out += r.experiment + "," + std::to_string(r.d) + "," + format_double(r.J) + "," + format_double(r.nu) +
               "," + format_double(r.a) + "," + format_double(r.T) + "," + r.method + "," +
               format_double(r.estimate) + "," + format_double(r.std_error) + "," + std::to_string(r.n) + "," +
               std::to_string(r.seed) + "," + r.resolution_tag + "\n";
    }
    return out;
}

namespace {

struct Context {
    ExperimentConfig const& config;
    std::uint64_t seed;
    std::vector<ResultRow> rows;
    Json results = Json::array();

    ResultRow row(ModelParams const& p, std::string method, double estimate, double se, long n) const
    {
        ResultRow r;
        r.experiment = config.experiment;
        r.d = p.d;
        r.J = p.J;
        r.nu = p.nu;
        r.a = p.a;
        r.T = p.T;
        r.method = std::move(method);
        r.estimate = estimate;
        r.std_error = se;
        r.n = n;
        r.seed = seed;
        r.resolution_tag = resolution_report(p).tag;
        return r;
    }

    void emit(ResultRow r, Json extra = Json::object())
    {
        Json j;
        j["method"] = r.method;
        j["params"] = {{"d", r.d}, {"J", r.J}, {"nu", r.nu}, {"a", r.a}, {"T", r.T}};
        j["estimate"] = r.estimate;
        j["stderr"] = r.std_error;
        j["n"] = r.n;
        j["seed"] = r.seed;
        j["resolution"] = r.resolution_tag;
        for (auto const& [k, v] : extra.items()) {
            j[k] = v;
        }
        results.push_back(std::move(j));
        rows.push_back(std::move(r));
    }
};

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(std::vector<double> const& v)
{
    MeanSe out;
    double const n = static_cast<double>(v.size());
    for (double x : v) {
        out.mean += x;
    }
    out.mean /= n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - out.mean) * (x - out.mean);
        }
        out.se = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

void run_simulate(Context& ctx)
{
    auto const& c = ctx.config;
    for (auto const& p : sweep(c)) {
        std::vector<ReplicaEndpoint> ends(c.n_replicas);
        parallel_for(static_cast<std::size_t>(c.n_replicas), c.threads, [&](std::size_t r) {
            StringState last;
            for_each_sample(p, StringState::zero(p.d, p.K, p.J), ctx.seed, r,
                            [&](StringState const& s) { last = s; });
            ends[r].X = center_of_mass(last);
            ends[r].R = radius(last, p.M);
        });
        std::vector<double> sq;
        std::vector<double> radii;
        for (auto const& e : ends) {
            for (double x : e.X) {
                sq.push_back(x * x);
            }
            radii.push_back(e.R);
        }
        auto const v = mean_se(sq);
        auto const rm = mean_se(radii);
        ctx.emit(ctx.row(p, "com_variance", v.mean, v.se, c.n_replicas), {{"expected", p.T / p.J}});
        Json extra = Json::object();
        if (c.n_replicas >= 100) {
            auto const ind = independence_test(ends);
            extra = {{"independence_correlations", ind.correlations},
                     {"independence_threshold", ind.threshold},
                     {"independence_pass", ind.pass}};
        }
        ctx.emit(ctx.row(p, "radius_mean", rm.mean, rm.se, c.n_replicas), extra);
    }
}

void run_sausage(Context& ctx)
{
    auto const& c = ctx.config;
    auto methods = c.methods.empty() ? std::vector<std::string>{"string", "wiener"} : c.methods;
    for (auto const& p : sweep(c)) {
        if (c.strict && !resolution_report(p).fine) {
            throw ResolutionError("sampling moduli exceed a/10 (" + resolution_report(p).tag + ")");
        }
        for (auto const& name : methods) {
            if (name != "string" && name != "wiener") {
                throw ConfigError("sausage methods are string and wiener, got " + name);
            }
            std::vector<double> vols(c.n_replicas);
            std::vector<char> coarse(c.n_replicas, 0);
            parallel_for(static_cast<std::size_t>(c.n_replicas), c.threads, [&](std::size_t r) {
                auto rng = purpose_stream(ctx.seed, Purpose::kVolume, r);
                if (name == "string") {
                    auto const traj = simulate_trajectory(p, StringState::zero(p.d, p.K, p.J), ctx.seed, r);
                    PointCloud cloud;
                    cloud.d = traj.d;
                    cloud.points = traj.values;
                    vols[r] = sausage_volume_hit_or_miss(cloud, p.a, c.n_mc, rng).volume;
                } else {
                    auto const path = record_path(p, StringState::zero(p.d, p.K, p.J), ctx.seed, r);
                    auto const est =
                        wiener_sausage_volume(PointCloud::from_path(path), p.a, c.n_mc, rng, c.allow_coarse);
                    vols[r] = est.volume;
                    coarse[r] = est.coarse ? 1 : 0;
                }
            });
            auto const v = mean_se(vols);
            Json extra = {{"coarse", std::any_of(coarse.begin(), coarse.end(), [](char x) { return x != 0; })}};
            if (name == "wiener" && p.d == 3) {
                extra["spitzer"] = spitzer_volume_3d(p.a, p.T / p.J);
            }
            ctx.emit(ctx.row(p, name + "_hit_or_miss", v.mean, v.se, c.n_replicas), extra);
        }
    }
}

void emit_survival(Context& ctx, ModelParams const& p, SurvivalEstimate const& e, std::string method)
{
    ctx.emit(ctx.row(p, std::move(method), e.p_hat, e.std_error, e.n_replicas),
             {{"p_hat", e.p_hat}, {"ci_low", e.ci_low()}, {"ci_high", e.ci_high()}});
}

void run_survival(Context& ctx)
{
    auto const& c = ctx.config;
    SurvivalOptions opt;
    opt.threads = c.threads;
    opt.n_mc = c.n_mc;
    opt.strict_resolution = c.strict;
    auto const points = sweep(c);
    if (!c.environment_out.empty() && points.size() != 1) {
        throw ConfigError("environment_out needs a single sweep point");
    }
    for (auto const& p : points) {
        bool const hard = p.potential == PotentialKind::kHard;
        auto methods = c.methods;
        if (methods.empty()) {
            methods = !c.environment_path.empty() ? std::vector<std::string>{"quenched"}
                      : hard                      ? std::vector<std::string>{"hard_direct", "hard_via_volume"}
                                                  : std::vector<std::string>{"soft_weight"};
        }
        for (auto const& name : methods) {
            if (name == "quenched") {
                PoissonEnvironment env;
                if (!c.environment_path.empty()) {
                    std::ifstream in(c.environment_path);
                    if (!in) {
                        throw ConfigError("cannot read environment file " + c.environment_path);
                    }
                    std::stringstream ss;
                    ss << in.rdbuf();
                    env = environment_from_json(ss.str(), p.a);
                } else {
                    auto rng = purpose_stream(ctx.seed, Purpose::kEnvironment, ~std::uint64_t{0});
                    env = sample_environment(quenched_box(p, opt), p.nu, rng, p.a);
                }
                if (!c.environment_out.empty()) {
                    std::ofstream out(c.environment_out);
                    out << environment_to_json(env) << "\n";
                    if (!out) {
                        throw ConfigError("cannot write environment file " + c.environment_out);
                    }
                }
                auto const e = quenched(p, env, c.n_replicas, ctx.seed, opt);
                emit_survival(ctx, p, e, std::string("quenched_") + to_string(e.method));
                continue;
            }
            auto const m = survival_method_from_string(name);
            auto const e = m == SurvivalMethod::kSoftWeight ? annealed_soft(p, c.n_replicas, ctx.seed, opt)
                                                            : annealed_hard(p, c.n_replicas, m, ctx.seed, opt);
            emit_survival(ctx, p, e, to_string(m));
        }
    }
}

void run_scaling(Context& ctx)
{
    auto const& c = ctx.config;
    SurvivalOptions opt;
    opt.threads = c.threads;
    opt.n_mc = c.n_mc;
    opt.strict_resolution = c.strict;
    std::uint64_t const image_seed = c.image_seed ? *c.image_seed : ctx.seed + 1;
    for (auto const& p : sweep(c)) {
        auto const rep = scaling_check(p, c.n_replicas, ctx.seed, image_seed, opt);
        Json scaled = {{"T_tilde", rep.scaled.T_tilde},
                       {"nu_tilde", rep.scaled.nu_tilde},
                       {"a_tilde", rep.scaled.a_tilde},
                       {"H_scale", rep.scaled.H_scale},
                       {"overlap", rep.overlap}};
        emit_survival(ctx, p, rep.original, std::string("original_") + to_string(rep.original.method));
        ctx.results.back()["scaled"] = scaled;
        auto r = ctx.row(rep.image.params, std::string("image_") + to_string(rep.image.method), rep.image.p_hat,
                         rep.image.std_error, rep.image.n_replicas);
        r.seed = image_seed;
        ctx.emit(r, {{"p_hat", rep.image.p_hat},
                     {"ci_low", rep.image.ci_low()},
                     {"ci_high", rep.image.ci_high()},
                     {"overlap", rep.overlap}});
    }
}

void run_diagnostics(Context& ctx)
{
    auto const& c = ctx.config;
    auto p = c.model;
    p.J = 1.0;
    p.validate();
    long const n = c.n_replicas;

    // Center of mass increments at lag 0.1.
    {
        auto q = p;
        q.dt = 0.1;
        q.T = 0.1 * static_cast<double>(n);
        auto const path = record_path(q, StringState::zero(q.d, q.K, q.J), ctx.seed, 0);
        std::vector<double> incs;
        for (std::size_t i = 1; i < path.size(); ++i) {
            for (int j = 0; j < q.d; ++j) {
                incs.push_back(path.position(i)[j] - path.position(i - 1)[j]);
            }
        }
        auto const rep = brownian_increment_test(incs, 0.1);
        ctx.emit(ctx.row(q, "bm_increment_variance", rep.variance, rep.variance_stderr, static_cast<long>(rep.n)),
                 {{"expected", 0.1}, {"pass", rep.variance_ok}});
        ctx.emit(ctx.row(q, "bm_increment_ks", rep.ks, rep.ks_critical, static_cast<long>(rep.n)),
                 {{"pass", rep.ks_ok}});
    }
    // Independence of X_T and R_T.
    if (n >= 100) {
        std::vector<ReplicaEndpoint> ends(n);
        parallel_for(static_cast<std::size_t>(n), c.threads, [&](std::size_t r) {
            StringState last;
            for_each_sample(p, StringState::zero(p.d, p.K, p.J), ctx.seed, r, [&](StringState const& s) { last = s; });
            ends[r].X = center_of_mass(last);
            ends[r].R = radius(last, p.M);
        });
        auto const ind = independence_test(ends);
        double worst = 0.0;
        for (double rho : ind.correlations) {
            worst = std::max(worst, std::abs(rho));
        }
        ctx.emit(ctx.row(p, "independence_max_abs_corr", worst, ind.threshold, n), {{"pass", ind.pass}});
    }
    // Range smoothing on random coefficient vectors.
    {
        long held = 0;
        long total = 0;
        for (double t : {1.0, 2.0}) {
            for (std::uint64_t r = 0; r < 100; ++r) {
                auto rng = purpose_stream(ctx.seed, Purpose::kGeneric, r);
                auto s = StringState::zero(p.d, p.K, 1.0);
                for (double& x : s.coeffs) {
                    x = rng.normal();
                }
                held += range_smoothing_check(s, t, p.M).holds ? 1 : 0;
                ++total;
            }
        }
        ctx.emit(ctx.row(p, "range_smoothing_pass_fraction", static_cast<double>(held) / total, 0.0, total));
    }
    // Local Brownian behaviour of the noise increments in space.
    {
        std::vector<std::pair<double, double>> pairs;
        for (int e = 1; e <= 7; ++e) {
            pairs.emplace_back(0.0, std::ldexp(1.0, -e));
        }
        auto const g = gspace_ratio(1.0, pairs);
        ctx.emit(ctx.row(p, "gspace_spread", g.spread, 0.0, static_cast<long>(g.ratio.size())),
                 {{"min_ratio", g.min_ratio}, {"max_ratio", g.max_ratio}, {"pass", g.bounded}});
    }
    // Box counting of the stationary field range.
    {
        auto rng = purpose_stream(ctx.seed, Purpose::kStationary, 0);
        auto const field = sample_stationary_field(p, rng);
        std::vector<double> scales;
        for (int e = 1; e <= 6; ++e) {
            scales.push_back(std::ldexp(1.0, -e));
        }
        auto const bc = box_counting_dimension(PointCloud::from_samples(field), scales);
        ctx.emit(ctx.row(p, "box_count_slope", bc.slope, bc.slope_stderr, p.M), {{"counts", bc.counts}});
    }
    // Stopping chains.
    {
        auto const dl = choose_delta_L(p.a, p.d);
        auto const cal = calibrate_lambda(p, dl.L, 1000, ctx.seed, 0.75, c.threads);
        long const runs = std::min<long>(n, 20);
        std::vector<char> ok(runs);
        std::vector<long> lengths(runs);
        parallel_for(static_cast<std::size_t>(runs), c.threads, [&](std::size_t r) {
            auto const trace = record_trace(p, StringState::zero(p.d, p.K, 1.0), ctx.seed, r);
            auto const chain = stopping_chain(trace, cal.Lambda, dl.delta, dl.L, p.a);
            ok[r] = chain.all_ok() ? 1 : 0;
            lengths[r] = static_cast<long>(chain.intervals.size());
        });
        double const frac = static_cast<double>(std::count(ok.begin(), ok.end(), 1)) / runs;
        ctx.emit(ctx.row(p, "chain_ok_fraction", frac, 0.0, runs),
                 {{"Lambda", cal.Lambda}, {"delta", dl.delta}, {"L", dl.L}, {"E", dl.E}, {"intervals", lengths}});
    }
}

struct FitInput {
    std::vector<double> T;
    std::vector<double> y;
    std::vector<double> se;
};

FitInput read_fit_input(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read fit input " + path);
    }
    FitInput out;
    std::string line;
    std::vector<std::string> header;
    bool first = true;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) {
            cells.push_back(trim(cell));
        }
        if (first) {
            first = false;
            double probe = 0.0;
            auto const& c0 = cells.front();
            if (std::from_chars(c0.data(), c0.data() + c0.size(), probe).ec != std::errc()) {
                header = cells;
                continue;
            }
        }
        auto col = [&](std::string const& name) -> long {
            auto it = std::find(header.begin(), header.end(), name);
            return it == header.end() ? -1 : static_cast<long>(it - header.begin());
        };
        if (col("estimate") >= 0 && col("T") >= 0) {
            double const p = parse_double("estimate", cells.at(col("estimate")));
            out.T.push_back(parse_double("T", cells.at(col("T"))));
            out.y.push_back(-std::log(p));
            if (col("stderr") >= 0) {
                out.se.push_back(parse_double("stderr", cells.at(col("stderr"))) / p);
            }
        } else {
            if (cells.size() < 2) {
                throw ConfigError("fit input rows need T and -log S");
            }
            out.T.push_back(parse_double("T", cells[0]));
            out.y.push_back(parse_double("neg_log_S", cells[1]));
            if (cells.size() > 2) {
                out.se.push_back(parse_double("stderr", cells[2]));
            }
        }
    }
    if (!out.se.empty() && out.se.size() != out.T.size()) {
        throw ConfigError("fit input: stderr given for some rows only");
    }
    return out;
}

void run_fit(Context& ctx)
{
    auto const& c = ctx.config;
    FitInput in;
    ModelParams p = c.model;
    if (!c.input_path.empty()) {
        in = read_fit_input(c.input_path);
    } else {
        SurvivalOptions opt;
        opt.threads = c.threads;
        opt.n_mc = c.n_mc;
        opt.strict_resolution = c.strict;
        auto const method = c.methods.empty()
                                ? (p.potential == PotentialKind::kHard ? SurvivalMethod::kHardViaVolume
                                                                       : SurvivalMethod::kSoftWeight)
                                : survival_method_from_string(c.methods.front());
        for (auto const& q : sweep(c)) {
            auto const e = method == SurvivalMethod::kSoftWeight ? annealed_soft(q, c.n_replicas, ctx.seed, opt)
                                                                 : annealed_hard(q, c.n_replicas, method, ctx.seed, opt);
            emit_survival(ctx, q, e, to_string(method));
            in.T.push_back(q.T);
            in.y.push_back(-std::log(e.p_hat));
            in.se.push_back(e.std_error / e.p_hat);
        }
    }
    auto const fit = exponent_fit(in.T, in.y, in.se);
    auto r = ctx.row(p, "gamma_hat", fit.gamma, fit.std_error, static_cast<long>(fit.n));
    if (!c.input_path.empty()) {
        r.T = 0.0;
        r.resolution_tag = "input";
    }
    ctx.emit(r, {{"ci_low", fit.ci_low}, {"ci_high", fit.ci_high}, {"weighted", fit.weighted},
                 {"reference", static_cast<double>(p.d) / (p.d + 2.0)}});
}

} // namespace

ExperimentOutput run_experiment(ExperimentConfig const& config)
{
    config.validate();
    Context ctx{config, *config.seed, {}, Json::array()};
    auto const& e = config.experiment;
    if (e == "simulate") {
        run_simulate(ctx);
    } else if (e == "sausage") {
        run_sausage(ctx);
    } else if (e == "survival") {
        run_survival(ctx);
    } else if (e == "scaling-check") {
        run_scaling(ctx);
    } else if (e == "diagnostics") {
        run_diagnostics(ctx);
    } else {
        run_fit(ctx);
    }
    Json summary;
    summary["experiment"] = e;
    summary["seed"] = *config.seed;
    summary["n"] = config.n_replicas;
    summary["results"] = std::move(ctx.results);
    ExperimentOutput out;
    out.rows = std::move(ctx.rows);
    out.summary = summary.dump(2);
    return out;
}

} // namespace string_sausage
