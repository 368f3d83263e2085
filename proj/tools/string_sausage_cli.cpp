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
// Command line front end: string-sausage <subcommand> [options]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "string_sausage/error.hpp"
#include "string_sausage/experiment.hpp"

namespace ss = string_sausage;

namespace {

struct Flags {
    std::string config_path;
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    bool hard = false;
    bool soft = false;
    bool strict = false;
    bool print_csv = false;
};

void add_common(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config_path, "key=value or JSON config file");
    for (auto const& key : {"J", "nu", "a", "T"}) {
        sub->add_option(std::string("--") + key, f.lists[key], std::string("value(s) of ") + key + " to sweep")
            ->expected(1, -1);
    }
    struct Opt {
        char const* flag;
        char const* key;
        char const* help;
    };
    static constexpr Opt scalars[] = {
        {"--d", "d", "spatial dimension"},
        {"--K", "K", "Fourier mode cutoff"},
        {"--M", "M", "grid points on the circle"},
        {"--dt", "dt", "sampling step"},
        {"--tail-tol", "tail_tolerance", "tolerance for the neglected mode variance"},
        {"--height", "height", "soft trap height"},
        {"--n", "n", "replicas per sweep point"},
        {"--seed", "seed", "master seed (required)"},
        {"--image-seed", "image_seed", "seed for the unit-length side of scaling-check"},
        {"--n-mc", "n_mc", "hit-or-miss samples per volume"},
        {"--threads", "threads", "worker threads (0: STRING_SAUSAGE_THREADS or all cores)"},
        {"--methods", "methods", "comma separated estimator list"},
        {"--environment", "environment", "fixed environment JSON for quenched runs"},
        {"--environment-out", "environment_out", "write the sampled quenched environment here"},
        {"--input", "input", "CSV of T,-log S[,stderr] or survival output (fit)"},
        {"--csv", "csv", "write result rows to this CSV file"},
        {"--json", "json", "write the JSON summary to this file"},
    };
    for (auto const& o : scalars) {
        sub->add_option(o.flag, f.scalars[o.key], o.help);
    }
    sub->add_flag("--hard", f.hard, "hard traps");
    sub->add_flag("--soft", f.soft, "soft indicator traps");
    sub->add_flag("--strict", f.strict, "fail (exit 3) when the resolution guards are not met");
    sub->add_flag("--print-csv", f.print_csv, "print CSV instead of JSON on stdout");
}

ss::ExperimentConfig build_config(std::string const& experiment, Flags const& f, CLI::App const& sub)
{
    ss::ExperimentConfig c;
    if (!f.config_path.empty()) {
        c = ss::load_config_file(f.config_path);
    }
    c.experiment = experiment;
    for (auto const& [key, values] : f.lists) {
        if (sub.count("--" + key) == 0) {
            continue;
        }
        std::string joined;
        for (auto const& v : values) {
            joined += (joined.empty() ? "" : ",") + v;
        }
        ss::apply_setting(c, key, joined);
    }
    for (auto const& [key, value] : f.scalars) {
        if (!value.empty()) {
            ss::apply_setting(c, key, value);
        }
    }
    if (f.hard && f.soft) {
        throw ss::ConfigError("--hard and --soft are exclusive");
    }
    if (f.hard) {
        c.model.potential = ss::PotentialKind::kHard;
    }
    if (f.soft) {
        c.model.potential = ss::PotentialKind::kSoftIndicator;
    }
    if (f.strict) {
        c.strict = true;
    }
    return c;
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw ss::ConfigError("cannot write " + path);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Random strings in Poisson trap fields: simulation and survival estimates"};
    app.require_subcommand(1);
    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> subs;
    std::vector<std::pair<std::string, std::string>> const descriptions{
        {"simulate", "center of mass and radius statistics"},
        {"sausage", "sausage volumes of the string and of its center of mass"},
        {"survival", "annealed or quenched survival probabilities"},
        {"scaling-check", "compare a circle of length J with its unit-length image"},
        {"diagnostics", "structural checks on the simulated string"},
        {"fit", "fit the growth exponent of -log S_T"},
    };
    for (auto const& [name, help] : descriptions) {
        subs[name] = app.add_subcommand(name, help);
        add_common(subs[name], flags[name]);
    }
    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 2;
    }
    try {
        for (auto const& [name, sub] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            auto const& f = flags[name];
            auto const config = build_config(name, f, *sub);
            auto const out = ss::run_experiment(config);
            auto const csv = ss::to_csv(out.rows);
            if (!config.csv_path.empty()) {
                write_file(config.csv_path, csv);
            }
            if (!config.json_path.empty()) {
                write_file(config.json_path, out.summary + "\n");
            }
            std::cout << (f.print_csv ? csv : out.summary + "\n");
        }
    } catch (ss::ResolutionError const& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return 3;
    } catch (ss::ConfigError const& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
