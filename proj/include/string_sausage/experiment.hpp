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
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace string_sausage {

/*!
 * One batch run: base model, sweep axes, estimator choices and outputs.
 * Empty sweep axes fall back to the single base value.
 */
struct ExperimentConfig {
    std::string experiment = "survival";
    ModelParams model;
    std::vector<double> T_values;
    std::vector<double> J_values;
    std::vector<double> nu_values;
    std::vector<double> a_values;
    std::vector<std::string> methods;
    long n_replicas = 1000;
    std::optional<std::uint64_t> seed;
    //! Second seed for the unit-length side of scaling-check; seed + 1 if unset.
    std::optional<std::uint64_t> image_seed;
    long n_mc = 4000;
    unsigned threads = 0;
    bool strict = false;
    bool allow_coarse = true;
    //! Fixed environment for quenched survival (JSON file).
    std::string environment_path;
    //! Where to write a freshly sampled environment, if any.
    std::string environment_out;
    //! Input table for fit.
    std::string input_path;
    std::string csv_path;
    std::string json_path;

    //! Throws ConfigError if a sweep point is invalid or the seed is missing.
    void validate() const;
};

/*!
 * Apply "key = value" settings. Lists are comma separated. Keys: experiment,
 * d, J, nu, a, T, K, M, dt, tail_tolerance, potential (hard|soft), height,
 * n, seed, image_seed, n_mc, threads, strict, allow_coarse, methods,
 * environment, environment_out, input, csv, json. Sweep keys J, nu, a, T
 * accept lists.
 */
void apply_setting(ExperimentConfig& config, std::string const& key, std::string const& value);

//! Flat text: one key=value per line, '#' starts a comment.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});
//! JSON object with the same keys; lists may be JSON arrays.
ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig base = {});
//! Picks the format from the first non-blank character ('{' means JSON).
ExperimentConfig load_config_file(std::string const& path, ExperimentConfig base = {});

struct ResultRow {
    std::string experiment;
    int d = 0;
    double J = 1.0;
    double nu = 0.0;
    double a = 0.0;
    double T = 0.0;
    std::string method;
    double estimate = 0.0;
    double std_error = 0.0;
    long n = 0;
    std::uint64_t seed = 0;
    std::string resolution_tag;
};

//! Shortest representation that parses back to the same double.
std::string format_double(double v);

std::string csv_header();
std::string to_csv(std::vector<ResultRow> const& rows);

struct ExperimentOutput {
    std::vector<ResultRow> rows;
    //! JSON summary document.
    std::string summary;
};

//! Run the configured experiment over the cartesian sweep of J, nu, a, T.
ExperimentOutput run_experiment(ExperimentConfig const& config);

//! Names accepted by run_experiment.
std::vector<std::string> const& experiment_names();

} // namespace string_sausage
