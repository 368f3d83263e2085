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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "string_sausage/error.hpp"
#include "string_sausage/experiment.hpp"

using namespace string_sausage;

namespace {

ExperimentConfig quick_survival()
{
    auto c = parse_config_text(R"(
experiment = survival
d = 2
J = 1
nu = 1
a = 0.3
K = 16
M = 48
dt = 0.05
tail_tolerance = 0.01
n = 100
n_mc = 1000
seed = 12
)");
    return c;
}

} // namespace

TEST_CASE("text config")
{
    auto const c = parse_config_text(R"(
# comment
experiment = scaling-check
d = 3
J = 1, 2
nu=0.5
a = 0.2
T = 1,2,4   # trailing comment
potential = soft
height = 2.5
seed = 18446744073709551615
strict = true
methods = hard_direct, soft_weight
)");
    CHECK(c.experiment == "scaling-check");
    CHECK(c.model.d == 3);
    CHECK(c.J_values == std::vector<double>{1.0, 2.0});
    CHECK(c.T_values == std::vector<double>{1.0, 2.0, 4.0});
    CHECK(c.model.potential == PotentialKind::kSoftIndicator);
    CHECK(c.model.height == 2.5);
    CHECK(c.seed.value() == std::numeric_limits<std::uint64_t>::max());
    CHECK(c.strict);
    CHECK(c.methods.size() == 2);
}

TEST_CASE("json config")
{
    auto const c = parse_config_json(R"({"experiment": "survival", "T": [1, 2], "nu": 0.5, "seed": 3,
                                          "potential": "hard", "strict": false})");
    CHECK(c.T_values == std::vector<double>{1.0, 2.0});
    CHECK(c.nu_values == std::vector<double>{0.5});
    CHECK(c.seed.value() == 3);
    CHECK_THROWS_AS(parse_config_json("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_config_json("{not json"), ConfigError);
}

TEST_CASE("config errors")
{
    ExperimentConfig c;
    CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "d", "two"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "potential", "medium"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("no equals sign"), ConfigError);
    auto missing_seed = quick_survival();
    missing_seed.seed.reset();
    CHECK_THROWS_AS(missing_seed.validate(), ConfigError);
    CHECK_THROWS_AS(run_experiment(missing_seed), ConfigError);
    auto bad_name = quick_survival();
    bad_name.experiment = "nope";
    CHECK_THROWS_AS(run_experiment(bad_name), ConfigError);
}

TEST_CASE("format_double round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 1.0833333333333333, 123456789.0}) {
        auto const s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(csv_header() == "experiment,d,J,nu,a,T,method,estimate,stderr,n,seed,resolution_tag");
}

TEST_CASE("survival with no traps gives one everywhere")
{
    auto c = quick_survival();
    c.nu_values = {0.0};
    c.T_values = {0.5, 1.0};
    auto const out = run_experiment(c);
    CHECK(out.rows.size() == 4);
    for (auto const& r : out.rows) {
        CHECK(r.estimate == 1.0);
    }
}

TEST_CASE("four horizons give four rows per estimator")
{
    auto c = quick_survival();
    c.T_values = {0.25, 0.5, 0.75, 1.0};
    c.methods = {"hard_direct", "hard_via_volume"};
    auto const out = run_experiment(c);
    CHECK(out.rows.size() == 8);
    int direct = 0;
    for (auto const& r : out.rows) {
        direct += r.method == "hard_direct" ? 1 : 0;
    }
    CHECK(direct == 4);
}

TEST_CASE("csv is identical across runs and thread counts")
{
    auto c = quick_survival();
    c.T_values = {0.5, 1.0};
    c.threads = 1;
    auto const a = to_csv(run_experiment(c).rows);
    auto const b = to_csv(run_experiment(c).rows);
    c.threads = 3;
    auto const d = to_csv(run_experiment(c).rows);
    CHECK(a == b);
    CHECK(a == d);
    CHECK(a.rfind(csv_header(), 0) == 0);
}

TEST_CASE("fit on a synthetic table")
{
    auto c = quick_survival();
    c.experiment = "fit";
    std::string const path = "fit_input_test.csv";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs("T,neg_log_S\n", f);
        for (double T : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            std::fprintf(f, "%.17g,%.17g\n", T, 7.0 * std::sqrt(T));
        }
        std::fclose(f);
    }
    c.input_path = path;
    auto const out = run_experiment(c);
    REQUIRE_FALSE(out.rows.empty());
    CHECK(out.rows.back().method == "gamma_hat");
    CHECK(std::abs(out.rows.back().estimate - 0.5) < 1e-9);
    std::remove(path.c_str());
}

TEST_CASE("every experiment name is accepted")
{
    CHECK(experiment_names().size() == 6);
}
