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
#include <optional>
#include <span>
#include <string>

#include "model.hpp"
#include "sausage_geometry.hpp"
#include "spectral_string.hpp"
#include "trap_environment.hpp"

namespace string_sausage {

enum class SurvivalMethod { kHardDirect, kHardViaVolume, kSoftWeight };
char const* to_string(SurvivalMethod method);
//! Accepts "hard_direct", "hard_via_volume", "soft_weight".
SurvivalMethod survival_method_from_string(std::string const& name);

struct SurvivalEstimate {
    double p_hat = 1.0;
    double std_error = 0.0;
    long n_replicas = 0;
    SurvivalMethod method = SurvivalMethod::kHardDirect;
    ModelParams params;
    std::uint64_t seed = 0;
    std::string resolution_tag;

    //! 95% interval: Clopper-Pearson for the indicator method, normal approximation otherwise.
    double ci_low() const;
    double ci_high() const;
};

bool ci_overlap(SurvivalEstimate const& x, SurvivalEstimate const& y);

struct SurvivalOptions {
    unsigned threads = 0;
    //! Hit-or-miss samples per replica for hard_via_volume.
    long n_mc = 4000;
    //! Extra padding of the environment box beyond a.
    double margin = 0.5;
    //! Initial profile; the zero string if unset.
    std::optional<StringState> initial;
    //! Throw ResolutionError when the sampling moduli exceed a/10.
    bool strict_resolution = false;
};

/*!
 * Hard-obstacle contact test over every sampled (s, x).
 * True iff all sampled points are at distance > a from every trap. Throws
 * CoverageError if the environment box does not contain the trajectory box
 * padded by a.
 */
bool survive_hard_once(Trajectory const& traj, PoissonEnvironment const& env, double a);

//! Exact-in-law environment window for one trajectory: its box padded by a + margin.
Box environment_box(Trajectory const& traj, double a, double margin = 0.5);

//! Everything one (noise, environment) replica contributes to the estimators.
struct ReplicaOutcome {
    bool hard_survived = true;
    double soft_weight = 1.0;
    double path_functional = 0.0;
    std::size_t traps = 0;
};

/*!
 * Simulates replica \p replica and its environment, then evaluates both the
 * hard indicator and the soft weight (with the params height) on the same
 * pair, so pathwise comparisons are exact.
 */
ReplicaOutcome replica_outcome(ModelParams const& params, std::uint64_t seed, std::uint64_t replica,
                               SurvivalOptions const& options = {});

//! S_T for hard traps: direct contact indicator or exp(-nu |sausage|) with hit-or-miss volume.
SurvivalEstimate annealed_hard(ModelParams const& params, long n_rep, SurvivalMethod method, std::uint64_t seed,
                               SurvivalOptions const& options = {});

//! S_T for SoftIndicator traps: mean of exp(-int int V).
SurvivalEstimate annealed_soft(ModelParams const& params, long n_rep, std::uint64_t seed,
                               SurvivalOptions const& options = {});

//! Noise-only average with the environment held fixed; kind follows params.potential.
SurvivalEstimate quenched(ModelParams const& params, PoissonEnvironment const& env, long n_rep, std::uint64_t seed,
                          SurvivalOptions const& options = {});

/*!
 * A box around the initial string large enough that replicas essentially
 * never leave it: 8 standard deviations of the string per coordinate, plus
 * a + margin. Used to sample fixed environments for quenched runs.
 */
Box quenched_box(ModelParams const& params, SurvivalOptions const& options = {});

struct ScaledParams {
    double T_tilde = 0.0;
    double nu_tilde = 0.0;
    double a_tilde = 0.0;
    double H_scale = 1.0;
    double height_tilde = 0.0;
};

//! (T J^-2, nu J^(d/2), a J^(-1/2), J^3); soft height is multiplied by J^3.
ScaledParams scaling_transform(ModelParams const& params);

/*!
 * Unit-length model with the same law of survival. K and M are kept, and dt
 * is divided by J^2, so both sides are sampled at matching resolution.
 */
ModelParams unit_length_image(ModelParams const& params);

struct ScalingReport {
    ScaledParams scaled;
    SurvivalEstimate original;
    SurvivalEstimate image;
    bool overlap = false;
};

//! Annealed estimates at J and at the unit-length image, with separate seeds.
ScalingReport scaling_check(ModelParams const& params, long n_rep, std::uint64_t seed_original,
                            std::uint64_t seed_image, SurvivalOptions const& options = {});

} // namespace string_sausage
