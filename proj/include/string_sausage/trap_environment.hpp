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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "rng.hpp"
#include "spatial_index.hpp"
#include "spectral_string.hpp"

namespace string_sausage {

/*!
 * Poisson trap centers restricted to a box.
 *
 * Only traps within distance a of the string can act on it, so a box that
 * covers the string's samples padded by a carries the full law of every
 * survival functional. The index is immutable after construction.
 */
class PoissonEnvironment {
  public:
    PoissonEnvironment() = default;
    PoissonEnvironment(Box box, double nu, std::vector<double> points, double cell_size_hint = 0.0);

    int dim() const { return box_.dim(); }
    Box const& box() const { return box_; }
    double nu() const { return nu_; }
    std::size_t size() const { return index_.size(); }
    //! Trap centers, grouped by index cell.
    std::span<double const> points() const { return index_.points(); }
    GridIndex const& index() const { return index_; }

  private:
    Box box_;
    double nu_ = 0.0;
    GridIndex index_;
};

//! Spatial hash cell size used for a box: max(hint, max extent / 128).
double environment_cell_size(Box const& box, double hint);

//! Poisson(nu * vol) many i.i.d. uniform points in \p box.
PoissonEnvironment sample_environment(Box const& box, double nu, RandomStream& rng,
                                      double cell_size_hint = 0.0);

double min_distance(std::span<double const> z, PoissonEnvironment const& env);

//! V(z) = sum_i H(z - xi_i); +infinity on hard contact (closed ball).
double potential_at(std::span<double const> z, PoissonEnvironment const& env, PotentialSpec const& spec);

/*!
 * Streaming quadrature of int_0^T int_0^J V(u(s,x)) dx ds for a soft potential.
 *
 * Space uses the periodic rectangle rule (dx = J/M), time the trapezoid rule
 * over the actual sample times, so splitting a run at a shared sample time
 * makes the windows add up exactly.
 */
class PathFunctionalAccumulator {
  public:
    PathFunctionalAccumulator(PoissonEnvironment const& env, PotentialSpec spec);

    void add_sample(double t, FieldSamples const& samples);
    double value() const { return total_; }

  private:
    PoissonEnvironment const* env_;
    PotentialSpec spec_;
    double total_ = 0.0;
    double last_t_ = 0.0;
    double last_slice_ = 0.0;
    bool started_ = false;
};

//! Same quadrature over stored snapshots; sample times must be uniformly spaced.
double path_functional(std::span<FieldSamples const> trajectory, std::span<double const> times,
                       PoissonEnvironment const& env, PotentialSpec const& spec);

//! {"d", "nu", "box": {"lower", "upper"}, "points": [[...], ...]} with round-trip precision.
std::string environment_to_json(PoissonEnvironment const& env);
PoissonEnvironment environment_from_json(std::string_view text, double cell_size_hint = 0.0);

} // namespace string_sausage
