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
#include <cstdint>
#include <span>
#include <vector>

namespace string_sausage {

//! Axis-aligned box with positive extent in every coordinate.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    int dim() const { return static_cast<int>(lower.size()); }
    double volume() const;
    double max_extent() const;
    bool contains(std::span<double const> z) const;
    bool contains(Box const& other) const;
    //! Throws ConfigError for mismatched corners or a degenerate extent.
    void check() const;
};

/*!
 * Uniform bucket grid over a fixed point set.
 *
 * Points are bucketed by cell over a box and stored contiguously per cell
 * (CSR layout), so the index is immutable and safe for concurrent queries.
 * All queries are exact; the grid only prunes candidates. The cell size is
 * enlarged if needed to keep the number of cells bounded.
 */
class GridIndex {
  public:
    GridIndex() = default;
    GridIndex(int d, std::span<double const> points, Box const& box, double cell_size);

    int dim() const { return d_; }
    std::size_t size() const { return d_ == 0 ? 0 : sorted_.size() / d_; }
    double cell_size() const { return cell_; }
    std::span<double const> points() const { return sorted_; }

    //! Some point lies in the closed ball B(z, r).
    bool any_within(std::span<double const> z, double r) const;
    //! Number of points in the closed ball B(z, r).
    std::size_t count_within(std::span<double const> z, double r) const;
    //! Euclidean distance to the nearest point; +infinity for an empty index.
    double nearest_distance(std::span<double const> z) const;

  private:
    std::int64_t cell_coord(int j, double v) const;
    std::size_t flat(std::span<std::int64_t const> c) const;
    template<class Visit>
    bool visit_range(std::span<double const> z, double r, Visit&& visit) const;

    int d_ = 0;
    double cell_ = 1.0;
    std::vector<double> origin_;
    std::vector<std::int64_t> dims_;
    std::vector<std::size_t> strides_;
    std::vector<std::uint32_t> cell_start_;
    std::vector<double> sorted_;
};

} // namespace string_sausage
