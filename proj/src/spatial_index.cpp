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
#include "string_sausage/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "string_sausage/error.hpp"

namespace string_sausage {
namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 22;

double sq_dist(double const* a, std::span<double const> z)
{
    double s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        double const diff = a[j] - z[j];
        s += diff * diff;
    }
    return s;
}

} // namespace

double Box::volume() const
{
    double v = 1.0;
    for (int j = 0; j < dim(); ++j) {
        v *= upper[j] - lower[j];
    }
    return v;
}

double Box::max_extent() const
{
    double e = 0.0;
    for (int j = 0; j < dim(); ++j) {
        e = std::max(e, upper[j] - lower[j]);
    }
    return e;
}

bool Box::contains(std::span<double const> z) const
{
    for (int j = 0; j < dim(); ++j) {
        if (z[j] < lower[j] || z[j] > upper[j]) {
            return false;
        }
    }
    return true;
}

bool Box::contains(Box const& other) const
{
    if (other.dim() != dim()) {
        return false;
    }
    for (int j = 0; j < dim(); ++j) {
        if (other.lower[j] < lower[j] || other.upper[j] > upper[j]) {
            return false;
        }
    }
    return true;
}

void Box::check() const
{
    if (lower.empty() || lower.size() != upper.size()) {
        throw ConfigError("box corners must have the same nonzero dimension");
    }
    for (int j = 0; j < dim(); ++j) {
        if (!(upper[j] > lower[j]) || !std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
            throw ConfigError("box must have positive finite extent in every coordinate");
        }
    }
}

GridIndex::GridIndex(int d, std::span<double const> points, Box const& box, double cell_size)
    : d_(d), cell_(cell_size), origin_(box.lower)
{
    box.check();
    if (box.dim() != d || points.size() % d != 0) {
        throw ConfigError("grid index dimension mismatch");
    }
    if (!(cell_ > 0.0)) {
        throw ConfigError("grid cell size must be positive");
    }
    auto total_cells = [&] {
        double total = 1.0;
        for (int j = 0; j < d; ++j) {
            total *= std::max(1.0, std::ceil((box.upper[j] - box.lower[j]) / cell_));
        }
        return total;
    };
    while (total_cells() > static_cast<double>(kMaxCells)) {
        cell_ *= 1.5;
    }
    dims_.resize(d);
    strides_.resize(d);
    std::size_t stride = 1;
    for (int j = d - 1; j >= 0; --j) {
        dims_[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((box.upper[j] - box.lower[j]) / cell_)));
        strides_[j] = stride;
        stride *= static_cast<std::size_t>(dims_[j]);
    }
    std::size_t const n = points.size() / d;
    if (n >= std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("too many points for one grid index");
    }
    std::vector<std::size_t> cell_of(n);
    std::vector<std::int64_t> c(d);
    cell_start_.assign(stride + 1, 0);
    for (std::size_t p = 0; p < n; ++p) {
        for (int j = 0; j < d; ++j) {
            c[j] = std::clamp<std::int64_t>(cell_coord(j, points[p * d + j]), 0, dims_[j] - 1);
        }
        cell_of[p] = flat(c);
        ++cell_start_[cell_of[p] + 1];
    }
    for (std::size_t i = 0; i < stride; ++i) {
        cell_start_[i + 1] += cell_start_[i];
    }
    std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
    sorted_.resize(points.size());
    for (std::size_t p = 0; p < n; ++p) {
        auto const slot = fill[cell_of[p]]++;
        std::copy_n(points.data() + p * d, d, sorted_.data() + static_cast<std::size_t>(slot) * d);
    }
}

std::int64_t GridIndex::cell_coord(int j, double v) const
{
    return static_cast<std::int64_t>(std::floor((v - origin_[j]) / cell_));
}

std::size_t GridIndex::flat(std::span<std::int64_t const> c) const
{
    std::size_t f = 0;
    for (int j = 0; j < d_; ++j) {
        f += static_cast<std::size_t>(c[j]) * strides_[j];
    }
    return f;
}

// Visit every point in cells overlapping the bounding cube of B(z, r).
// visit(point_ptr) returns true to stop early; returns whether it stopped.
template<class Visit>
bool GridIndex::visit_range(std::span<double const> z, double r, Visit&& visit) const
{
    if (sorted_.empty()) {
        return false;
    }
    std::vector<std::int64_t> lo(d_);
    std::vector<std::int64_t> hi(d_);
    for (int j = 0; j < d_; ++j) {
        lo[j] = std::max<std::int64_t>(0, cell_coord(j, z[j] - r));
        hi[j] = std::min<std::int64_t>(dims_[j] - 1, cell_coord(j, z[j] + r));
        if (lo[j] > hi[j]) {
            return false;
        }
    }
    std::vector<std::int64_t> c = lo;
    while (true) {
        std::size_t const cell = flat(c);
        for (auto i = cell_start_[cell]; i < cell_start_[cell + 1]; ++i) {
            if (visit(sorted_.data() + static_cast<std::size_t>(i) * d_)) {
                return true;
            }
        }
        int j = d_ - 1;
        while (j >= 0 && c[j] == hi[j]) {
            c[j] = lo[j];
            --j;
        }
        if (j < 0) {
            return false;
        }
        ++c[j];
    }
}

bool GridIndex::any_within(std::span<double const> z, double r) const
{
    double const r2 = r * r;
    return visit_range(z, r, [&](double const* p) { return sq_dist(p, z) <= r2; });
}

std::size_t GridIndex::count_within(std::span<double const> z, double r) const
{
    double const r2 = r * r;
    std::size_t count = 0;
    visit_range(z, r, [&](double const* p) {
        if (sq_dist(p, z) <= r2) {
            ++count;
        }
        return false;
    });
    return count;
}

double GridIndex::nearest_distance(std::span<double const> z) const
{
    if (sorted_.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    std::vector<std::int64_t> base(d_);
    std::int64_t max_ring = 0;
    for (int j = 0; j < d_; ++j) {
        base[j] = std::clamp<std::int64_t>(cell_coord(j, z[j]), 0, dims_[j] - 1);
        max_ring = std::max({max_ring, base[j], dims_[j] - 1 - base[j]});
    }
    double best2 = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> off(d_);
    std::vector<std::int64_t> c(d_);
    for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
        // Cells at Chebyshev index distance exactly ring from base.
        std::fill(off.begin(), off.end(), -ring);
        while (true) {
            bool on_shell = false;
            bool inside = true;
            for (int j = 0; j < d_; ++j) {
                on_shell = on_shell || off[j] == ring || off[j] == -ring;
                c[j] = base[j] + off[j];
                inside = inside && c[j] >= 0 && c[j] < dims_[j];
            }
            if (on_shell && inside) {
                std::size_t const cell = flat(c);
                for (auto i = cell_start_[cell]; i < cell_start_[cell + 1]; ++i) {
                    best2 = std::min(best2, sq_dist(sorted_.data() + static_cast<std::size_t>(i) * d_, z));
                }
            }
            int j = d_ - 1;
            while (j >= 0 && off[j] == ring) {
                off[j] = -ring;
                --j;
            }
            if (j < 0) {
                break;
            }
            ++off[j];
        }
        // Unvisited cells are at least ring whole cells away from z.
        double const bound = static_cast<double>(ring) * cell_;
        if (best2 <= bound * bound) {
            break;
        }
    }
    return std::sqrt(best2);
}

} // namespace string_sausage
