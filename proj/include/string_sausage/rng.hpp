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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace string_sausage {

//! Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

//! Stream purposes. Combined with replica and step indices to derive stream ids.
enum class Purpose : std::uint64_t {
    kNoise = 1,
    kEnvironment = 2,
    kVolume = 3,
    kStationary = 4,
    kCalibration = 5,
    kGeneric = 6,
};

//! Hash a path of indices into a 64-bit stream id (SplitMix64 chaining).
std::uint64_t stream_id(std::initializer_list<std::uint64_t> path);

/*!
 * Counter-based random stream.
 *
 * Every draw is a pure function of (seed, stream, position), so a stream can be
 * re-created anywhere and results never depend on which thread consumed it.
 * Satisfies UniformRandomBitGenerator.
 */
class RandomStream {
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    //! Uniform on the open interval (0, 1).
    double uniform();
    //! Standard normal via Box-Muller; pairs are consumed in order.
    double normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

//! Stream for the noise increments of one time step of one replica.
inline RandomStream noise_stream(std::uint64_t seed, std::uint64_t replica, std::uint64_t step)
{
    return RandomStream(seed, stream_id({static_cast<std::uint64_t>(Purpose::kNoise), replica, step}));
}

inline RandomStream purpose_stream(std::uint64_t seed, Purpose purpose, std::uint64_t replica)
{
    return RandomStream(seed, stream_id({static_cast<std::uint64_t>(purpose), replica}));
}

} // namespace string_sausage
