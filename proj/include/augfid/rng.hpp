// Copyright 2026 The augfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace augfid {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// SplitMix64 finalizer folded over `parts`; used to derive stream ids from
/// structured indices such as (cell, channel).
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> parts);

/// Counter-based random stream. Block `counter` of stream (seed, stream_id) is
/// philox4x32_10({counter_lo, counter_hi, stream_lo, stream_hi}, {seed_lo, seed_hi});
/// each block yields two 64-bit words. The sequence depends only on
/// (seed, stream_id), never on thread count or platform.
class RngStream {
   public:
    static constexpr std::string_view kAlgorithm = "philox4x32-10";

    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint64_t counter = 0)
        : seed_(seed), stream_id_(stream_id), counter_(counter) {}

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Uniform on (0, 1); never returns an endpoint.
    double uniform_open();

    /// A fresh stream with the same seed and stream id derive_stream_id({stream_id, child}).
    RngStream split(std::uint64_t child) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    /// Index of the next unconsumed block.
    std::uint64_t counter() const { return counter_; }

    friend bool operator==(const RngStream &, const RngStream &) = default;

   private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace augfid
