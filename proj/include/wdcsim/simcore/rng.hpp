/*
 * Copyright 2026 The wdcsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wdcsim::simcore {

/// Counter-based pseudo-random stream keyed by (seed, stream_id).
///
/// Draw i is a pure function of (seed, stream_id, i), so every consumer
/// gets an independent, replayable sequence regardless of how other
/// subsystems interleave their draws. All arithmetic is 64-bit integer
/// plus one exact double multiply, so sequences are identical across
/// platforms and compilers.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view stream_id);

    /// Next raw 64-bit draw.
    std::uint64_t bits();

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform();

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    /// Exponential with the given mean (> 0); consumes one uniform.
    double exponential(double mean);

    std::uint64_t seed() const { return seed_; }
    const std::string& stream_id() const { return id_; }
    std::uint64_t draw_count() const { return counter_; }

private:
    std::uint64_t seed_;
    std::string id_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace wdcsim::simcore
