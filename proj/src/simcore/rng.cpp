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

#include "wdcsim/simcore/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::simcore {

namespace {

// SplitMix64 finalizer: bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view stream_id)
    : seed_(seed), id_(stream_id) {
    base_ = mix64(mix64(seed) ^ util::fnv1a64(stream_id));
}

std::uint64_t RngStream::bits() {
    ++counter_;
    return mix64(base_ + counter_ * kGamma);
}

double RngStream::uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;  // guard log(0)
    double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::exponential(double mean) {
    if (!(mean > 0)) throw std::invalid_argument("RngStream::exponential: mean must be > 0");
    double u = uniform();
    return -mean * std::log1p(-u);
}

}  // namespace wdcsim::simcore
