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
#include <vector>

namespace wdcsim::util {

/// Shortest round-trip decimal representation of a double (locale-free).
/// Integral values print without a trailing ".0" ("30", not "3e1").
std::string format_double(double value);

/// FNV-1a 64-bit over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// fnv1a64 rendered as a fixed-width 16-char lowercase hex string.
std::string fnv1a64_hex(std::string_view bytes);

/// Splits on a delimiter; keeps empty fields.
std::vector<std::string> split(std::string_view line, char delim);

/// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s);

/// Strict number parsing; throws std::invalid_argument naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);

}  // namespace wdcsim::util
