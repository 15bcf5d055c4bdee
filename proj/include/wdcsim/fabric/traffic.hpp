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

#include <istream>
#include <map>
#include <ostream>
#include <utility>

namespace wdcsim::fabric {

/// Offered load in bits/s per ordered rack pair. Demands are
/// non-negative and the diagonal is identically zero.
class TrafficMatrix {
public:
    /// bps == 0 erases the entry; src == dst or bps < 0 throws.
    void set(int src, int dst, double bps);
    void add(int src, int dst, double bps);
    double at(int src, int dst) const;
    const std::map<std::pair<int, int>, double>& entries() const { return demand_; }
    double total_bps() const;
    bool empty() const { return demand_.empty(); }

    /// CSV with header `src,dst,bps`.
    static TrafficMatrix from_csv(std::istream& in);
    void to_csv(std::ostream& out) const;

private:
    std::map<std::pair<int, int>, double> demand_;
};

}  // namespace wdcsim::fabric
