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

#include "wdcsim/fabric/traffic.hpp"

#include <stdexcept>
#include <string>

#include "wdcsim/util/text.hpp"

namespace wdcsim::fabric {

void TrafficMatrix::set(int src, int dst, double bps) {
    if (src == dst) throw std::invalid_argument("TrafficMatrix: diagonal demands must be zero");
    if (bps < 0) throw std::invalid_argument("TrafficMatrix: negative demand");
    if (bps == 0)
        demand_.erase({src, dst});
    else
        demand_[{src, dst}] = bps;
}

void TrafficMatrix::add(int src, int dst, double bps) {
    set(src, dst, at(src, dst) + bps);
}

double TrafficMatrix::at(int src, int dst) const {
    auto it = demand_.find({src, dst});
    return it == demand_.end() ? 0.0 : it->second;
}

double TrafficMatrix::total_bps() const {
    double total = 0;
    for (const auto& [pair, bps] : demand_) total += bps;
    return total;
}

TrafficMatrix TrafficMatrix::from_csv(std::istream& in) {
    TrafficMatrix tm;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = util::trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != "src,dst,bps")
                throw std::invalid_argument("traffic csv line " + std::to_string(line_no) +
                                            ": expected header src,dst,bps");
            header_seen = true;
            continue;
        }
        auto fields = util::split(text, ',');
        if (fields.size() != 3)
            throw std::invalid_argument("traffic csv line " + std::to_string(line_no) +
                                        ": expected 3 fields");
        int src = static_cast<int>(util::parse_int(fields[0], "src"));
        int dst = static_cast<int>(util::parse_int(fields[1], "dst"));
        double bps = util::parse_double(fields[2], "bps");
        tm.set(src, dst, bps);
    }
    return tm;
}

void TrafficMatrix::to_csv(std::ostream& out) const {
    out << "src,dst,bps\n";
    for (const auto& [pair, bps] : demand_)
        out << pair.first << ',' << pair.second << ',' << util::format_double(bps) << '\n';
}

}  // namespace wdcsim::fabric
