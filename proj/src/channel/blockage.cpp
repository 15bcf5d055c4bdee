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

#include "wdcsim/channel/blockage.hpp"

#include <stdexcept>

namespace wdcsim::channel {

const char* to_string(Sight s) {
    switch (s) {
        case Sight::Los: return "los";
        case Sight::Nlos: return "nlos";
        case Sight::Blocked: return "blocked";
    }
    return "?";
}

BlockageState sample_blockage(double p_los, double nlos_loss_db, simcore::RngStream& stream) {
    if (!(p_los >= 0.0 && p_los <= 1.0))
        throw std::invalid_argument("sample_blockage: p_los outside [0, 1]");
    if (stream.uniform() < p_los) return BlockageState{Sight::Los, 0.0};
    return BlockageState{Sight::Nlos, nlos_loss_db};
}

}  // namespace wdcsim::channel
