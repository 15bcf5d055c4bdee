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

#include "wdcsim/simcore/rng.hpp"

namespace wdcsim::channel {

enum class Sight { Los, Nlos, Blocked };

const char* to_string(Sight s);

/// Static propagation condition of one beam path. `Blocked` never comes
/// out of the static sampler; it only arises from dynamic obstruction
/// events during a simulation.
struct BlockageState {
    Sight state = Sight::Los;
    double extra_loss_db = 0.0;  // applies only in NLoS
};

/// LoS with probability p_los, otherwise NLoS carrying `nlos_loss_db`.
/// Throws std::invalid_argument for p_los outside [0, 1].
BlockageState sample_blockage(double p_los, double nlos_loss_db, simcore::RngStream& stream);

}  // namespace wdcsim::channel
