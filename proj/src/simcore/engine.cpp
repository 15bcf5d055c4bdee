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

#include "wdcsim/simcore/engine.hpp"

#include <stdexcept>

namespace wdcsim::simcore {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::FlowStart: return "flow-start";
        case EventKind::FlowEnd: return "flow-end";
        case EventKind::BlockageOn: return "blockage-on";
        case EventKind::BlockageOff: return "blockage-off";
        case EventKind::ReconfigEpoch: return "reconfig-epoch";
        case EventKind::CollectiveStep: return "collective-step";
    }
    return "?";
}

EventId SimEngine::schedule(TimeNs fire_at, EventKind kind, std::string detail, Action action) {
    if (fire_at < now_)
        throw std::invalid_argument("schedule: past event (fire_at=" + std::to_string(fire_at) +
                                    " < now=" + std::to_string(now_) + ")");
    EventId id = next_id_++;
    queue_.push(Pending{fire_at, id, kind, std::move(detail), std::move(action)});
    pending_.insert(id);
    return id;
}

bool SimEngine::cancel(EventId id) {
    if (!pending_.erase(id)) return false;
    cancelled_.insert(id);
    return true;
}

std::size_t SimEngine::run_until(TimeNs t_end) {
    if (t_end < now_)
        throw std::invalid_argument("run_until: t_end precedes current time");
    std::size_t dispatched = 0;
    while (!queue_.empty() && queue_.top().fire_at <= t_end) {
        Pending ev = queue_.top();
        queue_.pop();
        if (auto it = cancelled_.find(ev.sequence); it != cancelled_.end()) {
            cancelled_.erase(it);
            continue;
        }
        pending_.erase(ev.sequence);
        now_ = ev.fire_at;
        log_.push_back(LogEntry{ev.fire_at, ev.sequence, ev.kind, ev.detail});
        ++dispatched;
        if (ev.action) ev.action(*this);
    }
    now_ = t_end;
    return dispatched;
}

void SimEngine::write_event_log_csv(std::ostream& out) const {
    out << "time_ns,sequence,kind,detail\n";
    for (const LogEntry& e : log_)
        out << e.time_ns << ',' << e.sequence << ',' << to_string(e.kind) << ',' << e.detail << '\n';
}

}  // namespace wdcsim::simcore
