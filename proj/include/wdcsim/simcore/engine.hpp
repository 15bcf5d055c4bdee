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
#include <functional>
#include <ostream>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

namespace wdcsim::simcore {

/// Simulated time in integer nanoseconds.
using TimeNs = std::int64_t;
using EventId = std::uint64_t;

enum class EventKind {
    FlowStart,
    FlowEnd,
    BlockageOn,
    BlockageOff,
    ReconfigEpoch,
    CollectiveStep,
};

const char* to_string(EventKind kind);

/// One dispatched event, as it appears in the exported log.
struct LogEntry {
    TimeNs time_ns;
    EventId sequence;
    EventKind kind;
    std::string detail;
};

/// Single-threaded discrete-event engine.
///
/// Events with equal fire times dispatch in ascending sequence order, so
/// the dispatch order (fire_at, sequence) is a total order and replays
/// are byte-identical for a given schedule.
class SimEngine {
public:
    using Action = std::function<void(SimEngine&)>;

    TimeNs now() const { return now_; }

    /// Enqueues an event; returns its id (usable with cancel).
    /// Throws std::invalid_argument for fire_at < now ("past event").
    EventId schedule(TimeNs fire_at, EventKind kind, std::string detail, Action action = {});

    /// Cancels a pending event. Cancelling an already-dispatched or
    /// unknown id is a no-op. Returns true if the event was still pending.
    bool cancel(EventId id);

    /// Dispatches every event with fire_at <= t_end in (fire_at, sequence)
    /// order, then advances the clock to t_end. Returns the dispatch count.
    std::size_t run_until(TimeNs t_end);

    const std::vector<LogEntry>& log() const { return log_; }
    std::size_t pending_count() const { return pending_.size(); }

    /// CSV export: header `time_ns,sequence,kind,detail`, LF line endings.
    void write_event_log_csv(std::ostream& out) const;

private:
    struct Pending {
        TimeNs fire_at;
        EventId sequence;
        EventKind kind;
        std::string detail;
        Action action;
    };
    struct Later {
        bool operator()(const Pending& a, const Pending& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.sequence > b.sequence;
        }
    };

    TimeNs now_ = 0;
    EventId next_id_ = 0;
    std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
    std::unordered_set<EventId> pending_;
    std::unordered_set<EventId> cancelled_;
    std::vector<LogEntry> log_;
};

}  // namespace wdcsim::simcore
