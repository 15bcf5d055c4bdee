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

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "wdcsim/simcore/engine.hpp"
#include "wdcsim/simcore/rng.hpp"

using namespace wdcsim::simcore;

TEST_CASE("schedule accepts fire_at == now and hands out sequential ids") {
    SimEngine engine;
    CHECK(engine.schedule(0, EventKind::FlowStart, "a") == 0);
    CHECK(engine.schedule(5, EventKind::FlowStart, "b") == 1);
}

TEST_CASE("events at the same time dispatch in sequence order") {
    SimEngine engine;
    std::vector<int> order;
    engine.schedule(100, EventKind::FlowStart, "first", [&](SimEngine&) { order.push_back(5); });
    engine.schedule(100, EventKind::FlowStart, "second", [&](SimEngine&) { order.push_back(6); });
    engine.run_until(100);
    CHECK(order == std::vector<int>{5, 6});
}

TEST_CASE("scheduling in the past is rejected") {
    SimEngine engine;
    engine.schedule(60, EventKind::FlowStart, "x");
    engine.run_until(60);
    CHECK_THROWS_WITH_AS(engine.schedule(50, EventKind::FlowStart, "late"),
                         doctest::Contains("past event"), std::invalid_argument);
}

TEST_CASE("run_until on an empty queue still advances the clock") {
    SimEngine engine;
    CHECK(engine.run_until(1000) == 0);
    CHECK(engine.now() == 1000);
}

TEST_CASE("run_until boundary is inclusive") {
    SimEngine engine;
    engine.schedule(10, EventKind::FlowStart, "a");
    engine.schedule(10, EventKind::FlowStart, "b");
    engine.schedule(20, EventKind::FlowStart, "c");
    CHECK(engine.run_until(15) == 2);
    CHECK(engine.now() == 15);
    CHECK(engine.run_until(20) == 1);
}

TEST_CASE("a handler can schedule a child inside the window") {
    // Hand-traced cascade: A@10 spawns child@11, B@10 spawns nothing,
    // run_until(15) must dispatch A, B, then the child: 3 dispatches.
    SimEngine engine;
    std::vector<std::string> seen;
    engine.schedule(10, EventKind::FlowStart, "A", [&](SimEngine& e) {
        seen.push_back("A");
        e.schedule(e.now() + 1, EventKind::FlowEnd, "child",
                   [&](SimEngine&) { seen.push_back("child"); });
    });
    engine.schedule(10, EventKind::FlowStart, "B", [&](SimEngine&) { seen.push_back("B"); });
    CHECK(engine.run_until(15) == 3);
    CHECK(seen == std::vector<std::string>{"A", "B", "child"});
}

TEST_CASE("cancel removes a pending event") {
    SimEngine engine;
    bool fired = false;
    auto id = engine.schedule(10, EventKind::FlowStart, "x", [&](SimEngine&) { fired = true; });
    CHECK(engine.cancel(id));
    CHECK_FALSE(engine.cancel(id));
    CHECK(engine.run_until(20) == 0);
    CHECK_FALSE(fired);
}

TEST_CASE("dispatch order is the total order (fire_at, sequence)") {
    SimEngine engine;
    RngStream rng(1, "order-test");
    for (int i = 0; i < 200; ++i)
        engine.schedule(static_cast<TimeNs>(rng.bits() % 50), EventKind::FlowStart,
                        std::to_string(i));
    engine.run_until(50);
    const auto& log = engine.log();
    REQUIRE(log.size() == 200);
    for (std::size_t i = 1; i < log.size(); ++i) {
        bool ordered = log[i - 1].time_ns < log[i].time_ns ||
                       (log[i - 1].time_ns == log[i].time_ns &&
                        log[i - 1].sequence < log[i].sequence);
        CHECK(ordered);
    }
}

TEST_CASE("event log CSV format") {
    SimEngine engine;
    engine.schedule(3, EventKind::BlockageOn, "2-5");
    engine.run_until(3);
    std::ostringstream out;
    engine.write_event_log_csv(out);
    CHECK(out.str() == "time_ns,sequence,kind,detail\n3,0,blockage-on,2-5\n");
}

TEST_CASE("identical (seed, stream) draws are identical; streams are independent") {
    RngStream a1(1234, "blockage");
    RngStream a2(1234, "blockage");
    RngStream b(1234, "traffic");
    bool streams_differ = false;
    for (int i = 0; i < 1000; ++i) {
        double u1 = a1.uniform();
        double u2 = a2.uniform();
        CHECK(u1 == u2);
        if (u1 != b.uniform()) streams_differ = true;
    }
    CHECK(streams_differ);
}

TEST_CASE("uniform draws live in [0,1) with the right mean") {
    RngStream rng(42, "uniform-check");
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
}

TEST_CASE("normal and exponential have sane first moments") {
    RngStream rng(7, "moments");
    double nsum = 0, nsq = 0, esum = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        nsum += z;
        nsq += z * z;
        esum += rng.exponential(400.0);
    }
    CHECK(std::abs(nsum / n) < 0.02);
    CHECK(std::abs(nsq / n - 1.0) < 0.03);
    CHECK(std::abs(esum / n - 400.0) < 10.0);
}
