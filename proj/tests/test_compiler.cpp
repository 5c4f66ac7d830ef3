// Copyright 2026 The qstack developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <map>

#include "qstack/compiler.hpp"
#include "qstack/error.hpp"
#include "qstack/simulator.hpp"
#include "support.hpp"

using namespace qstack;

namespace {

Circuit ghz_chain(int n, bool reversed = false) {
    Circuit c;
    c.num_qubits = n;
    append(c, gate1(Opcode::H, 0));
    if (reversed) {
        for (int q = n - 1; q >= 1; --q) {
            append(c, gate2(Opcode::CNOT, 0, q));
        }
    } else {
        for (int q = 1; q < n; ++q) {
            append(c, gate2(Opcode::CNOT, q - 1, q));
        }
    }
    return c;
}

Circuit bell() {
    Circuit c;
    c.num_qubits = 2;
    append(c, gate1(Opcode::H, 0));
    append(c, gate2(Opcode::CNOT, 0, 1));
    return c;
}

void check_schedule_legality(const ScheduledCircuit &sched, const Topology &topo) {
    // No position may be busy in two overlapping [start, end) windows.
    std::map<int, std::vector<std::pair<int, int>>> windows;
    for (size_t b = 0; b < sched.circuit.bundles.size(); ++b) {
        int start = sched.start_cycles[b];
        for (const Gate &g : sched.circuit.bundles[b].gates) {
            int end = start + topo.duration(g.opcode);
            for (int q : g.qubits) {
                windows[q].push_back({start, end});
            }
        }
    }
    for (auto &[q, spans] : windows) {
        std::sort(spans.begin(), spans.end());
        for (size_t i = 0; i + 1 < spans.size(); ++i) {
            CHECK_MESSAGE(spans[i].second <= spans[i + 1].first,
                          "overlap on position ", q);
        }
    }
}

void check_routed_adjacency(const Circuit &circuit, const Topology &topo) {
    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            if (g.qubits.size() == 2) {
                CHECK(topo.adjacent(g.qubits[0], g.qubits[1]));
            }
        }
    }
}

} // namespace

TEST_CASE("decompose rewrites swap into three cnots") {
    Circuit c;
    c.num_qubits = 2;
    append(c, gate2(Opcode::SWAP, 0, 1));
    Circuit d = decompose(c, false);
    REQUIRE(d.bundles.size() == 3);
    CHECK(d.bundles[0].gates[0] == gate2(Opcode::CNOT, 0, 1));
    CHECK(d.bundles[1].gates[0] == gate2(Opcode::CNOT, 1, 0));
    CHECK(d.bundles[2].gates[0] == gate2(Opcode::CNOT, 0, 1));
}

TEST_CASE("decompose is the identity without swaps") {
    Rng rng(11);
    Circuit c = testing::random_unitary_circuit(rng, 3, 20);
    Circuit no_swaps;
    no_swaps.num_qubits = 3;
    for (const Bundle &b : c.bundles) {
        if (b.gates[0].opcode != Opcode::SWAP) {
            append(no_swaps, b.gates[0]);
        }
    }
    CHECK(decompose(no_swaps, false) == no_swaps);
    CHECK(decompose(c, true) == c);
}

TEST_CASE("decompose preserves circuit semantics") {
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = testing::random_unitary_circuit(rng, 4, 30);
        QuantumState original = run_statevector(c);
        QuantumState lowered = run_statevector(decompose(c, false));
        CHECK(testing::max_amplitude_diff(original, lowered) < 1e-10);
    }
}

TEST_CASE("identity placement maps qubit i to position i") {
    Topology topo = Topology::grid(2, 2);
    Placement p = place_initial(bell(), topo, PlacementStrategy::IDENTITY);
    CHECK(p.pos_of_logical == std::vector<int>{0, 1});
    CHECK(p.is_bijection());
}

TEST_CASE("interaction placement puts the dominant pair on an edge") {
    Circuit c;
    c.num_qubits = 2;
    for (int i = 0; i < 5; ++i) {
        append(c, gate2(Opcode::CNOT, 0, 1));
    }
    Topology topo = Topology::grid(2, 2);
    Placement p = place_initial(c, topo, PlacementStrategy::INTERACTION_DEGREE);
    CHECK(topo.adjacent(p.position(0), p.position(1)));
}

TEST_CASE("interaction placement degrades to identity without two-qubit gates") {
    Circuit c;
    c.num_qubits = 3;
    append(c, gate1(Opcode::H, 0));
    append(c, gate1(Opcode::X, 2));
    Topology topo = Topology::grid(2, 2);
    Placement p = place_initial(c, topo, PlacementStrategy::INTERACTION_DEGREE);
    CHECK(p.pos_of_logical == std::vector<int>{0, 1, 2});
}

TEST_CASE("placement rejects circuits larger than the topology") {
    Circuit c;
    c.num_qubits = 5;
    Topology topo = Topology::grid(2, 2);
    CHECK_THROWS_AS(place_initial(c, topo), Error);
}

TEST_CASE("routing an already-adjacent gate inserts nothing") {
    Circuit c = bell();
    Topology topo = Topology::grid(2, 2);
    RouteResult r = route(c, topo, Placement::identity(2, 4));
    CHECK(r.swaps_inserted == 0);
    CHECK(r.circuit.bundles == c.bundles);
    CHECK(r.final_placement.pos_of_logical == std::vector<int>{0, 1});
}

TEST_CASE("routing walks the control along the line") {
    Circuit c;
    c.num_qubits = 3;
    append(c, gate2(Opcode::CNOT, 0, 2));
    Topology line = Topology::grid(1, 3);
    RouteResult r = route(c, line, Placement::identity(3, 3));
    CHECK(r.swaps_inserted == 1);
    REQUIRE(r.circuit.bundles.size() == 2);
    CHECK(r.circuit.bundles[0].gates[0] == gate2(Opcode::SWAP, 0, 1));
    CHECK(r.circuit.bundles[1].gates[0] == gate2(Opcode::CNOT, 1, 2));
    CHECK(r.final_placement.pos_of_logical == std::vector<int>{1, 0, 2});
}

TEST_CASE("independent gates schedule into one bundle") {
    Circuit c;
    c.num_qubits = 2;
    append(c, gate1(Opcode::H, 0));
    append(c, gate1(Opcode::X, 1));
    ScheduledCircuit sched = schedule_asap(c, Topology::grid(1, 2));
    REQUIRE(sched.circuit.bundles.size() == 1);
    CHECK(sched.circuit.bundles[0].gates.size() == 2);
    CHECK(sched.start_cycles == std::vector<int>{0});
    CHECK(sched.latency == 1);
}

TEST_CASE("dependent gates respect durations") {
    Circuit c;
    c.num_qubits = 2;
    append(c, gate1(Opcode::H, 0));
    append(c, gate2(Opcode::CNOT, 0, 1));
    ScheduledCircuit sched = schedule_asap(c, Topology::grid(1, 2));
    CHECK(sched.start_cycles == std::vector<int>{0, 1});
    CHECK(sched.latency == 3);
}

TEST_CASE("empty circuit schedules to zero latency") {
    Circuit c;
    c.num_qubits = 2;
    ScheduledCircuit sched = schedule_asap(c, Topology::grid(1, 2));
    CHECK(sched.latency == 0);
    CHECK(sched.circuit.bundles.empty());
}

TEST_CASE("scheduling rejects unrouted circuits") {
    Circuit c;
    c.num_qubits = 3;
    append(c, gate2(Opcode::CNOT, 0, 2));
    CHECK_THROWS_AS(schedule_asap(c, Topology::grid(1, 3)), Error);
}

TEST_CASE("bell on a grid compiles without swaps") {
    CompiledProgram p = compile(bell(), Topology::grid(2, 2));
    CHECK(p.swaps_inserted == 0);
    check_routed_adjacency(p.scheduled.circuit, Topology::grid(2, 2));
}

TEST_CASE("chain ghz matches a line topology") {
    CompiledProgram p = compile(ghz_chain(4), Topology::grid(1, 4));
    CHECK(p.swaps_inserted == 0);
}

TEST_CASE("reversed ghz chain forces movement") {
    CompiledProgram p = compile(ghz_chain(4, true), Topology::grid(1, 4));
    CHECK(p.swaps_inserted >= 1);
    check_routed_adjacency(p.scheduled.circuit, Topology::grid(1, 4));
}

TEST_CASE("swap-free backends still satisfy adjacency") {
    Topology topo = Topology::grid(1, 4);
    topo.native_swap = false;
    CompiledProgram p = compile(ghz_chain(4, true), topo);
    check_routed_adjacency(p.scheduled.circuit, topo);
    for (const Bundle &b : p.scheduled.circuit.bundles) {
        for (const Gate &g : b.gates) {
            CHECK(g.opcode != Opcode::SWAP);
        }
    }
}

TEST_CASE("compilation preserves semantics up to the final permutation") {
    Topology topo = Topology::grid(2, 3);
    Rng rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        Circuit c = testing::random_unitary_circuit(rng, 5, 25);
        auto strategy = trial % 2 == 0 ? PlacementStrategy::IDENTITY
                                       : PlacementStrategy::INTERACTION_DEGREE;
        CompiledProgram p = compile(c, topo, {strategy});

        check_routed_adjacency(p.scheduled.circuit, topo);
        check_schedule_legality(p.scheduled, topo);

        QuantumState reference = run_statevector(c);
        QuantumState routed = run_statevector(p.scheduled.circuit);
        double leak = 1.0;
        auto logical = testing::unroute_state(routed, p.scheduled.final_placement,
                                              c.num_qubits, &leak);
        CHECK(leak < 1e-10);
        double worst = 0.0;
        for (uint64_t i = 0; i < logical.size(); ++i) {
            worst = std::max(worst, std::abs(logical[i] - reference.amplitude(i)));
        }
        CHECK_MESSAGE(worst < 1e-10, "trial ", trial);
    }
}

TEST_CASE("scheduling preserves per-position gate order") {
    Rng rng(44);
    Topology topo = Topology::grid(2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c = testing::random_unitary_circuit(rng, 4, 20);
        RouteResult r = route(c, topo, Placement::identity(4, 4));
        ScheduledCircuit sched = schedule_asap(r.circuit, topo);

        auto sequence_of = [&](const Circuit &circuit) {
            std::map<int, std::vector<Gate>> per_position;
            for (const Bundle &b : circuit.bundles) {
                for (const Gate &g : b.gates) {
                    for (int q : g.qubits) {
                        per_position[q].push_back(g);
                    }
                }
            }
            return per_position;
        };
        CHECK(sequence_of(r.circuit) == sequence_of(sched.circuit));
    }
}

TEST_CASE("compilation is deterministic") {
    Rng rng(55);
    Circuit c = testing::random_unitary_circuit(rng, 5, 30);
    Topology topo = Topology::grid(2, 3);
    CompiledProgram a = compile(c, topo, {PlacementStrategy::INTERACTION_DEGREE});
    CompiledProgram b = compile(c, topo, {PlacementStrategy::INTERACTION_DEGREE});
    CHECK(print_scheduled(a.scheduled) == print_scheduled(b.scheduled));
    CHECK(a.swaps_inserted == b.swaps_inserted);
}

TEST_CASE("topology json forms expand correctly") {
    Topology grid = Topology::grid(2, 3);
    CHECK(grid.num_positions == 6);
    CHECK(grid.adjacent(0, 1));
    CHECK(grid.adjacent(0, 3));
    CHECK_FALSE(grid.adjacent(0, 4));
    CHECK(grid.connected());
    CHECK(grid.duration(Opcode::H) == 1);
    CHECK(grid.duration(Opcode::CNOT) == 2);
    CHECK(grid.duration(Opcode::MEASURE_Z) == 4);

    CHECK_THROWS_AS(Topology::from_edges(3, {{0, 1}}), Error);   // disconnected
    CHECK_THROWS_AS(Topology::from_edges(2, {{0, 0}}), Error);   // self edge
    CHECK_THROWS_AS(Topology::from_edges(2, {{0, 5}}), Error);   // bad index
}
