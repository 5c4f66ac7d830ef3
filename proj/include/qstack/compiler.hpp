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

#pragma once

#include <string>
#include <vector>

#include "qstack/ir.hpp"
#include "qstack/topology.hpp"

namespace qstack {

/// Bijection from logical qubits onto a subset of physical positions.
struct Placement {
    std::vector<int> pos_of_logical; // indexed by logical qubit
    std::vector<int> logical_at_pos; // indexed by position, -1 when free

    static Placement identity(int num_logical, int num_positions);

    int num_logical() const { return static_cast<int>(pos_of_logical.size()); }
    int num_positions() const { return static_cast<int>(logical_at_pos.size()); }

    int position(int logical) const { return pos_of_logical[logical]; }
    int logical_at(int position) const { return logical_at_pos[position]; }

    /// Exchanges whatever sits at two positions (either side may be free).
    void swap_positions(int a, int b);

    bool is_bijection() const;

    bool operator==(const Placement &) const = default;
};

enum class PlacementStrategy {
    IDENTITY,
    INTERACTION_DEGREE,
};

struct CompileOptions {
    PlacementStrategy placement = PlacementStrategy::IDENTITY;
};

/// A routed circuit with per-bundle start cycles. Gates in a bundle share a
/// start cycle; no position is touched by two gates in overlapping
/// [start, start + duration) windows.
struct ScheduledCircuit {
    Circuit circuit; // physical indices
    std::vector<int> start_cycles;
    Placement final_placement;
    int latency = 0;
};

struct RouteResult {
    Circuit circuit;
    Placement final_placement;
    int swaps_inserted = 0;
};

struct CompiledProgram {
    ScheduledCircuit scheduled;
    Placement initial_placement;
    int swaps_inserted = 0;
};

/// Rewrites opcodes the backend lacks. With native_swap everything passes
/// through unchanged; otherwise each SWAP becomes the CNOT-CNOT-CNOT identity.
Circuit decompose(const Circuit &circuit, bool native_swap);

/// Deterministic initial placement. IDENTITY maps qubit i to position i;
/// INTERACTION_DEGREE puts the most-interacting pair on an edge and fills the
/// rest by descending interaction count, each to the free position nearest
/// its already-placed partners. Throws TOO_MANY_QUBITS when the circuit does
/// not fit.
Placement place_initial(const Circuit &circuit, const Topology &topo,
                        PlacementStrategy strategy = PlacementStrategy::IDENTITY);

/// Makes every two-qubit gate act on adjacent positions by swapping the first
/// operand along a shortest path toward the second (ties: lowest next
/// position). Output gates are in physical indices, one gate per bundle; the
/// scheduler re-parallelizes.
RouteResult route(const Circuit &circuit, const Topology &topo,
                  const Placement &initial);

/// ASAP list scheduling over per-position availability. Gates that share a
/// start cycle merge into one bundle. Throws NOT_ROUTED if a two-qubit gate
/// spans non-adjacent positions.
ScheduledCircuit schedule_asap(const Circuit &circuit, const Topology &topo);

/// decompose -> place -> route -> schedule. Deterministic for fixed inputs.
CompiledProgram compile(const Circuit &circuit, const Topology &topo,
                        const CompileOptions &options = {});

/// Canonical text of a scheduled circuit: the assembly format with a
/// `# cycle N` comment per bundle line.
std::string print_scheduled(const ScheduledCircuit &scheduled);

} // namespace qstack
