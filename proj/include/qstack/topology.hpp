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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qstack/ir.hpp"

namespace qstack {

/// Physical qubit layout: positions, undirected coupling edges, and per-opcode
/// durations in cycles. The graph must be connected so routing is total.
struct Topology {
    int num_positions = 0;
    std::set<std::pair<int, int>> edges; // normalized a < b
    std::map<Opcode, int> durations;     // overrides; defaults fill the rest
    bool native_swap = true;

    /// Row-major rows x cols grid with 4-neighbour edges.
    static Topology grid(int rows, int cols);

    /// Builds from an explicit edge list; validates indices, self-edges and
    /// connectivity.
    static Topology from_edges(int num_positions,
                               const std::vector<std::pair<int, int>> &edge_list);

    bool adjacent(int a, int b) const;

    /// Sorted neighbour lists indexed by position.
    std::vector<std::vector<int>> adjacency() const;

    bool connected() const;

    /// Duration in cycles; defaults are 1 for single-qubit gates, 2 for
    /// two-qubit gates and 4 for prep/measure.
    int duration(Opcode op) const;
};

int default_duration(Opcode op);

/// All-pairs shortest path distances (BFS per position).
std::vector<std::vector<int>> all_pairs_distances(const Topology &topo);

} // namespace qstack
