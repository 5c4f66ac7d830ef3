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

#include "qstack/topology.hpp"

#include <deque>

#include "qstack/error.hpp"

namespace qstack {

int default_duration(Opcode op) {
    if (op == Opcode::PREP_Z || op == Opcode::MEASURE_Z) {
        return 4;
    }
    return opcode_num_qubits(op) == 2 ? 2 : 1;
}

Topology Topology::grid(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        raise(ErrorKind::CONFIG, "grid dimensions must be positive");
    }
    Topology topo;
    topo.num_positions = rows * cols;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int p = r * cols + c;
            if (c + 1 < cols) {
                topo.edges.insert({p, p + 1});
            }
            if (r + 1 < rows) {
                topo.edges.insert({p, p + cols});
            }
        }
    }
    return topo;
}

Topology Topology::from_edges(int num_positions,
                              const std::vector<std::pair<int, int>> &edge_list) {
    Topology topo;
    topo.num_positions = num_positions;
    for (auto [a, b] : edge_list) {
        if (a == b) {
            raise(ErrorKind::CONFIG, "self-edge in topology");
        }
        if (a < 0 || b < 0 || a >= num_positions || b >= num_positions) {
            raise(ErrorKind::CONFIG, "edge references an invalid position");
        }
        topo.edges.insert({std::min(a, b), std::max(a, b)});
    }
    if (!topo.connected()) {
        raise(ErrorKind::CONFIG, "topology graph is not connected");
    }
    return topo;
}

bool Topology::adjacent(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<std::vector<int>> Topology::adjacency() const {
    std::vector<std::vector<int>> adj(num_positions);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto &list : adj) {
        std::sort(list.begin(), list.end());
    }
    return adj;
}

bool Topology::connected() const {
    if (num_positions <= 1) {
        return true;
    }
    auto adj = adjacency();
    std::vector<bool> seen(num_positions, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        for (int q : adj[p]) {
            if (!seen[q]) {
                seen[q] = true;
                ++count;
                queue.push_back(q);
            }
        }
    }
    return count == num_positions;
}

int Topology::duration(Opcode op) const {
    auto it = durations.find(op);
    return it == durations.end() ? default_duration(op) : it->second;
}

std::vector<std::vector<int>> all_pairs_distances(const Topology &topo) {
    auto adj = topo.adjacency();
    int n = topo.num_positions;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int src = 0; src < n; ++src) {
        dist[src][src] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int p = queue.front();
            queue.pop_front();
            for (int q : adj[p]) {
                if (dist[src][q] < 0) {
                    dist[src][q] = dist[src][p] + 1;
                    queue.push_back(q);
                }
            }
        }
    }
    return dist;
}

} // namespace qstack
