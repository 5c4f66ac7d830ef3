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

#include "qstack/compiler.hpp"

#include <algorithm>
#include <map>

#include "qstack/error.hpp"

namespace qstack {

Placement Placement::identity(int num_logical, int num_positions) {
    Placement p;
    p.pos_of_logical.resize(num_logical);
    p.logical_at_pos.assign(num_positions, -1);
    for (int i = 0; i < num_logical; ++i) {
        p.pos_of_logical[i] = i;
        p.logical_at_pos[i] = i;
    }
    return p;
}

void Placement::swap_positions(int a, int b) {
    int la = logical_at_pos[a];
    int lb = logical_at_pos[b];
    std::swap(logical_at_pos[a], logical_at_pos[b]);
    if (la >= 0) {
        pos_of_logical[la] = b;
    }
    if (lb >= 0) {
        pos_of_logical[lb] = a;
    }
}

bool Placement::is_bijection() const {
    std::vector<bool> hit(logical_at_pos.size(), false);
    for (size_t l = 0; l < pos_of_logical.size(); ++l) {
        int p = pos_of_logical[l];
        if (p < 0 || p >= static_cast<int>(logical_at_pos.size()) || hit[p]) {
            return false;
        }
        hit[p] = true;
        if (logical_at_pos[p] != static_cast<int>(l)) {
            return false;
        }
    }
    for (size_t p = 0; p < logical_at_pos.size(); ++p) {
        if (logical_at_pos[p] >= 0 && !hit[p]) {
            return false;
        }
    }
    return true;
}

Circuit decompose(const Circuit &circuit, bool native_swap) {
    if (native_swap) {
        return circuit;
    }
    Circuit out;
    out.version = circuit.version;
    out.num_qubits = circuit.num_qubits;
    for (const Bundle &bundle : circuit.bundles) {
        Bundle kept;
        std::vector<Gate> swaps;
        for (const Gate &g : bundle.gates) {
            if (g.opcode == Opcode::SWAP) {
                swaps.push_back(g);
            } else {
                kept.gates.push_back(g);
            }
        }
        if (!kept.gates.empty()) {
            out.bundles.push_back(std::move(kept));
        }
        // The three replacement CNOTs share qubits, so they cannot stay
        // bundled; their operands are disjoint from the rest of the bundle.
        for (const Gate &g : swaps) {
            int a = g.qubits[0];
            int b = g.qubits[1];
            append(out, gate2(Opcode::CNOT, a, b));
            append(out, gate2(Opcode::CNOT, b, a));
            append(out, gate2(Opcode::CNOT, a, b));
        }
    }
    return out;
}

namespace {

std::map<std::pair<int, int>, int> interaction_counts(const Circuit &circuit) {
    std::map<std::pair<int, int>, int> counts;
    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            if (g.qubits.size() == 2) {
                int a = std::min(g.qubits[0], g.qubits[1]);
                int b = std::max(g.qubits[0], g.qubits[1]);
                ++counts[{a, b}];
            }
        }
    }
    return counts;
}

} // namespace

Placement place_initial(const Circuit &circuit, const Topology &topo,
                        PlacementStrategy strategy) {
    int n = circuit.num_qubits;
    if (n > topo.num_positions) {
        raise(ErrorKind::TOO_MANY_QUBITS,
              "circuit needs " + std::to_string(n) + " qubits but topology has " +
                  std::to_string(topo.num_positions) + " positions");
    }
    if (strategy == PlacementStrategy::IDENTITY) {
        return Placement::identity(n, topo.num_positions);
    }

    auto counts = interaction_counts(circuit);
    if (counts.empty()) {
        return Placement::identity(n, topo.num_positions);
    }

    std::vector<long> degree(n, 0);
    for (const auto &[pair, c] : counts) {
        degree[pair.first] += c;
        degree[pair.second] += c;
    }

    // Heaviest pair onto the lowest-numbered edge; ties break toward the
    // lexicographically smallest qubit pair.
    std::pair<int, int> best_pair = counts.begin()->first;
    int best_count = counts.begin()->second;
    for (const auto &[pair, c] : counts) {
        if (c > best_count) {
            best_pair = pair;
            best_count = c;
        }
    }
    auto dist = all_pairs_distances(topo);
    const auto seed_edge = *topo.edges.begin();

    Placement placement;
    placement.pos_of_logical.assign(n, -1);
    placement.logical_at_pos.assign(topo.num_positions, -1);
    auto put = [&](int logical, int pos) {
        placement.pos_of_logical[logical] = pos;
        placement.logical_at_pos[pos] = logical;
    };
    put(best_pair.first, seed_edge.first);
    put(best_pair.second, seed_edge.second);

    std::vector<int> order;
    for (int q = 0; q < n; ++q) {
        if (q != best_pair.first && q != best_pair.second) {
            order.push_back(q);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });

    for (int q : order) {
        long best_score = -1;
        int best_pos = -1;
        for (int p = 0; p < topo.num_positions; ++p) {
            if (placement.logical_at_pos[p] >= 0) {
                continue;
            }
            long score = 0;
            for (const auto &[pair, c] : counts) {
                int other = -1;
                if (pair.first == q) {
                    other = pair.second;
                } else if (pair.second == q) {
                    other = pair.first;
                }
                if (other >= 0 && placement.pos_of_logical[other] >= 0) {
                    score += static_cast<long>(c) * dist[p][placement.pos_of_logical[other]];
                }
            }
            if (best_pos < 0 || score < best_score) {
                best_score = score;
                best_pos = p;
            }
        }
        put(q, best_pos);
    }
    return placement;
}

RouteResult route(const Circuit &circuit, const Topology &topo,
                  const Placement &initial) {
    if (!initial.is_bijection() ||
        initial.num_logical() != circuit.num_qubits ||
        initial.num_positions() != topo.num_positions) {
        raise(ErrorKind::CONFIG, "invalid initial placement");
    }
    auto dist = all_pairs_distances(topo);
    auto adj = topo.adjacency();

    RouteResult result;
    result.circuit.version = circuit.version;
    result.circuit.num_qubits = topo.num_positions;
    Placement placement = initial;

    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            if (g.qubits.size() == 1) {
                Gate moved(g.opcode, {placement.position(g.qubits[0])}, g.angle);
                append(result.circuit, std::move(moved));
                continue;
            }
            int pa = placement.position(g.qubits[0]);
            int pb = placement.position(g.qubits[1]);
            while (dist[pa][pb] > 1) {
                int next = -1;
                for (int nb : adj[pa]) {
                    if (dist[nb][pb] == dist[pa][pb] - 1) {
                        next = nb;
                        break; // adjacency lists are sorted, so this is the lowest
                    }
                }
                append(result.circuit,
                       gate2(Opcode::SWAP, std::min(pa, next), std::max(pa, next)));
                placement.swap_positions(pa, next);
                ++result.swaps_inserted;
                pa = next;
                pb = placement.position(g.qubits[1]);
            }
            Gate moved(g.opcode, {pa, pb}, g.angle);
            append(result.circuit, std::move(moved));
        }
    }
    result.final_placement = std::move(placement);
    return result;
}

ScheduledCircuit schedule_asap(const Circuit &circuit, const Topology &topo) {
    ScheduledCircuit sched;
    sched.circuit.version = circuit.version;
    sched.circuit.num_qubits = circuit.num_qubits;
    sched.final_placement =
        Placement::identity(circuit.num_qubits, circuit.num_qubits);

    std::vector<int> avail(circuit.num_qubits, 0);
    std::map<int, Bundle> by_start;
    int latency = 0;
    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            if (g.qubits.size() == 2 && !topo.adjacent(g.qubits[0], g.qubits[1])) {
                raise(ErrorKind::NOT_ROUTED,
                      "two-qubit gate spans non-adjacent positions " +
                          std::to_string(g.qubits[0]) + "," +
                          std::to_string(g.qubits[1]));
            }
            int start = 0;
            for (int q : g.qubits) {
                start = std::max(start, avail[q]);
            }
            int end = start + topo.duration(g.opcode);
            for (int q : g.qubits) {
                avail[q] = end;
            }
            latency = std::max(latency, end);
            by_start[start].gates.push_back(g);
        }
    }
    for (auto &[start, bundle] : by_start) {
        sched.start_cycles.push_back(start);
        sched.circuit.bundles.push_back(std::move(bundle));
    }
    sched.latency = latency;
    return sched;
}

CompiledProgram compile(const Circuit &circuit, const Topology &topo,
                        const CompileOptions &options) {
    Circuit lowered = decompose(circuit, topo.native_swap);
    Placement initial = place_initial(lowered, topo, options.placement);
    RouteResult routed = route(lowered, topo, initial);
    Circuit physical = topo.native_swap ? std::move(routed.circuit)
                                        : decompose(routed.circuit, false);
    ScheduledCircuit sched = schedule_asap(physical, topo);
    sched.final_placement = routed.final_placement;

    CompiledProgram program;
    program.scheduled = std::move(sched);
    program.initial_placement = std::move(initial);
    program.swaps_inserted = routed.swaps_inserted;
    return program;
}

std::string print_scheduled(const ScheduledCircuit &scheduled) {
    std::string out = "version " + scheduled.circuit.version + "\n";
    out += "qubits " + std::to_string(scheduled.circuit.num_qubits) + "\n";
    for (size_t i = 0; i < scheduled.circuit.bundles.size(); ++i) {
        const Bundle &bundle = scheduled.circuit.bundles[i];
        std::string line;
        if (bundle.gates.size() == 1) {
            line = gate_text(bundle.gates[0]);
        } else {
            line = "{ ";
            for (size_t g = 0; g < bundle.gates.size(); ++g) {
                if (g > 0) {
                    line += " | ";
                }
                line += gate_text(bundle.gates[g]);
            }
            line += " }";
        }
        out += line + "  # cycle " + std::to_string(scheduled.start_cycles[i]) + "\n";
    }
    return out;
}

} // namespace qstack
