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

// Shared generators and oracles for the test suites. Everything here is
// deliberately independent of the implementation paths it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qstack/compiler.hpp"
#include "qstack/ir.hpp"
#include "qstack/qubo.hpp"
#include "qstack/rng.hpp"
#include "qstack/simulator.hpp"

namespace qstack::testing {

struct CircuitGenOptions {
    int max_qubits = 8;
    int max_bundles = 64;
    bool allow_measure = true;
    bool allow_prep = true;
    bool allow_two_qubit = true;
    bool parallel_bundles = true;
};

inline std::vector<Opcode> opcode_pool(const CircuitGenOptions &opts) {
    std::vector<Opcode> pool = {Opcode::X,  Opcode::Y,    Opcode::Z,
                                Opcode::H,  Opcode::S,    Opcode::SDAG,
                                Opcode::T,  Opcode::TDAG, Opcode::RX,
                                Opcode::RY, Opcode::RZ};
    if (opts.allow_two_qubit) {
        pool.insert(pool.end(), {Opcode::CNOT, Opcode::CZ, Opcode::SWAP});
    }
    if (opts.allow_prep) {
        pool.push_back(Opcode::PREP_Z);
    }
    if (opts.allow_measure) {
        pool.push_back(Opcode::MEASURE_Z);
    }
    return pool;
}

inline Gate random_gate(Rng &rng, Opcode op, std::vector<int> &free_qubits) {
    std::vector<int> qubits;
    for (int k = 0; k < opcode_num_qubits(op); ++k) {
        size_t pick = rng.below(free_qubits.size());
        qubits.push_back(free_qubits[pick]);
        free_qubits.erase(free_qubits.begin() + static_cast<long>(pick));
    }
    double angle = 0.0;
    if (opcode_has_angle(op)) {
        angle = (rng.uniform() - 0.5) * 4.0 * std::numbers::pi;
    }
    return Gate(op, std::move(qubits), angle);
}

inline Circuit random_circuit(Rng &rng, const CircuitGenOptions &opts = {}) {
    Circuit circuit;
    circuit.num_qubits = 1 + static_cast<int>(rng.below(opts.max_qubits));
    const auto pool = opcode_pool(opts);
    const int bundles = static_cast<int>(rng.below(opts.max_bundles + 1));
    for (int b = 0; b < bundles; ++b) {
        std::vector<int> free_qubits(circuit.num_qubits);
        for (int q = 0; q < circuit.num_qubits; ++q) {
            free_qubits[q] = q;
        }
        Bundle bundle;
        int wanted = 1;
        if (opts.parallel_bundles && circuit.num_qubits > 1) {
            wanted = 1 + static_cast<int>(rng.below(3));
        }
        for (int g = 0; g < wanted && !free_qubits.empty(); ++g) {
            Opcode op = pool[rng.below(pool.size())];
            if (opcode_num_qubits(op) > static_cast<int>(free_qubits.size())) {
                op = Opcode::H;
            }
            bundle.gates.push_back(random_gate(rng, op, free_qubits));
        }
        append(circuit, std::move(bundle));
    }
    return circuit;
}

/// Measurement- and prep-free circuit, singleton bundles.
inline Circuit random_unitary_circuit(Rng &rng, int num_qubits, int num_gates,
                                      bool allow_two_qubit = true) {
    CircuitGenOptions opts;
    opts.allow_measure = false;
    opts.allow_prep = false;
    opts.allow_two_qubit = allow_two_qubit && num_qubits > 1;
    const auto pool = opcode_pool(opts);
    Circuit circuit;
    circuit.num_qubits = num_qubits;
    for (int g = 0; g < num_gates; ++g) {
        std::vector<int> free_qubits(num_qubits);
        for (int q = 0; q < num_qubits; ++q) {
            free_qubits[q] = q;
        }
        Opcode op = pool[rng.below(pool.size())];
        if (opcode_num_qubits(op) > num_qubits) {
            op = Opcode::H;
        }
        append(circuit, random_gate(rng, op, free_qubits));
    }
    return circuit;
}

inline QuboModel random_qubo(Rng &rng, int n, double density = 0.6) {
    QuboModel model;
    model.n = n;
    for (int i = 0; i < n; ++i) {
        model.add(i, i, (rng.uniform() - 0.5) * 2.0);
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < density) {
                model.add(i, j, (rng.uniform() - 0.5) * 2.0);
            }
        }
    }
    return model;
}

/// Independent energy oracle: dense symmetric matrix, full double loop.
inline double dense_qubo_energy(const QuboModel &model,
                                const std::vector<int> &bits) {
    std::vector<std::vector<double>> s(model.n, std::vector<double>(model.n, 0.0));
    for (const auto &[pair, q] : model.coeffs) {
        auto [i, j] = pair;
        if (i == j) {
            s[i][i] += q;
        } else {
            s[i][j] += q / 2;
            s[j][i] += q / 2;
        }
    }
    double energy = model.offset;
    for (int i = 0; i < model.n; ++i) {
        for (int j = 0; j < model.n; ++j) {
            energy += s[i][j] * bits[i] * bits[j];
        }
    }
    return energy;
}

inline double max_amplitude_diff(const QuantumState &a, const QuantumState &b) {
    double worst = 0.0;
    for (uint64_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
    }
    return worst;
}

/// Pulls the logical-qubit state back out of a routed circuit's final state.
/// `leak` reports the probability stranded outside the placed subspace
/// (should be ~0 for a correct routing).
inline std::vector<Amplitude> unroute_state(const QuantumState &routed,
                                            const Placement &final_placement,
                                            int num_logical, double *leak) {
    std::vector<Amplitude> logical(uint64_t{1} << num_logical);
    double captured = 0.0;
    for (uint64_t j = 0; j < logical.size(); ++j) {
        uint64_t idx = 0;
        for (int l = 0; l < num_logical; ++l) {
            if ((j >> l) & 1) {
                idx |= uint64_t{1} << final_placement.position(l);
            }
        }
        logical[j] = routed.amplitude(idx);
        captured += std::norm(logical[j]);
    }
    if (leak != nullptr) {
        *leak = std::abs(routed.norm_sqr() - captured);
    }
    return logical;
}

inline int bundle_gate_count(const Circuit &circuit) {
    int count = 0;
    for (const Bundle &bundle : circuit.bundles) {
        count += static_cast<int>(bundle.gates.size());
    }
    return count;
}

/// Circuit minus every MEASURE_Z gate (for statevector checks).
inline Circuit strip_measurements(const Circuit &circuit) {
    Circuit out;
    out.version = circuit.version;
    out.num_qubits = circuit.num_qubits;
    for (const Bundle &bundle : circuit.bundles) {
        Bundle kept;
        for (const Gate &g : bundle.gates) {
            if (g.opcode != Opcode::MEASURE_Z) {
                kept.gates.push_back(g);
            }
        }
        if (!kept.gates.empty()) {
            append(out, std::move(kept));
        }
    }
    return out;
}

} // namespace qstack::testing
