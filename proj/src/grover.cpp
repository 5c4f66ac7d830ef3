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

#include "qstack/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qstack/error.hpp"

namespace qstack {

int ReferenceIndex::index_qubits() const {
    int k = 0;
    while ((uint64_t{1} << k) < num_slices()) {
        ++k;
    }
    return k;
}

ReferenceIndex make_reference_index(const std::string &reference,
                                    int slice_width) {
    if (slice_width < 1) {
        raise(ErrorKind::CONFIG, "slice width must be positive");
    }
    for (char c : reference) {
        if (c != 'A' && c != 'C' && c != 'G' && c != 'T') {
            raise(ErrorKind::CONFIG,
                  std::string("reference contains non-ACGT character '") + c + "'");
        }
    }
    const int full = static_cast<int>(reference.size()) / slice_width;
    if (full < 1) {
        raise(ErrorKind::CONFIG, "reference shorter than one slice");
    }
    uint64_t padded = 2;
    while (padded < static_cast<uint64_t>(full)) {
        padded *= 2;
    }

    ReferenceIndex index;
    index.reference = reference;
    index.slice_width = slice_width;
    for (int i = 0; i < full; ++i) {
        index.slices.push_back(
            {i, reference.substr(static_cast<size_t>(i) * slice_width,
                                 slice_width),
             false});
    }
    for (uint64_t i = full; i < padded; ++i) {
        index.slices.push_back({static_cast<int>(i), "", true});
    }
    return index;
}

int hamming_distance(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        raise(ErrorKind::LENGTH_MISMATCH, "hamming distance needs equal lengths");
    }
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

std::vector<uint64_t> marked_slices(const ReferenceIndex &index,
                                    const AlignmentQuery &query) {
    if (static_cast<int>(query.read.size()) != index.slice_width) {
        raise(ErrorKind::LENGTH_MISMATCH,
              "read length " + std::to_string(query.read.size()) +
                  " does not match slice width " +
                  std::to_string(index.slice_width));
    }
    std::vector<uint64_t> marked;
    for (const ReferenceSlice &slice : index.slices) {
        if (slice.padding) {
            continue;
        }
        if (hamming_distance(slice.sequence, query.read) <= query.max_mismatch) {
            marked.push_back(static_cast<uint64_t>(slice.index));
        }
    }
    return marked;
}

int grover_iterations(uint64_t num_entries, uint64_t num_matches) {
    if (num_matches == 0) {
        raise(ErrorKind::NO_MATCH_KNOWN,
              "no classical match; use the unknown-count iteration rule");
    }
    return static_cast<int>(std::floor(
        std::numbers::pi / 4 *
        std::sqrt(static_cast<double>(num_entries) /
                  static_cast<double>(num_matches))));
}

int grover_iterations_unknown(uint64_t num_entries) {
    return static_cast<int>(
        std::floor(std::numbers::pi / 4 * std::sqrt(static_cast<double>(num_entries))));
}

namespace {

void emit_ccz(Circuit &circuit, int a, int b, int c) {
    append(circuit, gate2(Opcode::CNOT, b, c));
    append(circuit, gate1(Opcode::TDAG, c));
    append(circuit, gate2(Opcode::CNOT, a, c));
    append(circuit, gate1(Opcode::T, c));
    append(circuit, gate2(Opcode::CNOT, b, c));
    append(circuit, gate1(Opcode::TDAG, c));
    append(circuit, gate2(Opcode::CNOT, a, c));
    append(circuit, gate1(Opcode::T, b));
    append(circuit, gate1(Opcode::T, c));
    append(circuit, gate2(Opcode::CNOT, a, b));
    append(circuit, gate1(Opcode::T, a));
    append(circuit, gate1(Opcode::TDAG, b));
    append(circuit, gate2(Opcode::CNOT, a, b));
}

void emit_toffoli(Circuit &circuit, int a, int b, int target) {
    append(circuit, gate1(Opcode::H, target));
    emit_ccz(circuit, a, b, target);
    append(circuit, gate1(Opcode::H, target));
}

/// Phase-flips exactly the all-ones state of `qubits`. Clean ancillas start
/// at `ancilla_base` and are returned to |0> before this returns.
void emit_mcz(Circuit &circuit, const std::vector<int> &qubits, int ancilla_base) {
    const int m = static_cast<int>(qubits.size());
    if (m == 1) {
        append(circuit, gate1(Opcode::Z, qubits[0]));
        return;
    }
    if (m == 2) {
        append(circuit, gate2(Opcode::CZ, qubits[0], qubits[1]));
        return;
    }
    if (m == 3) {
        emit_ccz(circuit, qubits[0], qubits[1], qubits[2]);
        return;
    }
    // AND-ladder: conjunction of qubits[0..m-3] accumulates into ancillas,
    // leaving one raw control for the final CCZ.
    std::vector<std::array<int, 3>> ladder;
    int previous = qubits[0];
    for (int j = 1; j <= m - 3; ++j) {
        int anc = ancilla_base + (j - 1);
        ladder.push_back({previous, qubits[j], anc});
        previous = anc;
    }
    for (const auto &[x, y, t] : ladder) {
        emit_toffoli(circuit, x, y, t);
    }
    emit_ccz(circuit, previous, qubits[m - 2], qubits[m - 1]);
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
        emit_toffoli(circuit, (*it)[0], (*it)[1], (*it)[2]);
    }
}

std::vector<int> index_list(int k) {
    std::vector<int> all(k);
    for (int q = 0; q < k; ++q) {
        all[q] = q;
    }
    return all;
}

int validate_index_qubits(int k) {
    if (k < 1 || k > 20) {
        raise(ErrorKind::CONFIG, "index qubit count out of range");
    }
    return k >= 4 ? k - 3 : 0; // clean ancillas for the MCZ ladder
}

std::set<uint64_t> validate_marked(int k, const std::vector<uint64_t> &marked) {
    std::set<uint64_t> unique;
    for (uint64_t m : marked) {
        if (m >= (uint64_t{1} << k)) {
            raise(ErrorKind::CONFIG, "marked state outside the index range");
        }
        if (!unique.insert(m).second) {
            raise(ErrorKind::CONFIG, "duplicate marked state");
        }
    }
    return unique;
}

void emit_oracle(Circuit &circuit, int k, const std::set<uint64_t> &marked) {
    const auto all = index_list(k);
    for (uint64_t m : marked) {
        for (int q = 0; q < k; ++q) {
            if (!((m >> q) & 1)) {
                append(circuit, gate1(Opcode::X, q));
            }
        }
        emit_mcz(circuit, all, k);
        for (int q = 0; q < k; ++q) {
            if (!((m >> q) & 1)) {
                append(circuit, gate1(Opcode::X, q));
            }
        }
    }
}

void emit_diffusion(Circuit &circuit, int k) {
    const auto all = index_list(k);
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::H, q));
    }
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::X, q));
    }
    emit_mcz(circuit, all, k);
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::X, q));
    }
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::H, q));
    }
}

} // namespace

Circuit grover_oracle_circuit(int index_qubits,
                              const std::vector<uint64_t> &marked) {
    const int ancillas = validate_index_qubits(index_qubits);
    auto unique = validate_marked(index_qubits, marked);
    Circuit circuit;
    circuit.num_qubits = index_qubits + ancillas;
    emit_oracle(circuit, index_qubits, unique);
    return circuit;
}

Circuit grover_diffusion_circuit(int index_qubits) {
    const int ancillas = validate_index_qubits(index_qubits);
    Circuit circuit;
    circuit.num_qubits = index_qubits + ancillas;
    emit_diffusion(circuit, index_qubits);
    return circuit;
}

Circuit grover_build(int index_qubits, const std::vector<uint64_t> &marked,
                     int iterations) {
    const int k = index_qubits;
    const int ancillas = validate_index_qubits(k);
    if (iterations < 0) {
        raise(ErrorKind::CONFIG, "iteration count must be nonnegative");
    }
    auto unique = validate_marked(k, marked);

    Circuit circuit;
    circuit.num_qubits = k + ancillas;
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::H, q));
    }
    for (int it = 0; it < iterations; ++it) {
        emit_oracle(circuit, k, unique);
        emit_diffusion(circuit, k);
    }
    for (int q = 0; q < k; ++q) {
        append(circuit, gate1(Opcode::MEASURE_Z, q));
    }
    return circuit;
}

RunSummary grover_run(int index_qubits, const std::vector<uint64_t> &marked,
                      int iterations, const NoiseModel &noise, uint64_t shots,
                      uint64_t seed, const RunOptions &options) {
    const int k = index_qubits;
    if (k < 1 || k > options.max_qubits) {
        raise(ErrorKind::TOO_MANY_QUBITS, "index qubit count exceeds the cap");
    }
    for (uint64_t m : marked) {
        if (m >= (uint64_t{1} << k)) {
            raise(ErrorKind::CONFIG, "marked state outside the index range");
        }
    }
    const bool noisy = noise.kind == NoiseModel::Kind::DEPOLARIZING;
    const double p = noisy ? noise.gate_error_p : 0.0;
    const double flip_p = noisy ? noise.measurement_flip_p : 0.0;

    std::vector<int> all(k);
    for (int q = 0; q < k; ++q) {
        all[q] = q;
    }
    const uint64_t everyone = (uint64_t{1} << k) - 1;

    RunSummary summary;
    summary.shots = shots;
    summary.seed = seed;
    QuantumState state(k);
    for (uint64_t s = 0; s < shots; ++s) {
        Rng rng(seed ^ s);
        state.reset();
        auto one_qubit = [&](Opcode op, int q) {
            state.apply1(q, opcode_unitary(op, 0.0));
            int touched[1] = {q};
            apply_depolarizing(state, touched, p, rng);
        };
        for (int q = 0; q < k; ++q) {
            one_qubit(Opcode::H, q);
        }
        for (int it = 0; it < iterations; ++it) {
            for (uint64_t m : marked) {
                state.phase_flip(m);
            }
            apply_depolarizing(state, all, p, rng);
            for (int q = 0; q < k; ++q) {
                one_qubit(Opcode::H, q);
            }
            for (int q = 0; q < k; ++q) {
                one_qubit(Opcode::X, q);
            }
            state.phase_flip(everyone);
            apply_depolarizing(state, all, p, rng);
            for (int q = 0; q < k; ++q) {
                one_qubit(Opcode::X, q);
            }
            for (int q = 0; q < k; ++q) {
                one_qubit(Opcode::H, q);
            }
            if (options.check_norms) {
                double norm = std::sqrt(state.norm_sqr());
                if (std::abs(norm - 1.0) > kNormTolerance) {
                    throw std::logic_error("state norm drifted to " +
                                           std::to_string(norm));
                }
            }
        }
        std::string key(k, '0');
        for (int q = k - 1; q >= 0; --q) {
            key[k - 1 - q] = static_cast<char>('0' + measure(state, q, rng, flip_p));
        }
        ++summary.histogram[key];
    }
    return summary;
}

AlignResult grover_align(const ReferenceIndex &index, const AlignmentQuery &query,
                         const NoiseModel &noise, uint64_t shots, uint64_t seed,
                         const AlignOptions &options) {
    const uint64_t n = index.num_slices();
    if (n < 2 || (n & (n - 1)) != 0) {
        raise(ErrorKind::NOT_POWER_OF_TWO,
              "slice count " + std::to_string(n) + " is not a power of two");
    }
    const int k = index.index_qubits();
    std::vector<uint64_t> marked = marked_slices(index, query);

    AlignResult result;
    result.matches = marked.size();
    result.shots = shots;
    result.seed = seed;
    result.iterations = options.use_known_match_count
                            ? grover_iterations(n, marked.size())
                            : grover_iterations_unknown(n);

    RunSummary summary;
    if (options.compiled) {
        Circuit circuit = grover_build(k, marked, result.iterations);
        summary = run(circuit, noise, shots, seed, options.run);
    } else {
        summary = grover_run(k, marked, result.iterations, noise, shots, seed,
                             options.run);
    }

    for (const auto &[key, count] : summary.histogram) {
        uint64_t value = 0;
        for (char c : key) {
            value = value * 2 + (c == '1');
        }
        AlignmentHit hit;
        hit.slice_index = static_cast<int>(value);
        hit.padding = index.slices[value].padding;
        hit.reference_offset =
            hit.padding ? -1 : hit.slice_index * index.slice_width;
        hit.count = count;
        hit.frequency = static_cast<double>(count) / static_cast<double>(shots);
        result.hits.push_back(hit);
    }
    std::sort(result.hits.begin(), result.hits.end(),
              [](const AlignmentHit &a, const AlignmentHit &b) {
                  if (a.count != b.count) {
                      return a.count > b.count;
                  }
                  return a.slice_index < b.slice_index;
              });
    return result;
}

} // namespace qstack
