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

#include "qstack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qstack/error.hpp"

namespace qstack {

QuantumState::QuantumState(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw std::invalid_argument("state size out of range");
    }
    amps_.assign(uint64_t{1} << n_, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void QuantumState::reset() {
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

double QuantumState::norm_sqr() const {
    double total = 0.0;
    for (const Amplitude &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void QuantumState::apply1(int qubit, const std::array<Amplitude, 4> &m) {
    const uint64_t mask = uint64_t{1} << qubit;
    const uint64_t dim = dimension();
    for (uint64_t i = 0; i < dim; ++i) {
        if (i & mask) {
            continue;
        }
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[i | mask];
        amps_[i] = m[0] * a0 + m[1] * a1;
        amps_[i | mask] = m[2] * a0 + m[3] * a1;
    }
}

void QuantumState::apply_cnot(int control, int target) {
    const uint64_t cmask = uint64_t{1} << control;
    const uint64_t tmask = uint64_t{1} << target;
    const uint64_t dim = dimension();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

void QuantumState::apply_cz(int a, int b) {
    const uint64_t mask = (uint64_t{1} << a) | (uint64_t{1} << b);
    const uint64_t dim = dimension();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void QuantumState::apply_swap(int a, int b) {
    const uint64_t amask = uint64_t{1} << a;
    const uint64_t bmask = uint64_t{1} << b;
    const uint64_t dim = dimension();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & amask) && !(i & bmask)) {
            std::swap(amps_[i], amps_[(i ^ amask) | bmask]);
        }
    }
}

void QuantumState::phase_flip(uint64_t basis) { amps_[basis] = -amps_[basis]; }

double QuantumState::prob_one(int qubit) const {
    const uint64_t mask = uint64_t{1} << qubit;
    const uint64_t dim = dimension();
    double p = 0.0;
    for (uint64_t i = 0; i < dim; ++i) {
        if (i & mask) {
            p += std::norm(amps_[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

void QuantumState::collapse(int qubit, int bit, double prob) {
    const uint64_t mask = uint64_t{1} << qubit;
    const uint64_t keep = bit ? mask : 0;
    const double scale = 1.0 / std::sqrt(prob);
    const uint64_t dim = dimension();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & mask) == keep) {
            amps_[i] *= scale;
        } else {
            amps_[i] = 0.0;
        }
    }
}

void QuantumState::project_zero(int qubit) {
    double p0 = 1.0 - prob_one(qubit);
    const uint64_t mask = uint64_t{1} << qubit;
    const uint64_t dim = dimension();
    if (p0 < 1e-15) {
        // Qubit is certainly |1>: projection would annihilate the state, so
        // move the population down instead.
        for (uint64_t i = 0; i < dim; ++i) {
            if (!(i & mask)) {
                amps_[i] = amps_[i | mask];
                amps_[i | mask] = 0.0;
            }
        }
        return;
    }
    collapse(qubit, 0, p0);
}

std::array<Amplitude, 4> opcode_unitary(Opcode op, double angle) {
    using namespace std::complex_literals;
    const double is = 1.0 / std::numbers::sqrt2;
    switch (op) {
    case Opcode::X: return {0, 1, 1, 0};
    case Opcode::Y: return {0, -1i, 1i, 0};
    case Opcode::Z: return {1, 0, 0, -1};
    case Opcode::H: return {is, is, is, -is};
    case Opcode::S: return {1, 0, 0, 1i};
    case Opcode::SDAG: return {1, 0, 0, -1i};
    case Opcode::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case Opcode::TDAG: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
    case Opcode::RX: {
        double c = std::cos(angle / 2), s = std::sin(angle / 2);
        return {c, -1i * s, -1i * s, c};
    }
    case Opcode::RY: {
        double c = std::cos(angle / 2), s = std::sin(angle / 2);
        return {c, -s, s, c};
    }
    case Opcode::RZ:
        return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
    default:
        throw std::invalid_argument("opcode has no single-qubit unitary");
    }
}

void apply_gate(QuantumState &state, const Gate &gate) {
    switch (gate.opcode) {
    case Opcode::CNOT:
        state.apply_cnot(gate.qubits[0], gate.qubits[1]);
        return;
    case Opcode::CZ:
        state.apply_cz(gate.qubits[0], gate.qubits[1]);
        return;
    case Opcode::SWAP:
        state.apply_swap(gate.qubits[0], gate.qubits[1]);
        return;
    case Opcode::PREP_Z:
    case Opcode::MEASURE_Z:
        throw std::invalid_argument("apply_gate expects a unitary opcode");
    default:
        state.apply1(gate.qubits[0], opcode_unitary(gate.opcode, gate.angle));
    }
}

void apply_depolarizing(QuantumState &state, std::span<const int> qubits,
                        double p, Rng &rng) {
    for (int q : qubits) {
        double u = rng.uniform();
        if (u >= p) {
            continue;
        }
        if (u < p / 3) {
            state.apply1(q, opcode_unitary(Opcode::X, 0));
        } else if (u < 2 * p / 3) {
            state.apply1(q, opcode_unitary(Opcode::Y, 0));
        } else {
            state.apply1(q, opcode_unitary(Opcode::Z, 0));
        }
    }
}

int measure(QuantumState &state, int qubit, Rng &rng, double flip_p) {
    double p1 = state.prob_one(qubit);
    int bit = rng.uniform() < p1 ? 1 : 0;
    state.collapse(qubit, bit, bit ? p1 : 1.0 - p1);
    int reported = bit;
    if (rng.uniform() < flip_p) {
        reported ^= 1;
    }
    return reported;
}

NoiseModel NoiseModel::depolarizing(double p, double flip_p) {
    if (p < 0.0 || p > 1.0 || flip_p < 0.0 || flip_p > 1.0) {
        raise(ErrorKind::CONFIG, "noise probabilities must lie in [0,1]");
    }
    NoiseModel m;
    m.kind = Kind::DEPOLARIZING;
    m.gate_error_p = p;
    m.measurement_flip_p = flip_p;
    return m;
}

std::string ShotResult::key() const {
    std::string out;
    for (int q = static_cast<int>(bits.size()) - 1; q >= 0; --q) {
        if (measured[q]) {
            out += static_cast<char>('0' + bits[q]);
        }
    }
    return out;
}

ShotResult run_shot(const Circuit &circuit, const NoiseModel &noise,
                    QuantumState &state, Rng &rng, bool check_norms) {
    const bool noisy = noise.kind == NoiseModel::Kind::DEPOLARIZING;
    const double p = noisy ? noise.gate_error_p : 0.0;
    const double flip_p = noisy ? noise.measurement_flip_p : 0.0;

    state.reset();
    ShotResult shot;
    shot.bits.assign(circuit.num_qubits, 0);
    shot.measured.assign(circuit.num_qubits, false);

    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            switch (g.opcode) {
            case Opcode::MEASURE_Z: {
                int q = g.qubits[0];
                shot.bits[q] = measure(state, q, rng, flip_p);
                shot.measured[q] = true;
                break;
            }
            case Opcode::PREP_Z:
                state.project_zero(g.qubits[0]);
                break;
            default:
                apply_gate(state, g);
                apply_depolarizing(state, g.qubits, p, rng);
            }
        }
        if (check_norms) {
            double norm = std::sqrt(state.norm_sqr());
            if (std::abs(norm - 1.0) > kNormTolerance) {
                throw std::logic_error("state norm drifted to " +
                                       std::to_string(norm));
            }
        }
    }
    return shot;
}

RunSummary run(const Circuit &circuit, const NoiseModel &noise, uint64_t shots,
               uint64_t seed, const RunOptions &options) {
    if (circuit.num_qubits > options.max_qubits) {
        raise(ErrorKind::TOO_MANY_QUBITS,
              "circuit uses " + std::to_string(circuit.num_qubits) +
                  " qubits; configured maximum is " +
                  std::to_string(options.max_qubits));
    }
    RunSummary summary;
    summary.shots = shots;
    summary.seed = seed;
    QuantumState state(circuit.num_qubits);
    for (uint64_t s = 0; s < shots; ++s) {
        Rng rng(seed ^ s);
        ShotResult shot = run_shot(circuit, noise, state, rng, options.check_norms);
        ++summary.histogram[shot.key()];
    }
    return summary;
}

QuantumState run_statevector(const Circuit &circuit) {
    QuantumState state(circuit.num_qubits);
    for (const Bundle &bundle : circuit.bundles) {
        for (const Gate &g : bundle.gates) {
            if (g.opcode == Opcode::MEASURE_Z) {
                throw std::invalid_argument(
                    "run_statevector cannot execute measurements");
            }
            if (g.opcode == Opcode::PREP_Z) {
                state.project_zero(g.qubits[0]);
            } else {
                apply_gate(state, g);
            }
        }
    }
    return state;
}

} // namespace qstack
