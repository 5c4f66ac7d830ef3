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

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qstack/ir.hpp"
#include "qstack/rng.hpp"

namespace qstack {

using Amplitude = std::complex<double>;

/// Dense state vector over 2^n amplitudes. Qubit 0 is the least-significant
/// bit of the basis index throughout the stack.
class QuantumState {
public:
    explicit QuantumState(int num_qubits);

    int num_qubits() const { return n_; }
    uint64_t dimension() const { return uint64_t{1} << n_; }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }
    Amplitude amplitude(uint64_t basis) const { return amps_[basis]; }

    /// Back to |0...0>.
    void reset();

    double norm_sqr() const;

    /// Applies a 2x2 unitary (row-major m00 m01 m10 m11) to one qubit.
    void apply1(int qubit, const std::array<Amplitude, 4> &m);

    void apply_cnot(int control, int target);
    void apply_cz(int a, int b);
    void apply_swap(int a, int b);

    /// Multiplies one basis amplitude by -1 (diagonal phase oracle building
    /// block).
    void phase_flip(uint64_t basis);

    double prob_one(int qubit) const;

    /// Projects onto `bit` for `qubit` and renormalizes; `prob` is the Born
    /// probability of that outcome.
    void collapse(int qubit, int bit, double prob);

    /// PREP_Z: project onto |0> and renormalize. A qubit that is certainly
    /// |1> is reset deterministically instead.
    void project_zero(int qubit);

private:
    int n_;
    std::vector<Amplitude> amps_;
};

/// Single-qubit unitary for a one-qubit opcode.
std::array<Amplitude, 4> opcode_unitary(Opcode op, double angle);

/// Applies any unitary opcode. PREP_Z/MEASURE_Z are not unitaries and throw.
void apply_gate(QuantumState &state, const Gate &gate);

/// For each listed qubit independently: with probability p apply X, Y or Z
/// (p/3 each). Exactly one rng draw per qubit regardless of p, so streams
/// stay aligned across error rates.
void apply_depolarizing(QuantumState &state, std::span<const int> qubits,
                        double p, Rng &rng);

/// Samples one qubit with Born probabilities, collapses on the true outcome,
/// and returns the reported bit (flipped with probability flip_p).
int measure(QuantumState &state, int qubit, Rng &rng, double flip_p);

struct NoiseModel {
    enum class Kind { PERFECT, DEPOLARIZING };

    Kind kind = Kind::PERFECT;
    double gate_error_p = 0.0;       // per gate, per touched qubit
    double measurement_flip_p = 0.0; // readout bit flip

    static NoiseModel perfect() { return {}; }
    static NoiseModel depolarizing(double p, double flip_p = 0.0);
};

struct RunOptions {
    int max_qubits = 25;
    /// Verify the 2-norm stays within 1e-12 of 1 after every bundle.
    bool check_norms = true;
};

inline constexpr double kNormTolerance = 1e-12;

/// Outcome of one shot: bits for measured qubits, in index order.
struct ShotResult {
    std::vector<int> bits;
    std::vector<bool> measured;

    /// Measured bits only, qubit (n-1) first; "" if nothing was measured.
    std::string key() const;
};

struct RunSummary {
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::map<std::string, uint64_t> histogram;
};

/// Executes one shot on a caller-provided state (reset internally).
ShotResult run_shot(const Circuit &circuit, const NoiseModel &noise,
                    QuantumState &state, Rng &rng, bool check_norms);

/// Runs `shots` independent shots from fresh |0..0> states. Shot s uses the
/// substream seed `seed ^ s`. Deterministic for fixed inputs.
RunSummary run(const Circuit &circuit, const NoiseModel &noise, uint64_t shots,
               uint64_t seed, const RunOptions &options = {});

/// Final state of a measurement-free circuit (PREP_Z allowed; MEASURE_Z
/// throws). Used for exact-amplitude checks.
QuantumState run_statevector(const Circuit &circuit);

} // namespace qstack
