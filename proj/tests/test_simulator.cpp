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

#include <cmath>
#include <numbers>

#include "qstack/error.hpp"
#include "qstack/simulator.hpp"
#include "support.hpp"

using namespace qstack;

namespace {

Circuit bell_measured() {
    Circuit c;
    c.num_qubits = 2;
    append(c, gate1(Opcode::H, 0));
    append(c, gate2(Opcode::CNOT, 0, 1));
    append(c, gate1(Opcode::MEASURE_Z, 0));
    append(c, gate1(Opcode::MEASURE_Z, 1));
    return c;
}

Gate inverse_of(const Gate &g) {
    switch (g.opcode) {
    case Opcode::S: return gate1(Opcode::SDAG, g.qubits[0]);
    case Opcode::SDAG: return gate1(Opcode::S, g.qubits[0]);
    case Opcode::T: return gate1(Opcode::TDAG, g.qubits[0]);
    case Opcode::TDAG: return gate1(Opcode::T, g.qubits[0]);
    case Opcode::RX:
    case Opcode::RY:
    case Opcode::RZ: return Gate(g.opcode, g.qubits, -g.angle);
    default: return g; // X, Y, Z, H, CNOT, CZ, SWAP are involutions
    }
}

} // namespace

TEST_CASE("hadamard creates the textbook superposition") {
    QuantumState state(1);
    apply_gate(state, gate1(Opcode::H, 0));
    const double is = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(state.amplitude(0) - Amplitude{is, 0}) < 1e-15);
    CHECK(std::abs(state.amplitude(1) - Amplitude{is, 0}) < 1e-15);
}

TEST_CASE("cnot entangles with qubit 0 as least-significant bit") {
    QuantumState state(2);
    apply_gate(state, gate1(Opcode::H, 0)); // (|00> + |01>)/sqrt2, index 1 = q0 set
    apply_gate(state, gate2(Opcode::CNOT, 0, 1));
    const double is = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(state.amplitude(0) - Amplitude{is, 0}) < 1e-15);
    CHECK(std::abs(state.amplitude(3) - Amplitude{is, 0}) < 1e-15);
    CHECK(std::abs(state.amplitude(1)) < 1e-15);
    CHECK(std::abs(state.amplitude(2)) < 1e-15);
}

TEST_CASE("every unitary opcode composed with its inverse is the identity") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Circuit prep = testing::random_unitary_circuit(rng, 3, 12);
        QuantumState reference = run_statevector(prep);

        std::vector<int> free_qubits = {0, 1, 2};
        auto pool = testing::opcode_pool(
            {.allow_measure = false, .allow_prep = false});
        Opcode op = pool[rng.below(pool.size())];
        Gate g = testing::random_gate(rng, op, free_qubits);

        QuantumState state = run_statevector(prep);
        apply_gate(state, g);
        apply_gate(state, inverse_of(g));
        CHECK(testing::max_amplitude_diff(state, reference) < 1e-12);
    }
}

TEST_CASE("rz pairs cancel on random states") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit prep = testing::random_unitary_circuit(rng, 2, 10);
        QuantumState reference = run_statevector(prep);
        QuantumState state = run_statevector(prep);
        double theta = (rng.uniform() - 0.5) * 8;
        apply_gate(state, gate1(Opcode::RZ, 0, theta));
        apply_gate(state, gate1(Opcode::RZ, 0, -theta));
        CHECK(testing::max_amplitude_diff(state, reference) < 1e-12);
    }
}

TEST_CASE("depolarizing with p=0 leaves the state untouched") {
    Rng rng(9);
    QuantumState state(2);
    apply_gate(state, gate1(Opcode::H, 0));
    QuantumState before = state;
    const int qubits[2] = {0, 1};
    apply_depolarizing(state, qubits, 0.0, rng);
    CHECK(testing::max_amplitude_diff(state, before) == 0.0);
}

TEST_CASE("depolarizing with p=1 flips |0> two thirds of the time") {
    Rng rng(10);
    const int trials = 30000;
    int ones = 0;
    QuantumState state(1);
    for (int t = 0; t < trials; ++t) {
        state.reset();
        const int qubits[1] = {0};
        apply_depolarizing(state, qubits, 1.0, rng);
        if (state.prob_one(0) > 0.5) {
            ++ones;
        }
    }
    double freq = static_cast<double>(ones) / trials;
    CHECK(freq == doctest::Approx(2.0 / 3.0).epsilon(0.015));
}

TEST_CASE("measuring a definite state is deterministic") {
    QuantumState state(1);
    apply_gate(state, gate1(Opcode::X, 0));
    Rng rng(11);
    CHECK(measure(state, 0, rng, 0.0) == 1);
    CHECK(measure(state, 0, rng, 0.0) == 1); // collapsed, still |1>
}

TEST_CASE("readout flips report but do not corrupt the state") {
    QuantumState state(1);
    Rng rng(12);
    CHECK(measure(state, 0, rng, 1.0) == 1); // |0> reported flipped
    CHECK(measure(state, 0, rng, 0.0) == 0); // state is still |0>
}

TEST_CASE("bell shots are perfectly correlated") {
    RunSummary summary = run(bell_measured(), NoiseModel::perfect(), 4096, 7);
    uint64_t total = 0;
    for (const auto &[key, count] : summary.histogram) {
        CHECK((key == "00" || key == "11"));
        total += count;
    }
    CHECK(total == 4096);
    double f0 = static_cast<double>(summary.histogram.at("00")) / 4096.0;
    CHECK(f0 > 0.5 - 0.024);
    CHECK(f0 < 0.5 + 0.024);
}

TEST_CASE("plus state measures 1 about half the time") {
    Circuit c;
    c.num_qubits = 1;
    append(c, gate1(Opcode::H, 0));
    append(c, gate1(Opcode::MEASURE_Z, 0));
    RunSummary summary = run(c, NoiseModel::perfect(), 10000, 123);
    double f1 = static_cast<double>(summary.histogram.at("1")) / 10000.0;
    CHECK(f1 > 0.485);
    CHECK(f1 < 0.515);
}

TEST_CASE("empty circuit yields the empty outcome") {
    Circuit c;
    c.num_qubits = 3;
    RunSummary summary = run(c, NoiseModel::perfect(), 10, 1);
    REQUIRE(summary.histogram.size() == 1);
    CHECK(summary.histogram.at("") == 10);
}

TEST_CASE("perfect mode equals depolarizing with zero rates, bit for bit") {
    Rng rng(13);
    Circuit c = testing::random_circuit(
        rng, {.max_qubits = 4, .max_bundles = 30, .allow_measure = true});
    append(c, gate1(Opcode::MEASURE_Z, 0));
    RunSummary perfect = run(c, NoiseModel::perfect(), 500, 99);
    RunSummary zeroed = run(c, NoiseModel::depolarizing(0.0, 0.0), 500, 99);
    CHECK(perfect.histogram == zeroed.histogram);
}

TEST_CASE("runs are deterministic in the seed") {
    Circuit c = bell_measured();
    RunSummary a = run(c, NoiseModel::depolarizing(0.05, 0.01), 2000, 42);
    RunSummary b = run(c, NoiseModel::depolarizing(0.05, 0.01), 2000, 42);
    RunSummary other = run(c, NoiseModel::depolarizing(0.05, 0.01), 2000, 43);
    CHECK(a.histogram == b.histogram);
    CHECK(a.histogram != other.histogram);
}

TEST_CASE("qubit cap is enforced") {
    Circuit c;
    c.num_qubits = 26;
    CHECK_THROWS_AS(run(c, NoiseModel::perfect(), 1, 1), Error);
    RunOptions raised;
    raised.max_qubits = 26;
    CHECK(run(c, NoiseModel::perfect(), 1, 1, raised).histogram.at("") == 1);
}

TEST_CASE("prep_z projects onto zero and renormalizes") {
    QuantumState state(1);
    apply_gate(state, gate1(Opcode::H, 0));
    state.project_zero(0);
    CHECK(std::abs(state.amplitude(0) - Amplitude{1, 0}) < 1e-12);
    CHECK(std::abs(state.amplitude(1)) < 1e-12);

    // Deterministic reset when the qubit is certainly |1>.
    QuantumState one(1);
    apply_gate(one, gate1(Opcode::X, 0));
    one.project_zero(0);
    CHECK(std::abs(one.amplitude(0) - Amplitude{1, 0}) < 1e-12);
}

TEST_CASE("prep_z inside a run reinitializes the qubit") {
    Circuit c;
    c.num_qubits = 1;
    append(c, gate1(Opcode::X, 0));
    append(c, gate1(Opcode::MEASURE_Z, 0));
    append(c, gate1(Opcode::PREP_Z, 0));
    append(c, gate1(Opcode::MEASURE_Z, 0));
    RunSummary summary = run(c, NoiseModel::perfect(), 50, 5);
    // Final measurement dominates the recorded bit for qubit 0.
    CHECK(summary.histogram.at("0") == 50);
}

TEST_CASE("norm stays within 1e-12 across random noisy circuits") {
    Rng rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = testing::random_circuit(
            rng, {.max_qubits = 5, .max_bundles = 40});
        RunOptions options;
        options.check_norms = true;
        CHECK_NOTHROW(run(c, NoiseModel::depolarizing(0.05, 0.02), 20,
                          trial * 31 + 1, options));
    }
}

TEST_CASE("noise probabilities are validated") {
    CHECK_THROWS_AS(NoiseModel::depolarizing(1.5), Error);
    CHECK_THROWS_AS(NoiseModel::depolarizing(-0.1), Error);
    CHECK_THROWS_AS(NoiseModel::depolarizing(0.5, 2.0), Error);
}

TEST_CASE("statevector runner rejects measurements") {
    Circuit c;
    c.num_qubits = 1;
    append(c, gate1(Opcode::MEASURE_Z, 0));
    CHECK_THROWS_AS(run_statevector(c), std::invalid_argument);
}
