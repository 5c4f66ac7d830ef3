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
#include <span>
#include <vector>

#include "qstack/ir.hpp"
#include "qstack/rng.hpp"

namespace qstack {

/// The 24-element single-qubit Clifford group, generated from {H, S} and
/// tabulated up to global phase. Element 0 is the identity (empty word).
class CliffordTable {
public:
    static const CliffordTable &instance();

    int size() const { return static_cast<int>(words_.size()); }

    /// Index of C_after * C_before (circuit order: before runs first).
    int multiply(int after, int before) const { return mul_table_[after][before]; }

    int inverse(int element) const { return inv_table_[element]; }

    /// Shortest H/S word realizing the element, in circuit order.
    const std::vector<Opcode> &word(int element) const { return words_[element]; }

    const std::array<std::complex<double>, 4> &matrix(int element) const {
        return matrices_[element];
    }

    /// Average physical gates per element across the group.
    double mean_word_length() const;

private:
    CliffordTable();

    std::vector<std::vector<Opcode>> words_;
    std::vector<std::array<std::complex<double>, 4>> matrices_;
    std::vector<std::vector<int>> mul_table_;
    std::vector<int> inv_table_;
};

/// Uniform draw of `length` Clifford indices.
std::vector<int> random_clifford_sequence(Rng &rng, int length);

/// Product of the sequence in circuit order.
int net_clifford(const CliffordTable &table, std::span<const int> indices);

/// Single-qubit circuit applying the sequence, then the Clifford that
/// inverts its product, then (optionally) a measurement.
Circuit rb_circuit(const CliffordTable &table, std::span<const int> indices,
                   bool with_measure);

struct RbConfig {
    std::vector<int> sequence_lengths; // strictly increasing, positive
    int sequences_per_length = 30;
    double gate_error_p = 0.0;
    int shots_per_sequence = 500;
};

struct RbLengthStats {
    int length = 0;
    double mean_survival = 0.0;
    double stddev = 0.0;
};

struct SurvivalFit {
    double amplitude = 0.0; // A
    double baseline = 0.0;  // B
    double decay = 1.0;     // f
};

/// Least-squares fit of mean survival to A * f^m + B. Flat-at-constant data
/// fits f = 1 with the baseline pinned to the depolarized limit 1/2.
SurvivalFit fit_survival(std::span<const int> lengths,
                         std::span<const double> means);

struct RbResult {
    std::vector<RbLengthStats> stats;
    SurvivalFit fit;
    double error_per_clifford = 0.0; // (1 - f) / 2
};

/// Runs the benchmarking sweep: random Clifford sequences plus inversion at
/// each length, executed under the depolarizing model, survival fitted to
/// A * f^m + B. Throws FIT_FAILED when the survival curve rises beyond
/// statistical tolerance.
RbResult run_rb(const RbConfig &config, uint64_t seed);

} // namespace qstack
