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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qstack/ir.hpp"
#include "qstack/simulator.hpp"

namespace qstack {

struct ReferenceSlice {
    int index = 0;
    std::string sequence; // empty for padding entries; padding never matches
    bool padding = false;
};

/// Non-overlapping fixed-width slices of a reference string, padded with
/// non-matching entries up to a power-of-two count.
struct ReferenceIndex {
    std::string reference;
    int slice_width = 0;
    std::vector<ReferenceSlice> slices;

    uint64_t num_slices() const { return slices.size(); }
    int index_qubits() const;
};

/// Slices `reference` (A/C/G/T only) into width-w windows; the tail shorter
/// than w is dropped. Throws CONFIG for bad alphabet or when no full slice
/// fits.
ReferenceIndex make_reference_index(const std::string &reference,
                                    int slice_width);

struct AlignmentQuery {
    std::string read; // length must equal the index slice width
    int max_mismatch = 0;
};

int hamming_distance(std::string_view a, std::string_view b);

/// Slice indices within Hamming tolerance of the read.
std::vector<uint64_t> marked_slices(const ReferenceIndex &index,
                                    const AlignmentQuery &query);

/// floor((pi/4) * sqrt(N/M)) — the amplification sweet spot when the match
/// count is known.
int grover_iterations(uint64_t num_entries, uint64_t num_matches);

/// floor((pi/4) * sqrt(N)) for an unknown match count.
int grover_iterations_unknown(uint64_t num_entries);

/// Builds the full search circuit over k index qubits in native gates:
/// H on every index qubit, then `iterations` rounds of phase oracle (one
/// X-sandwiched multi-controlled Z block per marked state) and diffusion,
/// then measurement of the index qubits.
///
/// Multi-controlled Z is emitted exactly: Z/CZ directly, CCZ as the standard
/// T/CNOT network, and larger controls through a Toffoli ladder over k-3
/// clean ancilla qubits (indices k..), uncomputed after each use. Ancillas
/// are never measured.
Circuit grover_build(int index_qubits, const std::vector<uint64_t> &marked,
                     int iterations);

/// The phase oracle alone (no state prep, no measurement), over the same
/// qubit layout as grover_build. Flips the sign of exactly the marked basis
/// states.
Circuit grover_oracle_circuit(int index_qubits,
                              const std::vector<uint64_t> &marked);

/// The diffusion reflection alone, over the same qubit layout as
/// grover_build.
Circuit grover_diffusion_circuit(int index_qubits);

/// Fast execution path: the oracle and the diffusion reflection are applied
/// as k-qubit diagonals on the state vector instead of compiled gates. Under
/// noise, each diagonal counts as one gate touching all k qubits.
RunSummary grover_run(int index_qubits, const std::vector<uint64_t> &marked,
                      int iterations, const NoiseModel &noise, uint64_t shots,
                      uint64_t seed, const RunOptions &options = {});

struct AlignmentHit {
    int slice_index = 0;
    int reference_offset = 0; // -1 for padding entries
    bool padding = false;
    uint64_t count = 0;
    double frequency = 0.0;
};

struct AlignOptions {
    /// Use the classically known match count M for the iteration count;
    /// false selects the unknown-M fallback floor((pi/4) sqrt(N)).
    bool use_known_match_count = true;
    /// Execute the compiled circuit from grover_build instead of the
    /// diagonal fast path.
    bool compiled = false;
    RunOptions run;
};

struct AlignResult {
    std::vector<AlignmentHit> hits; // by descending count, then index
    int iterations = 0;
    uint64_t matches = 0;
    uint64_t shots = 0;
    uint64_t seed = 0;
};

/// Marks slices within Hamming tolerance, amplifies them with Grover search
/// on the simulator, and ranks indices by measured frequency.
AlignResult grover_align(const ReferenceIndex &index, const AlignmentQuery &query,
                         const NoiseModel &noise, uint64_t shots, uint64_t seed,
                         const AlignOptions &options = {});

} // namespace qstack
