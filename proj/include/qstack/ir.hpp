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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qstack {

/// The instruction set understood by the whole stack. CNOT/CZ/SWAP take two
/// qubits, RX/RY/RZ take one qubit plus an angle in radians, everything else
/// takes a single qubit.
enum class Opcode {
    PREP_Z,
    X,
    Y,
    Z,
    H,
    S,
    SDAG,
    T,
    TDAG,
    RX,
    RY,
    RZ,
    CNOT,
    CZ,
    SWAP,
    MEASURE_Z,
};

inline constexpr int kNumOpcodes = 16;

/// Canonical lowercase mnemonic ("prep_z", "h", "measure", ...).
std::string_view opcode_name(Opcode op);

/// Case-insensitive mnemonic lookup; nullopt for unknown names.
std::optional<Opcode> opcode_from_name(std::string_view name);

int opcode_num_qubits(Opcode op);
bool opcode_has_angle(Opcode op);

/// True for every opcode that applies a unitary (everything except PREP_Z and
/// MEASURE_Z).
bool opcode_is_unitary(Opcode op);

/// A single instruction. Construction validates arity and qubit distinctness;
/// violations are programmer errors and throw std::invalid_argument.
struct Gate {
    Opcode opcode;
    std::vector<int> qubits;
    double angle = 0.0; // meaningful only when opcode_has_angle(opcode)

    Gate(Opcode op, std::vector<int> qs, double theta = 0.0);

    bool operator==(const Gate &) const = default;
};

Gate gate1(Opcode op, int q);
Gate gate1(Opcode op, int q, double angle);
Gate gate2(Opcode op, int a, int b);

/// Gates that start in the same cycle. Member gates must touch pairwise
/// disjoint qubit sets.
struct Bundle {
    std::vector<Gate> gates;

    bool operator==(const Bundle &) const = default;
};

struct Circuit {
    std::string version = "1.0";
    int num_qubits = 1;
    std::vector<Bundle> bundles;

    bool operator==(const Circuit &) const = default;
};

/// Appends a gate as its own singleton bundle, validating index bounds.
void append(Circuit &circuit, Gate gate);

/// Appends a whole bundle, validating disjointness and index bounds.
void append(Circuit &circuit, Bundle bundle);

/// Returns a description of the first invariant violation, or nullopt if the
/// circuit is well formed.
std::optional<std::string> validate(const Circuit &circuit);

enum class SourceErrorKind {
    UNKNOWN_OPCODE,
    BAD_ARITY,
    INDEX_OUT_OF_RANGE,
    DUPLICATE_QUBIT_IN_BUNDLE,
    MALFORMED_NUMBER,
    MISSING_HEADER,
};

std::string_view source_error_kind_name(SourceErrorKind kind);

/// First violation found in the source, in source order. line/column are
/// 1-based and point at the offending token.
struct SourceError {
    int line = 0;
    int column = 0;
    SourceErrorKind kind = SourceErrorKind::MISSING_HEADER;
    std::string message;
};

struct ParseResult {
    std::optional<Circuit> circuit;
    std::optional<SourceError> error;

    bool ok() const { return circuit.has_value(); }
};

/// Parses assembly text. Total: any input yields either a validated Circuit
/// or the first SourceError, never an exception.
///
/// Grammar: `version <v>` then `qubits <n>` headers, then one instruction per
/// line. A gate is `<opcode> q[<i>](, q[<j>])(, <angle>)`; a parallel bundle
/// is `{ <gate> | <gate> | ... }`. `#` starts a comment. Opcodes are
/// case-insensitive. Angles are decimal radians or pi fractions (`pi`,
/// `-pi/2`, `pi/4`).
ParseResult parse(std::string_view source);

/// Canonical text form: LF line endings, lowercase mnemonics, one bundle per
/// line. parse(print(c)) reproduces c exactly.
std::string print(const Circuit &circuit);

std::string gate_text(const Gate &gate);

/// Shortest decimal form that parses back to the same double.
std::string format_angle(double angle);

} // namespace qstack
