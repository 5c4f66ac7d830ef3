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

#include <stdexcept>
#include <string>

namespace qstack {

/// Domain error categories shared across the stack.
enum class ErrorKind {
    TOO_MANY_QUBITS,
    NOT_ROUTED,
    TOO_LARGE,
    LENGTH_MISMATCH,
    BAD_PENALTY,
    NOT_POWER_OF_TWO,
    NO_MATCH_KNOWN,
    FIT_FAILED,
    IO,
    CONFIG,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace qstack
