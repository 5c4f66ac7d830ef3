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
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace qstack {

/// minimize offset + sum_{i<=j} Q_ij x_i x_j over binary x. The diagonal
/// holds the linear terms; absent pairs are zero. `offset` is a plain
/// additive constant (zero unless an encoder needs one).
struct QuboModel {
    int n = 0;
    std::map<std::pair<int, int>, double> coeffs; // keys normalized i <= j
    double offset = 0.0;

    /// Accumulates a coefficient onto the (i, j) cell, normalizing order.
    void add(int i, int j, double value);
    double coeff(int i, int j) const;
};

double evaluate(const QuboModel &model, std::span<const int> bits);

/// Spin model: offset + sum h_i s_i + sum_{i<j} J_ij s_i s_j, s in {-1,+1}.
struct IsingModel {
    int n = 0;
    std::vector<double> h;
    std::map<std::pair<int, int>, double> couplings; // keys i < j
    double offset = 0.0;
};

double ising_energy(const IsingModel &model, std::span<const int> spins);

/// Exact change of variables x_i = (1 + s_i) / 2; energies agree on every
/// assignment, with the constant part folded into the Ising offset.
IsingModel qubo_to_ising(const QuboModel &model);

struct Assignment {
    std::vector<int> bits;
    double energy = 0.0;
};

/// Exhaustive minimizer; ties break toward the lowest bitstring read as an
/// unsigned integer (bit i = variable i). Guarded to n <= 24.
Assignment brute_force(const QuboModel &model);

struct AnnealSchedule {
    int sweeps = 5000;      // temperature steps; each proposes n flips
    double alpha = 0.99;    // geometric cooling factor per sweep
    double t0 = 0.0;        // initial temperature; 0 = estimate from the model
};

/// Single-bit-flip Metropolis annealing, best over `restarts` independent
/// runs. Restart r uses the substream seed `seed ^ r`, so the best-of prefix
/// is monotone in the restart count for a fixed seed.
Assignment anneal(const QuboModel &model, const AnnealSchedule &schedule,
                  int restarts, uint64_t seed);

} // namespace qstack
