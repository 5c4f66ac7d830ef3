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
#include <vector>

#include "qstack/ir.hpp"
#include "qstack/qubo.hpp"
#include "qstack/simulator.hpp"

namespace qstack {

struct QaoaParams {
    int layers = 1;
    std::vector<double> gammas; // one per layer
    std::vector<double> betas;  // one per layer
};

/// Builds the alternating circuit for an Ising cost function:
/// H on every qubit, then per layer the cost phase (RZ(2*gamma*h_i) per
/// nonzero field; CNOT, RZ(2*gamma*J_ij), CNOT per nonzero coupling) and the
/// mixer RX(2*beta) per qubit, then a measurement of every qubit.
///
/// Spin convention: measured bit 0 is s = +1 (so x = 1 - bit under the
/// x = (1+s)/2 isomorphism).
Circuit qaoa_build(const IsingModel &ising, const QaoaParams &params,
                   int max_qubits = 25);

/// Mean sampled Ising energy of one parameter point.
double qaoa_mean_energy(const IsingModel &ising, const RunSummary &summary);

/// Spins from a measured bitstring key (qubit n-1 printed first).
std::vector<int> spins_from_key(const std::string &key);

struct QaoaOptResult {
    QaoaParams params;          // best found
    double mean_energy = 0.0;   // sampled mean at those parameters
    Assignment best_assignment; // lowest-energy bitstring seen anywhere (x-space)
    int evaluations = 0;
};

/// Derivative-free parameter search: an 8x8 grid over
/// (gamma, beta) in [0,pi) x [0,pi/2) applied to every layer, then cyclic
/// coordinate descent with halving steps. Each energy evaluation runs
/// shots_per_eval perfect-mode shots with its own substream seed; the whole
/// search is deterministic and stops after `budget` evaluations.
QaoaOptResult qaoa_optimize(const IsingModel &ising, int layers,
                            uint64_t shots_per_eval, uint64_t seed, int budget,
                            int max_qubits = 25);

} // namespace qstack
