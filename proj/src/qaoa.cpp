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

#include "qstack/qaoa.hpp"

#include <cmath>
#include <numbers>

#include "qstack/error.hpp"
#include "qstack/rng.hpp"

namespace qstack {

Circuit qaoa_build(const IsingModel &ising, const QaoaParams &params,
                   int max_qubits) {
    if (ising.n < 1) {
        raise(ErrorKind::CONFIG, "Ising model has no spins");
    }
    if (ising.n > max_qubits) {
        raise(ErrorKind::TOO_MANY_QUBITS,
              "QAOA needs " + std::to_string(ising.n) + " qubits; cap is " +
                  std::to_string(max_qubits));
    }
    if (params.layers < 1 ||
        static_cast<int>(params.gammas.size()) != params.layers ||
        static_cast<int>(params.betas.size()) != params.layers) {
        raise(ErrorKind::CONFIG, "parameter vectors must match layer count");
    }

    Circuit circuit;
    circuit.num_qubits = ising.n;
    for (int q = 0; q < ising.n; ++q) {
        append(circuit, gate1(Opcode::H, q));
    }
    for (int layer = 0; layer < params.layers; ++layer) {
        double gamma = params.gammas[layer];
        double beta = params.betas[layer];
        for (int i = 0; i < ising.n; ++i) {
            if (ising.h[i] != 0.0) {
                append(circuit, gate1(Opcode::RZ, i, 2.0 * gamma * ising.h[i]));
            }
        }
        for (const auto &[pair, j] : ising.couplings) {
            if (j == 0.0) {
                continue;
            }
            append(circuit, gate2(Opcode::CNOT, pair.first, pair.second));
            append(circuit, gate1(Opcode::RZ, pair.second, 2.0 * gamma * j));
            append(circuit, gate2(Opcode::CNOT, pair.first, pair.second));
        }
        for (int q = 0; q < ising.n; ++q) {
            append(circuit, gate1(Opcode::RX, q, 2.0 * beta));
        }
    }
    for (int q = 0; q < ising.n; ++q) {
        append(circuit, gate1(Opcode::MEASURE_Z, q));
    }
    return circuit;
}

std::vector<int> spins_from_key(const std::string &key) {
    // key prints qubit n-1 first; bit 0 means spin +1.
    std::vector<int> spins(key.size());
    for (size_t i = 0; i < key.size(); ++i) {
        spins[key.size() - 1 - i] = key[i] == '0' ? 1 : -1;
    }
    return spins;
}

double qaoa_mean_energy(const IsingModel &ising, const RunSummary &summary) {
    double total = 0.0;
    uint64_t count = 0;
    for (const auto &[key, c] : summary.histogram) {
        total += ising_energy(ising, spins_from_key(key)) * static_cast<double>(c);
        count += c;
    }
    return count == 0 ? 0.0 : total / static_cast<double>(count);
}

namespace {

struct Evaluator {
    const IsingModel &ising;
    uint64_t shots;
    uint64_t seed;
    int budget;
    int max_qubits;

    int used = 0;
    bool have_best_sample = false;
    Assignment best_sample;

    bool exhausted() const { return used >= budget; }

    double eval(const QaoaParams &params) {
        Circuit circuit = qaoa_build(ising, params, max_qubits);
        RunSummary summary = run(circuit, NoiseModel::perfect(), shots,
                                 mix_seed(seed, static_cast<uint64_t>(used)));
        ++used;
        for (const auto &[key, c] : summary.histogram) {
            (void)c;
            std::vector<int> spins = spins_from_key(key);
            double energy = ising_energy(ising, spins);
            if (!have_best_sample || energy < best_sample.energy) {
                best_sample.energy = energy;
                best_sample.bits.assign(spins.size(), 0);
                for (size_t i = 0; i < spins.size(); ++i) {
                    best_sample.bits[i] = spins[i] > 0 ? 1 : 0;
                }
                have_best_sample = true;
            }
        }
        return qaoa_mean_energy(ising, summary);
    }
};

} // namespace

QaoaOptResult qaoa_optimize(const IsingModel &ising, int layers,
                            uint64_t shots_per_eval, uint64_t seed, int budget,
                            int max_qubits) {
    if (budget < 1) {
        raise(ErrorKind::CONFIG, "evaluation budget must be at least 1");
    }
    Evaluator ev{ising, shots_per_eval, seed, budget, max_qubits, 0, false, {}};

    auto uniform_params = [&](double gamma, double beta) {
        QaoaParams p;
        p.layers = layers;
        p.gammas.assign(layers, gamma);
        p.betas.assign(layers, beta);
        return p;
    };

    constexpr int kGrid = 8;
    const double gamma_step = std::numbers::pi / kGrid;
    const double beta_step = std::numbers::pi / 2 / kGrid;

    QaoaParams best_params = uniform_params(0.0, 0.0);
    double best_energy = ev.eval(best_params);
    for (int gi = 0; gi < kGrid && !ev.exhausted(); ++gi) {
        for (int bi = 0; bi < kGrid && !ev.exhausted(); ++bi) {
            if (gi == 0 && bi == 0) {
                continue; // already evaluated
            }
            QaoaParams p = uniform_params(gi * gamma_step, bi * beta_step);
            double energy = ev.eval(p);
            if (energy < best_energy) {
                best_energy = energy;
                best_params = p;
            }
        }
    }

    // Cyclic coordinate descent over (gamma_k, beta_k), halving steps after
    // every pass without improvement.
    double gstep = gamma_step / 2;
    double bstep = beta_step / 2;
    while (!ev.exhausted() && gstep > 1e-3) {
        bool improved = false;
        for (int layer = 0; layer < layers && !ev.exhausted(); ++layer) {
            for (int coord = 0; coord < 2 && !ev.exhausted(); ++coord) {
                double step = coord == 0 ? gstep : bstep;
                for (double direction : {+1.0, -1.0}) {
                    if (ev.exhausted()) {
                        break;
                    }
                    QaoaParams trial = best_params;
                    double &value = coord == 0 ? trial.gammas[layer]
                                               : trial.betas[layer];
                    value += direction * step;
                    double energy = ev.eval(trial);
                    if (energy < best_energy) {
                        best_energy = energy;
                        best_params = trial;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if (!improved) {
            gstep /= 2;
            bstep /= 2;
        }
    }

    QaoaOptResult result;
    result.params = best_params;
    result.mean_energy = best_energy;
    result.best_assignment = ev.best_sample;
    result.evaluations = ev.used;
    return result;
}

} // namespace qstack
