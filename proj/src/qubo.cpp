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

#include "qstack/qubo.hpp"

#include <algorithm>
#include <cmath>

#include "qstack/error.hpp"
#include "qstack/rng.hpp"

namespace qstack {

void QuboModel::add(int i, int j, double value) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
        raise(ErrorKind::CONFIG, "QUBO coefficient index out of range");
    }
    if (i > j) {
        std::swap(i, j);
    }
    coeffs[{i, j}] += value;
}

double QuboModel::coeff(int i, int j) const {
    if (i > j) {
        std::swap(i, j);
    }
    auto it = coeffs.find({i, j});
    return it == coeffs.end() ? 0.0 : it->second;
}

double evaluate(const QuboModel &model, std::span<const int> bits) {
    if (static_cast<int>(bits.size()) != model.n) {
        raise(ErrorKind::LENGTH_MISMATCH,
              "assignment has " + std::to_string(bits.size()) +
                  " bits, model has " + std::to_string(model.n) + " variables");
    }
    double energy = model.offset;
    for (const auto &[pair, q] : model.coeffs) {
        if (bits[pair.first] && bits[pair.second]) {
            energy += q;
        }
    }
    return energy;
}

double ising_energy(const IsingModel &model, std::span<const int> spins) {
    if (static_cast<int>(spins.size()) != model.n) {
        raise(ErrorKind::LENGTH_MISMATCH, "spin vector length mismatch");
    }
    double energy = model.offset;
    for (int i = 0; i < model.n; ++i) {
        energy += model.h[i] * spins[i];
    }
    for (const auto &[pair, j] : model.couplings) {
        energy += j * spins[pair.first] * spins[pair.second];
    }
    return energy;
}

IsingModel qubo_to_ising(const QuboModel &model) {
    IsingModel ising;
    ising.n = model.n;
    ising.h.assign(model.n, 0.0);
    ising.offset = model.offset;
    for (const auto &[pair, q] : model.coeffs) {
        auto [i, j] = pair;
        if (i == j) {
            // q * x_i = q * (1 + s_i) / 2
            ising.h[i] += q / 2;
            ising.offset += q / 2;
        } else {
            // q * x_i x_j = q * (1 + s_i)(1 + s_j) / 4
            ising.couplings[{i, j}] += q / 4;
            ising.h[i] += q / 4;
            ising.h[j] += q / 4;
            ising.offset += q / 4;
        }
    }
    return ising;
}

Assignment brute_force(const QuboModel &model) {
    if (model.n > 24) {
        raise(ErrorKind::TOO_LARGE,
              "brute force is guarded to 24 variables, got " +
                  std::to_string(model.n));
    }
    if (model.n < 1) {
        raise(ErrorKind::CONFIG, "model has no variables");
    }
    // Flat term list beats map lookups in the inner loop.
    struct Term {
        uint32_t mask_i, mask_j;
        double q;
    };
    std::vector<Term> terms;
    terms.reserve(model.coeffs.size());
    for (const auto &[pair, q] : model.coeffs) {
        terms.push_back({uint32_t{1} << pair.first, uint32_t{1} << pair.second, q});
    }

    const uint32_t count = uint32_t{1} << model.n;
    uint32_t best_x = 0;
    double best_energy = 0.0;
    for (uint32_t x = 0; x < count; ++x) {
        double energy = 0.0;
        for (const Term &t : terms) {
            if ((x & t.mask_i) && (x & t.mask_j)) {
                energy += t.q;
            }
        }
        if (x == 0 || energy < best_energy) {
            best_energy = energy;
            best_x = x;
        }
    }

    Assignment best;
    best.bits.resize(model.n);
    for (int i = 0; i < model.n; ++i) {
        best.bits[i] = (best_x >> i) & 1;
    }
    best.energy = best_energy + model.offset;
    return best;
}

namespace {

struct FlipTables {
    std::vector<double> diagonal;
    std::vector<std::vector<std::pair<int, double>>> neighbors;
};

FlipTables build_tables(const QuboModel &model) {
    FlipTables t;
    t.diagonal.assign(model.n, 0.0);
    t.neighbors.resize(model.n);
    for (const auto &[pair, q] : model.coeffs) {
        auto [i, j] = pair;
        if (i == j) {
            t.diagonal[i] += q;
        } else {
            t.neighbors[i].push_back({j, q});
            t.neighbors[j].push_back({i, q});
        }
    }
    return t;
}

double flip_delta(const FlipTables &t, const std::vector<int> &bits, int i) {
    double local = t.diagonal[i];
    for (const auto &[j, q] : t.neighbors[i]) {
        if (bits[j]) {
            local += q;
        }
    }
    return (1 - 2 * bits[i]) * local;
}

} // namespace

Assignment anneal(const QuboModel &model, const AnnealSchedule &schedule,
                  int restarts, uint64_t seed) {
    if (model.n < 1) {
        raise(ErrorKind::CONFIG, "model has no variables");
    }
    if (restarts < 1) {
        raise(ErrorKind::CONFIG, "need at least one restart");
    }
    FlipTables tables = build_tables(model);

    Assignment best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed ^ static_cast<uint64_t>(r));

        std::vector<int> bits(model.n);
        for (int i = 0; i < model.n; ++i) {
            bits[i] = rng.uniform() < 0.5 ? 1 : 0;
        }
        double energy = evaluate(model, bits);

        double t0 = schedule.t0;
        if (t0 <= 0.0) {
            // Scale from the move landscape: max |dE| over 100 probe flips.
            double span = 0.0;
            for (int probe = 0; probe < 100; ++probe) {
                int i = static_cast<int>(rng.below(model.n));
                span = std::max(span, std::abs(flip_delta(tables, bits, i)));
            }
            t0 = span > 0.0 ? span : 1.0;
        }

        std::vector<int> run_best_bits = bits;
        double run_best_energy = energy;
        double temperature = t0;
        for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
            for (int step = 0; step < model.n; ++step) {
                int i = static_cast<int>(rng.below(model.n));
                double delta = flip_delta(tables, bits, i);
                if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
                    bits[i] ^= 1;
                    energy += delta;
                    if (energy < run_best_energy) {
                        run_best_energy = energy;
                        run_best_bits = bits;
                    }
                }
            }
            temperature *= schedule.alpha;
        }

        if (!have_best || run_best_energy < best.energy) {
            best.bits = run_best_bits;
            best.energy = run_best_energy;
            have_best = true;
        }
    }
    // Recompute from the bits so accumulated float drift cannot leak out.
    best.energy = evaluate(model, best.bits);
    return best;
}

} // namespace qstack
