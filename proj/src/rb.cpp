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

#include "qstack/rb.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

#include "qstack/error.hpp"
#include "qstack/simulator.hpp"

namespace qstack {

namespace {

using Mat = std::array<std::complex<double>, 4>;

Mat mat_mul(const Mat &a, const Mat &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat mat_dagger(const Mat &a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// Rounds to the 1e-6 lattice and flushes -0 so the key is sign-of-zero
// stable.
double snap(double x) {
    double s = std::round(x * 1e6) / 1e6;
    return s == 0.0 ? 0.0 : s;
}

// Phase-canonical key: divide by the phase of the first non-tiny entry, then
// round. Clifford entries land on a coarse lattice, so 1e-6 rounding is safe.
std::string canonical_key(const Mat &m) {
    std::complex<double> phase{1.0, 0.0};
    for (const auto &entry : m) {
        if (std::abs(entry) > 1e-9) {
            phase = entry / std::abs(entry);
            break;
        }
    }
    char buf[160];
    double v[8];
    for (int i = 0; i < 4; ++i) {
        std::complex<double> z = m[i] / phase;
        v[2 * i] = snap(z.real());
        v[2 * i + 1] = snap(z.imag());
    }
    std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f %.6f %.6f %.6f %.6f %.6f",
                  v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]);
    return buf;
}

} // namespace

CliffordTable::CliffordTable() {
    const Mat identity = {1, 0, 0, 1};
    const double is = 1.0 / std::sqrt(2.0);
    const Mat hadamard = {is, is, is, -is};
    const Mat phase_s = {1, 0, 0, std::complex<double>(0, 1)};

    std::map<std::string, int> seen;
    std::deque<int> queue;

    matrices_.push_back(identity);
    words_.push_back({});
    seen[canonical_key(identity)] = 0;
    queue.push_back(0);

    while (!queue.empty()) {
        int current = queue.front();
        queue.pop_front();
        for (Opcode op : {Opcode::H, Opcode::S}) {
            const Mat &g = op == Opcode::H ? hadamard : phase_s;
            Mat next = mat_mul(g, matrices_[current]);
            std::string key = canonical_key(next);
            if (seen.count(key)) {
                continue;
            }
            int id = static_cast<int>(matrices_.size());
            seen[key] = id;
            matrices_.push_back(next);
            std::vector<Opcode> word = words_[current];
            word.push_back(op);
            words_.push_back(std::move(word));
            queue.push_back(id);
        }
    }
    if (matrices_.size() != 24) {
        throw std::logic_error("Clifford group enumeration produced " +
                               std::to_string(matrices_.size()) + " elements");
    }

    mul_table_.assign(24, std::vector<int>(24, -1));
    for (int a = 0; a < 24; ++a) {
        for (int b = 0; b < 24; ++b) {
            std::string key = canonical_key(mat_mul(matrices_[a], matrices_[b]));
            auto it = seen.find(key);
            if (it == seen.end()) {
                throw std::logic_error("Clifford product escaped the group");
            }
            mul_table_[a][b] = it->second;
        }
    }
    inv_table_.assign(24, -1);
    for (int a = 0; a < 24; ++a) {
        auto it = seen.find(canonical_key(mat_dagger(matrices_[a])));
        if (it == seen.end()) {
            throw std::logic_error("Clifford inverse escaped the group");
        }
        inv_table_[a] = it->second;
    }
}

const CliffordTable &CliffordTable::instance() {
    static const CliffordTable table;
    return table;
}

double CliffordTable::mean_word_length() const {
    double total = 0.0;
    for (const auto &word : words_) {
        total += static_cast<double>(word.size());
    }
    return total / static_cast<double>(words_.size());
}

std::vector<int> random_clifford_sequence(Rng &rng, int length) {
    std::vector<int> indices(length);
    for (int &index : indices) {
        index = static_cast<int>(rng.below(24));
    }
    return indices;
}

int net_clifford(const CliffordTable &table, std::span<const int> indices) {
    int net = 0;
    for (int index : indices) {
        net = table.multiply(index, net);
    }
    return net;
}

Circuit rb_circuit(const CliffordTable &table, std::span<const int> indices,
                   bool with_measure) {
    Circuit circuit;
    circuit.num_qubits = 1;
    auto emit = [&](int element) {
        for (Opcode op : table.word(element)) {
            append(circuit, gate1(op, 0));
        }
    };
    for (int index : indices) {
        emit(index);
    }
    emit(table.inverse(net_clifford(table, indices)));
    if (with_measure) {
        append(circuit, gate1(Opcode::MEASURE_Z, 0));
    }
    return circuit;
}

SurvivalFit fit_survival(std::span<const int> lengths,
                         std::span<const double> means) {
    const int n = static_cast<int>(lengths.size());
    if (n < 2 || means.size() != lengths.size()) {
        raise(ErrorKind::FIT_FAILED, "need at least two survival points");
    }

    double mean_of_means = 0.0;
    for (double y : means) {
        mean_of_means += y;
    }
    mean_of_means /= n;
    double spread = 0.0;
    for (double y : means) {
        spread = std::max(spread, std::abs(y - mean_of_means));
    }
    if (spread < 1e-9) {
        // Flat curve: decay is unidentifiable, report the no-error fit with
        // the depolarized asymptote as baseline.
        return {mean_of_means - 0.5, 0.5, 1.0};
    }

    auto sse_for = [&](double f, SurvivalFit *fit) {
        double sxx = 0, sx = 0, sxy = 0, sy = 0;
        for (int i = 0; i < n; ++i) {
            double x = std::pow(f, lengths[i]);
            sxx += x * x;
            sx += x;
            sxy += x * means[i];
            sy += means[i];
        }
        double den = n * sxx - sx * sx;
        double a, b;
        if (std::abs(den) < 1e-30) {
            a = 0.0;
            b = sy / n;
        } else {
            a = (n * sxy - sx * sy) / den;
            b = (sy - a * sx) / n;
        }
        double sse = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = a * std::pow(f, lengths[i]) + b - means[i];
            sse += r * r;
        }
        if (fit) {
            *fit = {a, b, f};
        }
        return sse;
    };

    double best_f = 0.5;
    double best_sse = -1.0;
    for (int s = 0; s <= 1999; ++s) {
        double f = s / 2000.0;
        double sse = sse_for(f, nullptr);
        if (best_sse < 0 || sse < best_sse) {
            best_sse = sse;
            best_f = f;
        }
    }
    double lo = std::max(0.0, best_f - 0.0005);
    double hi = std::min(0.999999, best_f + 0.0005);
    for (int iter = 0; iter < 80; ++iter) {
        double m1 = lo + (hi - lo) / 3;
        double m2 = hi - (hi - lo) / 3;
        if (sse_for(m1, nullptr) <= sse_for(m2, nullptr)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    SurvivalFit fit;
    sse_for((lo + hi) / 2, &fit);
    return fit;
}

RbResult run_rb(const RbConfig &config, uint64_t seed) {
    if (config.sequence_lengths.empty()) {
        raise(ErrorKind::CONFIG, "no sequence lengths given");
    }
    for (size_t i = 0; i < config.sequence_lengths.size(); ++i) {
        if (config.sequence_lengths[i] < 1 ||
            (i > 0 && config.sequence_lengths[i] <= config.sequence_lengths[i - 1])) {
            raise(ErrorKind::CONFIG, "sequence lengths must be strictly increasing");
        }
    }
    if (config.sequences_per_length < 1 || config.shots_per_sequence < 1) {
        raise(ErrorKind::CONFIG, "need at least one sequence and one shot");
    }
    const NoiseModel noise = NoiseModel::depolarizing(config.gate_error_p);
    const CliffordTable &table = CliffordTable::instance();

    RbResult result;
    for (size_t li = 0; li < config.sequence_lengths.size(); ++li) {
        const int length = config.sequence_lengths[li];
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int s = 0; s < config.sequences_per_length; ++s) {
            uint64_t seq_seed = mix_seed(mix_seed(seed, li), static_cast<uint64_t>(s));
            Rng gen(seq_seed);
            std::vector<int> indices = random_clifford_sequence(gen, length);
            Circuit circuit = rb_circuit(table, indices, true);
            RunSummary summary =
                run(circuit, noise, config.shots_per_sequence, mix_seed(seq_seed, 1));
            auto it = summary.histogram.find("0");
            double survival =
                it == summary.histogram.end()
                    ? 0.0
                    : static_cast<double>(it->second) / config.shots_per_sequence;
            sum += survival;
            sum_sq += survival * survival;
        }
        const int count = config.sequences_per_length;
        double mean = sum / count;
        double variance =
            count > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1))
                      : 0.0;
        result.stats.push_back({length, mean, std::sqrt(variance)});
    }

    // Reject clearly rising curves before fitting.
    for (size_t i = 0; i + 1 < result.stats.size(); ++i) {
        const auto &a = result.stats[i];
        const auto &b = result.stats[i + 1];
        double se_a = a.stddev / std::sqrt(static_cast<double>(config.sequences_per_length));
        double se_b = b.stddev / std::sqrt(static_cast<double>(config.sequences_per_length));
        double tolerance = 0.05 + 2.0 * std::sqrt(se_a * se_a + se_b * se_b);
        if (b.mean_survival > a.mean_survival + tolerance) {
            raise(ErrorKind::FIT_FAILED,
                  "survival rises between lengths " + std::to_string(a.length) +
                      " and " + std::to_string(b.length) +
                      "; statistics insufficient for a decay fit");
        }
    }

    std::vector<int> lengths;
    std::vector<double> means;
    for (const auto &stat : result.stats) {
        lengths.push_back(stat.length);
        means.push_back(stat.mean_survival);
    }
    result.fit = fit_survival(lengths, means);
    result.error_per_clifford = (1.0 - result.fit.decay) / 2.0;
    return result;
}

} // namespace qstack
