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

#include "qstack/tsp.hpp"

#include <algorithm>
#include <cmath>

#include "qstack/error.hpp"

namespace qstack {

TspInstance TspInstance::from_weights(std::vector<std::vector<double>> weights) {
    TspInstance inst;
    inst.num_cities = static_cast<int>(weights.size());
    for (const auto &row : weights) {
        if (static_cast<int>(row.size()) != inst.num_cities) {
            raise(ErrorKind::CONFIG, "weight matrix is not square");
        }
    }
    for (int i = 0; i < inst.num_cities; ++i) {
        if (weights[i][i] != 0.0) {
            raise(ErrorKind::CONFIG, "weight matrix diagonal must be zero");
        }
        for (int j = 0; j < inst.num_cities; ++j) {
            if (weights[i][j] < 0.0) {
                raise(ErrorKind::CONFIG, "weights must be nonnegative");
            }
            if (weights[i][j] != weights[j][i]) {
                raise(ErrorKind::CONFIG, "weight matrix must be symmetric");
            }
        }
    }
    inst.weights = std::move(weights);
    return inst;
}

TspInstance TspInstance::from_points(
    const std::vector<std::pair<double, double>> &points) {
    int n = static_cast<int>(points.size());
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = std::hypot(points[i].first - points[j].first,
                                  points[i].second - points[j].second);
            w[i][j] = d;
            w[j][i] = d;
        }
    }
    return from_weights(std::move(w));
}

double TspInstance::max_weight() const {
    double m = 0.0;
    for (const auto &row : weights) {
        for (double w : row) {
            m = std::max(m, w);
        }
    }
    return m;
}

double tour_cost(const TspInstance &instance, std::span<const int> order) {
    if (static_cast<int>(order.size()) != instance.num_cities) {
        raise(ErrorKind::LENGTH_MISMATCH, "tour length mismatch");
    }
    double cost = 0.0;
    for (size_t t = 0; t < order.size(); ++t) {
        cost += instance.weights[order[t]][order[(t + 1) % order.size()]];
    }
    return cost;
}

std::optional<std::vector<int>> TspEncoding::decode(std::span<const int> bits) const {
    const int N = num_cities;
    if (static_cast<int>(bits.size()) != N * N) {
        raise(ErrorKind::LENGTH_MISMATCH, "bitstring length mismatch");
    }
    std::vector<int> order(N, -1);
    for (int t = 0; t < N; ++t) {
        for (int c = 0; c < N; ++c) {
            if (bits[c * N + t]) {
                if (order[t] >= 0) {
                    return std::nullopt; // two cities in one slot
                }
                order[t] = c;
            }
        }
        if (order[t] < 0) {
            return std::nullopt; // empty slot
        }
    }
    std::vector<int> seen(N, 0);
    for (int c : order) {
        if (seen[c]++) {
            return std::nullopt; // city visited twice
        }
    }
    return order;
}

TspEncoding encode_tsp(const TspInstance &instance, double penalty_a) {
    if (penalty_a <= 0.0) {
        raise(ErrorKind::BAD_PENALTY, "penalty weight must be positive");
    }
    const int N = instance.num_cities;
    if (N < 3) {
        raise(ErrorKind::CONFIG, "TSP encoding needs at least 3 cities");
    }

    TspEncoding enc;
    enc.num_cities = N;
    enc.penalty = penalty_a;
    enc.model.n = N * N;
    enc.model.offset = 2.0 * N * penalty_a;
    auto idx = [N](int c, int t) { return c * N + t; };

    // A * (1 - sum_t x_{c,t})^2 = A * (1 - sum_t x + 2 * sum_{t<t'} x x')
    for (int c = 0; c < N; ++c) {
        for (int t = 0; t < N; ++t) {
            enc.model.add(idx(c, t), idx(c, t), -penalty_a);
            for (int t2 = t + 1; t2 < N; ++t2) {
                enc.model.add(idx(c, t), idx(c, t2), 2.0 * penalty_a);
            }
        }
    }
    for (int t = 0; t < N; ++t) {
        for (int c = 0; c < N; ++c) {
            enc.model.add(idx(c, t), idx(c, t), -penalty_a);
            for (int c2 = c + 1; c2 < N; ++c2) {
                enc.model.add(idx(c, t), idx(c2, t), 2.0 * penalty_a);
            }
        }
    }
    // Edge weight between consecutive slots (cyclic).
    for (int c = 0; c < N; ++c) {
        for (int c2 = 0; c2 < N; ++c2) {
            if (c == c2) {
                continue;
            }
            double w = instance.weights[c][c2];
            if (w == 0.0) {
                continue;
            }
            for (int t = 0; t < N; ++t) {
                enc.model.add(idx(c, t), idx(c2, (t + 1) % N), w);
            }
        }
    }
    return enc;
}

double default_tsp_penalty(const TspInstance &instance) {
    double m = instance.max_weight();
    return 2.0 * instance.num_cities * (m > 0.0 ? m : 1.0);
}

TourResult brute_force_tours(const TspInstance &instance) {
    const int N = instance.num_cities;
    if (N < 3) {
        raise(ErrorKind::CONFIG, "tour search needs at least 3 cities");
    }
    if (N > 12) {
        raise(ErrorKind::TOO_LARGE, "exhaustive tour search is guarded to 12 cities");
    }
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) {
        order[i] = i;
    }
    TourResult best;
    best.order = order;
    best.cost = tour_cost(instance, order);
    // City 0 stays fixed; permutations of the rest arrive in lexicographic
    // order, so the first minimum seen is the lexicographically smallest.
    while (std::next_permutation(order.begin() + 1, order.end())) {
        double cost = tour_cost(instance, order);
        if (cost < best.cost) {
            best.cost = cost;
            best.order = order;
        }
    }
    return best;
}

} // namespace qstack
