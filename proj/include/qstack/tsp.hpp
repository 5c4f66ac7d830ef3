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
#include <span>
#include <vector>

#include "qstack/qubo.hpp"

namespace qstack {

/// Symmetric nonnegative weights over a complete graph; zero diagonal.
struct TspInstance {
    int num_cities = 0;
    std::vector<std::vector<double>> weights;

    static TspInstance from_weights(std::vector<std::vector<double>> weights);
    static TspInstance from_points(const std::vector<std::pair<double, double>> &points);

    double max_weight() const;
};

/// Cost of the cyclic tour visiting `order` and returning to its start.
double tour_cost(const TspInstance &instance, std::span<const int> order);

/// One-hot encoding over n = N^2 variables x_{c,t} at index c*N + t:
///   energy = A * sum_c (1 - sum_t x_{c,t})^2
///          + A * sum_t (1 - sum_c x_{c,t})^2
///          + sum_{c != c'} sum_t w_{c,c'} x_{c,t} x_{c',(t+1) mod N}
/// The expansion constant 2*N*A sits in the model offset, so a feasible
/// bitstring's energy equals its tour cost exactly.
struct TspEncoding {
    QuboModel model;
    int num_cities = 0;
    double penalty = 0.0;

    /// City visited at each time slot, or nullopt when any one-hot constraint
    /// is violated.
    std::optional<std::vector<int>> decode(std::span<const int> bits) const;
};

/// Throws BAD_PENALTY for penalty_a <= 0; requires at least 3 cities.
TspEncoding encode_tsp(const TspInstance &instance, double penalty_a);

/// Default penalty weight 2 * N * max(w), comfortably above the dominance
/// bound.
double default_tsp_penalty(const TspInstance &instance);

struct TourResult {
    std::vector<int> order;
    double cost = 0.0;
};

/// Exact tour search by enumerating all (N-1)! cyclic orders with city 0
/// fixed first; ties break toward the lexicographically smallest order.
/// Guarded to 12 cities. Independent of the QUBO path by construction.
TourResult brute_force_tours(const TspInstance &instance);

} // namespace qstack
