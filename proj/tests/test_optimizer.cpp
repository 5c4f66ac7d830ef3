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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qstack/error.hpp"
#include "qstack/qaoa.hpp"
#include "qstack/qubo.hpp"
#include "qstack/tsp.hpp"
#include "support.hpp"

using namespace qstack;

namespace {

std::vector<int> bits_of(uint64_t x, int n) {
    std::vector<int> bits(n);
    for (int i = 0; i < n; ++i) {
        bits[i] = (x >> i) & 1;
    }
    return bits;
}

std::vector<int> spins_of(uint64_t x, int n) {
    std::vector<int> spins(n);
    for (int i = 0; i < n; ++i) {
        spins[i] = (x >> i) & 1 ? 1 : -1;
    }
    return spins;
}

TspInstance unit_square() {
    return TspInstance::from_points({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
}

} // namespace

TEST_CASE("evaluate matches the hand-worked examples") {
    QuboModel single;
    single.n = 1;
    single.add(0, 0, 1.0);
    CHECK(evaluate(single, std::vector<int>{0}) == 0.0);
    CHECK(evaluate(single, std::vector<int>{1}) == 1.0);

    QuboModel pair;
    pair.n = 2;
    pair.add(0, 0, -1.0);
    pair.add(1, 1, -1.0);
    pair.add(0, 1, 2.0);
    CHECK(evaluate(pair, std::vector<int>{1, 1}) == 0.0);
    CHECK(evaluate(pair, std::vector<int>{1, 0}) == -1.0);
}

TEST_CASE("evaluate agrees with an independent dense oracle") {
    Rng rng(100);
    QuboModel model = testing::random_qubo(rng, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        auto bits = bits_of(rng.below(1 << 10), 10);
        CHECK(evaluate(model, bits) ==
              doctest::Approx(testing::dense_qubo_energy(model, bits))
                  .epsilon(1e-12));
    }
}

TEST_CASE("evaluate validates the assignment length") {
    QuboModel model;
    model.n = 3;
    CHECK_THROWS_AS(evaluate(model, std::vector<int>{0, 1}), Error);
}

TEST_CASE("single-variable ising conversion matches by hand") {
    QuboModel model;
    model.n = 1;
    model.add(0, 0, 1.0);
    IsingModel ising = qubo_to_ising(model);
    CHECK(ising.h[0] == 0.5);
    CHECK(ising.offset == 0.5);
    CHECK(ising_energy(ising, std::vector<int>{-1}) == 0.0);
    CHECK(ising_energy(ising, std::vector<int>{1}) == 1.0);
}

TEST_CASE("zero qubo maps to the zero ising model") {
    QuboModel model;
    model.n = 3;
    IsingModel ising = qubo_to_ising(model);
    CHECK(ising.h == std::vector<double>{0, 0, 0});
    CHECK(ising.couplings.empty());
    CHECK(ising.offset == 0.0);
}

TEST_CASE("qubo and ising energies agree on every assignment") {
    Rng rng(101);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + static_cast<int>(rng.below(11)); // up to 12
        QuboModel model = testing::random_qubo(rng, n);
        IsingModel ising = qubo_to_ising(model);

        double best_q = 0, best_i = 0;
        std::vector<uint64_t> argmin_q, argmin_i;
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
            double eq = evaluate(model, bits_of(x, n));
            double ei = ising_energy(ising, spins_of(x, n));
            CHECK(eq == doctest::Approx(ei).epsilon(1e-9));
            if (x == 0 || eq < best_q) best_q = eq;
            if (x == 0 || ei < best_i) best_i = ei;
        }
        for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
            if (std::abs(evaluate(model, bits_of(x, n)) - best_q) < 1e-9) {
                argmin_q.push_back(x);
            }
            if (std::abs(ising_energy(ising, spins_of(x, n)) - best_i) < 1e-9) {
                argmin_i.push_back(x);
            }
        }
        CHECK(argmin_q == argmin_i);
    }
}

TEST_CASE("four cities encode into sixteen variables") {
    TspEncoding enc = encode_tsp(unit_square(), 10.0);
    CHECK(enc.model.n == 16);
}

TEST_CASE("feasible bitstring energy equals tour cost exactly") {
    TspInstance instance = unit_square();
    TspEncoding enc = encode_tsp(instance, 10.0);
    std::vector<std::vector<int>> orders = {
        {0, 1, 2, 3}, {0, 2, 1, 3}, {3, 1, 0, 2}, {1, 3, 2, 0}};
    for (const auto &order : orders) {
        std::vector<int> bits(16, 0);
        for (int t = 0; t < 4; ++t) {
            bits[order[t] * 4 + t] = 1;
        }
        auto decoded = enc.decode(bits);
        REQUIRE(decoded.has_value());
        CHECK(*decoded == order);
        CHECK(evaluate(enc.model, bits) ==
              doctest::Approx(tour_cost(instance, order)).epsilon(1e-12));
    }
}

TEST_CASE("decoder rejects exactly the constraint violations") {
    TspEncoding enc = encode_tsp(unit_square(), 10.0);
    Rng rng(102);
    int feasible_seen = 0;
    for (int trial = 0; trial < 4000; ++trial) {
        uint64_t x = rng.below(uint64_t{1} << 16);
        auto bits = bits_of(x, 16);
        // Independent constraint check: every row and column one-hot.
        bool one_hot = true;
        for (int c = 0; c < 4 && one_hot; ++c) {
            int sum = 0;
            for (int t = 0; t < 4; ++t) sum += bits[c * 4 + t];
            one_hot = sum == 1;
        }
        for (int t = 0; t < 4 && one_hot; ++t) {
            int sum = 0;
            for (int c = 0; c < 4; ++c) sum += bits[c * 4 + t];
            one_hot = sum == 1;
        }
        auto decoded = enc.decode(bits);
        CHECK(decoded.has_value() == one_hot);
        feasible_seen += decoded.has_value();
    }
    CHECK(feasible_seen > 0); // sanity: the sample hit some feasible strings
}

TEST_CASE("infeasible strings sit at least one penalty above the ground state") {
    TspInstance instance = unit_square();
    double penalty = default_tsp_penalty(instance); // > N * max(w)
    TspEncoding enc = encode_tsp(instance, penalty);
    double ground = brute_force_tours(instance).cost;
    Rng rng(103);
    int infeasible_seen = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        auto bits = bits_of(rng.below(uint64_t{1} << 16), 16);
        if (enc.decode(bits).has_value()) {
            continue;
        }
        ++infeasible_seen;
        CHECK(evaluate(enc.model, bits) >= ground + penalty - 1e-9);
    }
    CHECK(infeasible_seen > 100);
}

TEST_CASE("small tsp ground state is the perimeter tour") {
    TspInstance tri = TspInstance::from_points({{0, 0}, {0, 1}, {1, 0}});
    TspEncoding enc = encode_tsp(tri, 10.0);
    Assignment best = brute_force(enc.model);
    auto order = enc.decode(best.bits);
    REQUIRE(order.has_value());
    CHECK(best.energy == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-12));
    CHECK(tour_cost(tri, *order) == doctest::Approx(best.energy).epsilon(1e-12));
}

TEST_CASE("encode_tsp validates the penalty") {
    CHECK_THROWS_AS(encode_tsp(unit_square(), 0.0), Error);
    CHECK_THROWS_AS(encode_tsp(unit_square(), -1.0), Error);
}

TEST_CASE("brute force breaks ties toward the lowest bitstring") {
    QuboModel zero;
    zero.n = 3;
    Assignment best = brute_force(zero);
    CHECK(best.bits == std::vector<int>{0, 0, 0});
    CHECK(best.energy == 0.0);

    QuboModel negative;
    negative.n = 1;
    negative.add(0, 0, -1.0);
    best = brute_force(negative);
    CHECK(best.bits == std::vector<int>{1});
    CHECK(best.energy == -1.0);
}

TEST_CASE("brute force guards its domain") {
    QuboModel big;
    big.n = 25;
    CHECK_THROWS_AS(brute_force(big), Error);
}

TEST_CASE("annealer finds the trivial single-variable optimum") {
    QuboModel model;
    model.n = 1;
    model.add(0, 0, -1.0);
    AnnealSchedule schedule;
    schedule.sweeps = 50;
    Assignment best = anneal(model, schedule, 1, 9);
    CHECK(best.bits == std::vector<int>{1});
    CHECK(best.energy == -1.0);
}

TEST_CASE("annealer never beats the exhaustive optimum") {
    Rng rng(104);
    AnnealSchedule schedule;
    schedule.sweeps = 800;
    for (int trial = 0; trial < 10; ++trial) {
        QuboModel model = testing::random_qubo(rng, 10);
        Assignment exact = brute_force(model);
        Assignment annealed = anneal(model, schedule, 5, trial);
        CHECK(annealed.energy >= exact.energy - 1e-9);
    }
}

TEST_CASE("best-of prefix is monotone in the restart count") {
    Rng rng(105);
    QuboModel model = testing::random_qubo(rng, 8);
    AnnealSchedule schedule;
    schedule.sweeps = 200;
    double previous = 1e300;
    for (int restarts = 1; restarts <= 6; ++restarts) {
        double energy = anneal(model, schedule, restarts, 77).energy;
        CHECK(energy <= previous + 1e-9);
        previous = energy;
    }
}

TEST_CASE("annealer solves the unit square within a restart budget") {
    TspEncoding enc = encode_tsp(unit_square(), 10.0);
    AnnealSchedule schedule;
    Assignment best = anneal(enc.model, schedule, 25, 1);
    auto order = enc.decode(best.bits);
    REQUIRE(order.has_value());
    CHECK(tour_cost(unit_square(), *order) == doctest::Approx(4.0));
}

TEST_CASE("exhaustive tour search finds the unit-square perimeter") {
    TourResult best = brute_force_tours(unit_square());
    CHECK(best.cost == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("qaoa at zero parameters samples uniformly") {
    Rng rng(106);
    QuboModel model = testing::random_qubo(rng, 3, 0.8);
    IsingModel ising = qubo_to_ising(model);
    QaoaParams zero{1, {0.0}, {0.0}};

    Circuit circuit = qaoa_build(ising, zero);
    QuantumState state = run_statevector(testing::strip_measurements(circuit));
    for (uint64_t i = 0; i < state.dimension(); ++i) {
        CHECK(std::norm(state.amplitude(i)) == doctest::Approx(0.125).epsilon(1e-12));
    }

    RunSummary summary = run(circuit, NoiseModel::perfect(), 8192, 17);
    double chi2 = 0.0;
    const double expected = 8192.0 / 8.0;
    for (const auto &[key, count] : summary.histogram) {
        double d = static_cast<double>(count) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 30.0); // df=7, far beyond the 99.9% quantile only on a bug
}

TEST_CASE("qaoa single-spin expectation matches the closed form exactly") {
    IsingModel ising;
    ising.n = 1;
    ising.h = {1.0};
    const double gamma = 0.3, beta = 0.7;
    Circuit circuit = qaoa_build(ising, {1, {gamma}, {beta}});
    QuantumState state = run_statevector(testing::strip_measurements(circuit));
    double z = std::norm(state.amplitude(0)) - std::norm(state.amplitude(1));
    CHECK(z == doctest::Approx(std::sin(2 * beta) * std::sin(2 * gamma))
                   .epsilon(1e-12));
}

TEST_CASE("qaoa gate count follows the structural formula") {
    Rng rng(107);
    QuboModel model = testing::random_qubo(rng, 5, 0.5);
    IsingModel ising = qubo_to_ising(model);
    int n_h = 0;
    for (double h : ising.h) {
        n_h += h != 0.0;
    }
    int n_j = 0;
    for (const auto &[pair, j] : ising.couplings) {
        (void)pair;
        n_j += j != 0.0;
    }
    for (int layers : {1, 2, 3}) {
        QaoaParams params;
        params.layers = layers;
        params.gammas.assign(layers, 0.4);
        params.betas.assign(layers, 0.2);
        Circuit circuit = qaoa_build(ising, params);
        int expected = ising.n + layers * (n_h + 3 * n_j + ising.n) + ising.n;
        CHECK(testing::bundle_gate_count(circuit) == expected);
    }
}

TEST_CASE("qaoa finds a ferromagnetic ground state") {
    IsingModel ising;
    ising.n = 2;
    ising.h = {0.0, 0.0};
    ising.couplings[{0, 1}] = -1.0;
    QaoaOptResult result = qaoa_optimize(ising, 1, 256, 5, 70);
    bool aligned = result.best_assignment.bits == std::vector<int>{0, 0} ||
                   result.best_assignment.bits == std::vector<int>{1, 1};
    CHECK(aligned);
    CHECK(result.best_assignment.energy == doctest::Approx(-1.0));
}

TEST_CASE("qaoa degenerate budget still returns a valid result") {
    IsingModel ising;
    ising.n = 2;
    ising.h = {0.5, -0.5};
    ising.couplings[{0, 1}] = 0.3;
    QaoaOptResult result = qaoa_optimize(ising, 1, 64, 3, 1);
    CHECK(result.evaluations == 1);
    CHECK(result.best_assignment.bits.size() == 2);
    CHECK(result.params.gammas == std::vector<double>{0.0});
    CHECK(result.params.betas == std::vector<double>{0.0});
}

TEST_CASE("qaoa respects the qubit cap") {
    IsingModel ising;
    ising.n = 26;
    ising.h.assign(26, 1.0);
    QaoaParams params{1, {0.1}, {0.1}};
    CHECK_THROWS_AS(qaoa_build(ising, params), Error);
}
