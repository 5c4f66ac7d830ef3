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

// qstack CLI: compile, sim, tsp, align, rb. JSON results go to stdout,
// human diagnostics to stderr. Exit codes: 0 success, 1 domain error
// (solver/oracle/simulation), 2 usage or input parse error. Per-input
// validation happens before any computation or output file is written.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qstack/compiler.hpp"
#include "qstack/error.hpp"
#include "qstack/grover.hpp"
#include "qstack/ir.hpp"
#include "qstack/json_io.hpp"
#include "qstack/qaoa.hpp"
#include "qstack/qubo.hpp"
#include "qstack/rb.hpp"
#include "qstack/simulator.hpp"
#include "qstack/topology.hpp"
#include "qstack/tsp.hpp"

namespace {

using nlohmann::json;
using namespace qstack;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int fail_usage(const std::string &message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

int fail_domain(const std::string &message) {
    std::cerr << "error: " << message << "\n";
    return kExitDomain;
}

void emit(const json &j) { std::cout << j.dump(2) << "\n"; }

/// Simulator cap, overridable through QSTACK_MAX_QUBITS.
std::optional<int> configured_max_qubits(std::string *problem) {
    const char *env = std::getenv("QSTACK_MAX_QUBITS");
    if (env == nullptr) {
        return 25;
    }
    char *end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || value < 1 || value > 30) {
        *problem = "QSTACK_MAX_QUBITS must be an integer in [1, 30]";
        return std::nullopt;
    }
    return static_cast<int>(value);
}

std::optional<Circuit> load_circuit(const std::string &path, int *exit_code) {
    std::string source;
    try {
        source = read_file(path);
    } catch (const Error &e) {
        *exit_code = fail_usage(e.what());
        return std::nullopt;
    }
    ParseResult parsed = parse(source);
    if (!parsed.ok()) {
        const SourceError &err = *parsed.error;
        *exit_code = fail_usage(path + ":" + std::to_string(err.line) + ":" +
                                std::to_string(err.column) + ": " +
                                std::string(source_error_kind_name(err.kind)) +
                                ": " + err.message);
        return std::nullopt;
    }
    return std::move(*parsed.circuit);
}

std::optional<NoiseModel> parse_noise(const std::string &spec, int *exit_code) {
    try {
        if (spec == "perfect") {
            return NoiseModel::perfect();
        }
        const std::string prefix = "depolarizing:";
        if (spec.rfind(prefix, 0) == 0) {
            std::string rest = spec.substr(prefix.size());
            double flip = 0.0;
            size_t colon = rest.find(':');
            if (colon != std::string::npos) {
                std::string flip_part = rest.substr(colon + 1);
                rest = rest.substr(0, colon);
                if (flip_part.rfind("flip=", 0) != 0) {
                    raise(ErrorKind::CONFIG, "expected flip=<q> after ':'");
                }
                size_t used = 0;
                flip = std::stod(flip_part.substr(5), &used);
                if (used != flip_part.size() - 5) {
                    raise(ErrorKind::CONFIG, "malformed flip probability");
                }
            }
            size_t used = 0;
            double p = std::stod(rest, &used);
            if (used != rest.size()) {
                raise(ErrorKind::CONFIG, "malformed error probability");
            }
            return NoiseModel::depolarizing(p, flip);
        }
        raise(ErrorKind::CONFIG,
              "noise must be 'perfect' or 'depolarizing:<p>[:flip=<q>]'");
    } catch (const Error &e) {
        *exit_code = fail_usage(e.what());
    } catch (const std::exception &) {
        *exit_code = fail_usage("malformed noise spec '" + spec + "'");
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// compile

struct CompileArgs {
    std::string input;
    std::string topology;
    std::string out;
    std::string report;
    std::string placement = "identity";
};

int cmd_compile(const CompileArgs &args) {
    int exit_code = kExitOk;
    auto circuit = load_circuit(args.input, &exit_code);
    if (!circuit) {
        return exit_code;
    }
    Topology topo;
    try {
        topo = load_topology(args.topology);
    } catch (const Error &e) {
        return fail_usage(e.what());
    }
    PlacementStrategy strategy;
    if (args.placement == "identity") {
        strategy = PlacementStrategy::IDENTITY;
    } else if (args.placement == "interaction") {
        strategy = PlacementStrategy::INTERACTION_DEGREE;
    } else {
        return fail_usage("--placement must be 'identity' or 'interaction'");
    }
    if (circuit->num_qubits > topo.num_positions) {
        return fail_usage("circuit uses " + std::to_string(circuit->num_qubits) +
                          " qubits but the topology has only " +
                          std::to_string(topo.num_positions) + " positions");
    }

    try {
        CompiledProgram program = compile(*circuit, topo, {strategy});
        write_file(args.out, print_scheduled(program.scheduled));
        json report = compile_report_json(program);
        if (!args.report.empty()) {
            write_file(args.report, report.dump(2) + "\n");
        }
        emit(report);
        return kExitOk;
    } catch (const Error &e) {
        return fail_domain(e.what());
    }
}

// --------------------------------------------------------------------------
// sim

struct SimArgs {
    std::string input;
    std::string noise = "perfect";
    uint64_t shots = 1024;
    uint64_t seed = 1;
};

int cmd_sim(const SimArgs &args) {
    int exit_code = kExitOk;
    auto circuit = load_circuit(args.input, &exit_code);
    if (!circuit) {
        return exit_code;
    }
    auto noise = parse_noise(args.noise, &exit_code);
    if (!noise) {
        return exit_code;
    }
    std::string problem;
    auto cap = configured_max_qubits(&problem);
    if (!cap) {
        return fail_usage(problem);
    }

    try {
        RunOptions options;
        options.max_qubits = *cap;
        RunSummary summary = run(*circuit, *noise, args.shots, args.seed, options);
        emit(run_summary_to_json(summary));
        return kExitOk;
    } catch (const Error &e) {
        return fail_domain(e.what());
    }
}

// --------------------------------------------------------------------------
// tsp

struct TspArgs {
    std::string cities;
    std::string weights;
    std::string method = "brute";
    double penalty = 0.0; // 0 = default 2 * N * max(w)
    int restarts = 25;
    int sweeps = 5000;
    int layers = 1;
    uint64_t shots = 256;
    int budget = 80;
    uint64_t seed = 1;
};

json tour_json(const TspInstance &instance, const std::vector<int> &order) {
    return json{{"order", order}, {"cost", tour_cost(instance, order)}};
}

int cmd_tsp(const TspArgs &args) {
    if (args.cities.empty() == args.weights.empty()) {
        return fail_usage("give exactly one of --cities or --weights");
    }
    TspInstance instance;
    try {
        if (!args.cities.empty()) {
            instance = tsp_from_cities_csv(read_file(args.cities));
        } else {
            json j = json::parse(read_file(args.weights), nullptr, false);
            if (j.is_discarded()) {
                raise(ErrorKind::CONFIG, "weight file is not valid JSON");
            }
            instance = tsp_from_weights_json(j);
        }
    } catch (const Error &e) {
        return fail_usage(e.what());
    } catch (const std::exception &e) {
        return fail_usage(e.what());
    }

    const int n = instance.num_cities;
    json result{{"method", args.method}, {"cities", n}};

    if (args.method == "brute") {
        if (n > 10) {
            return fail_usage("--method brute is capped at 10 cities, got " +
                              std::to_string(n));
        }
        try {
            TourResult best = brute_force_tours(instance);
            result["feasible"] = true;
            result["tour"] = tour_json(instance, best.order);
            result["energy"] = best.cost;
            emit(result);
            return kExitOk;
        } catch (const Error &e) {
            return fail_domain(e.what());
        }
    }

    if (args.method != "anneal" && args.method != "qaoa") {
        return fail_usage("--method must be brute, anneal or qaoa");
    }
    if (args.penalty < 0.0) {
        return fail_usage("--penalty must be positive");
    }
    double penalty = args.penalty > 0.0 ? args.penalty : default_tsp_penalty(instance);

    std::string problem;
    auto cap = configured_max_qubits(&problem);
    if (!cap) {
        return fail_usage(problem);
    }
    if (args.method == "qaoa" && n * n > *cap) {
        return fail_usage("QAOA encoding needs " + std::to_string(n * n) +
                          " qubits; cap is " + std::to_string(*cap));
    }

    try {
        TspEncoding encoding = encode_tsp(instance, penalty);
        Assignment best;
        json telemetry{{"penalty", penalty}, {"variables", encoding.model.n}};
        if (args.method == "anneal") {
            AnnealSchedule schedule;
            schedule.sweeps = args.sweeps;
            best = anneal(encoding.model, schedule, args.restarts, args.seed);
            telemetry["restarts"] = args.restarts;
            telemetry["sweeps"] = args.sweeps;
        } else {
            IsingModel ising = qubo_to_ising(encoding.model);
            QaoaOptResult opt = qaoa_optimize(ising, args.layers, args.shots,
                                              args.seed, args.budget, *cap);
            best = opt.best_assignment;
            telemetry["layers"] = args.layers;
            telemetry["evaluations"] = opt.evaluations;
            telemetry["shots_per_eval"] = args.shots;
            telemetry["optimized_mean_energy"] = opt.mean_energy;
        }
        result["energy"] = best.energy;
        result["telemetry"] = telemetry;
        auto order = encoding.decode(best.bits);
        if (order) {
            result["feasible"] = true;
            result["tour"] = tour_json(instance, *order);
            emit(result);
            return kExitOk;
        }
        result["feasible"] = false;
        emit(result);
        return fail_domain("best assignment violates the tour constraints; "
                           "increase --restarts or the penalty");
    } catch (const Error &e) {
        return fail_domain(e.what());
    }
}

// --------------------------------------------------------------------------
// align

struct AlignArgs {
    std::string ref;
    std::string read;
    int mismatch = 0;
    std::string noise = "perfect";
    uint64_t shots = 4096;
    uint64_t seed = 1;
    bool compiled = false;
    bool assume_unknown = false;
};

int cmd_align(const AlignArgs &args) {
    int exit_code = kExitOk;
    auto noise = parse_noise(args.noise, &exit_code);
    if (!noise) {
        return exit_code;
    }
    std::string problem;
    auto cap = configured_max_qubits(&problem);
    if (!cap) {
        return fail_usage(problem);
    }
    if (args.mismatch < 0) {
        return fail_usage("--mismatch must be nonnegative");
    }
    ReferenceIndex index;
    AlignmentQuery query{args.read, args.mismatch};
    try {
        std::string reference;
        for (char c : read_file(args.ref)) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                reference += c;
            }
        }
        if (args.read.empty()) {
            raise(ErrorKind::CONFIG, "--read must not be empty");
        }
        for (char c : args.read) {
            if (c != 'A' && c != 'C' && c != 'G' && c != 'T') {
                raise(ErrorKind::CONFIG, "--read must contain only A/C/G/T");
            }
        }
        index = make_reference_index(reference, static_cast<int>(args.read.size()));
    } catch (const Error &e) {
        return fail_usage(e.what());
    }

    try {
        AlignOptions options;
        options.use_known_match_count = !args.assume_unknown;
        options.compiled = args.compiled;
        options.run.max_qubits = *cap;
        AlignResult result =
            grover_align(index, query, *noise, args.shots, args.seed, options);
        emit(align_result_to_json(result, query));
        return kExitOk;
    } catch (const Error &e) {
        return fail_domain(e.what());
    }
}

// --------------------------------------------------------------------------
// rb

struct RbArgs {
    double p = 0.0;
    std::string lengths = "2,4,8,16,32,64";
    int sequences = 30;
    int shots = 500;
    uint64_t seed = 1;
};

int cmd_rb(const RbArgs &args) {
    RbConfig config;
    config.gate_error_p = args.p;
    config.sequences_per_length = args.sequences;
    config.shots_per_sequence = args.shots;
    if (args.p < 0.0 || args.p > 1.0) {
        return fail_usage("--p must lie in [0, 1]");
    }
    if (args.sequences < 1 || args.shots < 1) {
        return fail_usage("--sequences and --shots must be positive");
    }
    size_t pos = 0;
    while (pos <= args.lengths.size()) {
        size_t comma = args.lengths.find(',', pos);
        std::string token = args.lengths.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char *end = nullptr;
        long value = std::strtol(token.c_str(), &end, 10);
        if (token.empty() || *end != '\0' || value < 1) {
            return fail_usage("--lengths must be comma-separated positive integers");
        }
        if (!config.sequence_lengths.empty() &&
            value <= config.sequence_lengths.back()) {
            return fail_usage("--lengths must be strictly increasing");
        }
        config.sequence_lengths.push_back(static_cast<int>(value));
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }

    try {
        RbResult result = run_rb(config, args.seed);
        emit(rb_result_to_json(result, config, args.seed));
        return kExitOk;
    } catch (const Error &e) {
        return fail_domain(e.what());
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qstack: quantum assembly toolchain, simulator and application kernels"};
    app.require_subcommand(1);

    CompileArgs compile_args;
    auto *compile_cmd =
        app.add_subcommand("compile", "Map and schedule a circuit for a topology");
    compile_cmd->add_option("input", compile_args.input, "input .qasm file")->required();
    compile_cmd->add_option("--topology", compile_args.topology, "topology JSON file")
        ->required();
    compile_cmd->add_option("--out", compile_args.out, "mapped .qasm output")->required();
    compile_cmd->add_option("--report", compile_args.report, "report JSON output");
    compile_cmd->add_option("--placement", compile_args.placement,
                            "identity|interaction");

    SimArgs sim_args;
    auto *sim_cmd = app.add_subcommand("sim", "Run a circuit on the state-vector simulator");
    sim_cmd->add_option("input", sim_args.input, "input .qasm file")->required();
    sim_cmd->add_option("--noise", sim_args.noise, "perfect|depolarizing:<p>[:flip=<q>]");
    sim_cmd->add_option("--shots", sim_args.shots, "number of shots");
    sim_cmd->add_option("--seed", sim_args.seed, "base seed");

    TspArgs tsp_args;
    auto *tsp_cmd = app.add_subcommand("tsp", "Solve a travelling-salesman instance");
    tsp_cmd->add_option("--cities", tsp_args.cities, "CSV of city_id,x,y");
    tsp_cmd->add_option("--weights", tsp_args.weights, "JSON weight matrix");
    tsp_cmd->add_option("--method", tsp_args.method, "brute|anneal|qaoa");
    tsp_cmd->add_option("--penalty", tsp_args.penalty, "one-hot penalty weight");
    tsp_cmd->add_option("--restarts", tsp_args.restarts, "annealer restarts");
    tsp_cmd->add_option("--sweeps", tsp_args.sweeps, "annealer sweeps");
    tsp_cmd->add_option("--layers", tsp_args.layers, "QAOA layers");
    tsp_cmd->add_option("--shots", tsp_args.shots, "QAOA shots per evaluation");
    tsp_cmd->add_option("--budget", tsp_args.budget, "QAOA evaluation budget");
    tsp_cmd->add_option("--seed", tsp_args.seed, "base seed");

    AlignArgs align_args;
    auto *align_cmd = app.add_subcommand("align", "Grover-based read alignment");
    align_cmd->add_option("--ref", align_args.ref, "reference text file")->required();
    align_cmd->add_option("--read", align_args.read, "query read (ACGT)")->required();
    align_cmd->add_option("--mismatch", align_args.mismatch, "Hamming tolerance");
    align_cmd->add_option("--noise", align_args.noise,
                          "perfect|depolarizing:<p>[:flip=<q>]");
    align_cmd->add_option("--shots", align_args.shots, "number of shots");
    align_cmd->add_option("--seed", align_args.seed, "base seed");
    align_cmd->add_flag("--compiled", align_args.compiled,
                        "run the compiled circuit instead of the diagonal path");
    align_cmd->add_flag("--assume-unknown-matches", align_args.assume_unknown,
                        "size iterations as if the match count were unknown");

    RbArgs rb_args;
    auto *rb_cmd = app.add_subcommand("rb", "Single-qubit randomized benchmarking");
    rb_cmd->add_option("--p", rb_args.p, "depolarizing probability per gate");
    rb_cmd->add_option("--lengths", rb_args.lengths, "comma-separated sequence lengths");
    rb_cmd->add_option("--sequences", rb_args.sequences, "sequences per length");
    rb_cmd->add_option("--shots", rb_args.shots, "shots per sequence");
    rb_cmd->add_option("--seed", rb_args.seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (compile_cmd->parsed()) {
            return cmd_compile(compile_args);
        }
        if (sim_cmd->parsed()) {
            return cmd_sim(sim_args);
        }
        if (tsp_cmd->parsed()) {
            return cmd_tsp(tsp_args);
        }
        if (align_cmd->parsed()) {
            return cmd_align(align_args);
        }
        if (rb_cmd->parsed()) {
            return cmd_rb(rb_args);
        }
    } catch (const Error &e) {
        return fail_domain(e.what());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
