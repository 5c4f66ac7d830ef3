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

#include "qstack/json_io.hpp"

#include <fstream>
#include <sstream>

#include "qstack/error.hpp"

namespace qstack {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(ErrorKind::IO, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorKind::IO, "cannot write '" + path + "'");
    }
    out << content;
}

Topology topology_from_json(const nlohmann::json &j) {
    Topology topo;
    if (j.contains("grid")) {
        const auto &grid = j.at("grid");
        topo = Topology::grid(grid.at("rows").get<int>(),
                              grid.at("cols").get<int>());
    } else if (j.contains("edges")) {
        std::vector<std::pair<int, int>> edges;
        int max_pos = -1;
        for (const auto &edge : j.at("edges")) {
            if (!edge.is_array() || edge.size() != 2) {
                raise(ErrorKind::CONFIG, "edges must be [a, b] pairs");
            }
            int a = edge[0].get<int>();
            int b = edge[1].get<int>();
            edges.push_back({a, b});
            max_pos = std::max({max_pos, a, b});
        }
        int num_positions = j.contains("num_positions")
                                ? j.at("num_positions").get<int>()
                                : max_pos + 1;
        topo = Topology::from_edges(num_positions, edges);
    } else {
        raise(ErrorKind::CONFIG, "topology needs either 'grid' or 'edges'");
    }
    if (j.contains("durations")) {
        for (const auto &[name, cycles] : j.at("durations").items()) {
            auto op = opcode_from_name(name);
            if (!op) {
                raise(ErrorKind::CONFIG, "unknown opcode '" + name + "' in durations");
            }
            int value = cycles.get<int>();
            if (value < 1) {
                raise(ErrorKind::CONFIG, "durations must be positive");
            }
            topo.durations[*op] = value;
        }
    }
    if (j.contains("native_swap")) {
        topo.native_swap = j.at("native_swap").get<bool>();
    }
    return topo;
}

Topology load_topology(const std::string &path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) {
        raise(ErrorKind::CONFIG, "topology file '" + path + "' is not valid JSON");
    }
    return topology_from_json(j);
}

QuboModel qubo_from_json(const nlohmann::json &j) {
    QuboModel model;
    model.n = j.at("n").get<int>();
    if (model.n < 1) {
        raise(ErrorKind::CONFIG, "QUBO needs at least one variable");
    }
    for (const auto &term : j.at("terms")) {
        if (!term.is_array() || term.size() != 3) {
            raise(ErrorKind::CONFIG, "terms must be [i, j, coeff] triples");
        }
        model.add(term[0].get<int>(), term[1].get<int>(), term[2].get<double>());
    }
    if (j.contains("offset")) {
        model.offset = j.at("offset").get<double>();
    }
    return model;
}

nlohmann::json qubo_to_json(const QuboModel &model) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[pair, q] : model.coeffs) {
        terms.push_back({pair.first, pair.second, q});
    }
    nlohmann::json j{{"n", model.n}, {"terms", std::move(terms)}};
    if (model.offset != 0.0) {
        j["offset"] = model.offset;
    }
    return j;
}

TspInstance tsp_from_weights_json(const nlohmann::json &j) {
    const nlohmann::json &matrix = j.is_object() ? j.at("weights") : j;
    std::vector<std::vector<double>> weights;
    for (const auto &row : matrix) {
        weights.push_back(row.get<std::vector<double>>());
    }
    return TspInstance::from_weights(std::move(weights));
}

TspInstance tsp_from_cities_csv(const std::string &text) {
    std::vector<std::pair<double, double>> points;
    std::istringstream stream(text);
    std::string line;
    bool first = true;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string id, xs, ys;
        if (!std::getline(fields, id, ',') || !std::getline(fields, xs, ',') ||
            !std::getline(fields, ys)) {
            raise(ErrorKind::CONFIG, "city lines must be 'id,x,y'");
        }
        char *end = nullptr;
        double x = std::strtod(xs.c_str(), &end);
        bool x_ok = end == xs.c_str() + xs.size() && !xs.empty();
        double y = std::strtod(ys.c_str(), &end);
        bool y_ok = end == ys.c_str() + ys.size() && !ys.empty();
        if (!x_ok || !y_ok) {
            if (first) {
                first = false; // header line
                continue;
            }
            raise(ErrorKind::CONFIG, "malformed city line '" + line + "'");
        }
        first = false;
        points.push_back({x, y});
    }
    if (points.size() < 3) {
        raise(ErrorKind::CONFIG, "need at least 3 cities");
    }
    return TspInstance::from_points(points);
}

nlohmann::json run_summary_to_json(const RunSummary &summary) {
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto &[key, count] : summary.histogram) {
        histogram[key] = count;
    }
    return nlohmann::json{{"shots", summary.shots},
                          {"seed", summary.seed},
                          {"histogram", std::move(histogram)}};
}

nlohmann::json compile_report_json(const CompiledProgram &program) {
    return nlohmann::json{
        {"swaps", program.swaps_inserted},
        {"latency", program.scheduled.latency},
        {"bundles", program.scheduled.circuit.bundles.size()},
        {"num_positions", program.scheduled.circuit.num_qubits},
        {"initial_placement", program.initial_placement.pos_of_logical},
        {"final_placement", program.scheduled.final_placement.pos_of_logical},
    };
}

nlohmann::json align_result_to_json(const AlignResult &result,
                                    const AlignmentQuery &query) {
    nlohmann::json hits = nlohmann::json::array();
    for (const AlignmentHit &hit : result.hits) {
        hits.push_back({{"index", hit.slice_index},
                        {"offset", hit.reference_offset},
                        {"padding", hit.padding},
                        {"count", hit.count},
                        {"frequency", hit.frequency}});
    }
    return nlohmann::json{{"read", query.read},
                          {"max_mismatch", query.max_mismatch},
                          {"matches", result.matches},
                          {"iterations", result.iterations},
                          {"shots", result.shots},
                          {"seed", result.seed},
                          {"hits", std::move(hits)}};
}

nlohmann::json rb_result_to_json(const RbResult &result, const RbConfig &config,
                                 uint64_t seed) {
    nlohmann::json lengths = nlohmann::json::array();
    nlohmann::json means = nlohmann::json::array();
    nlohmann::json stddevs = nlohmann::json::array();
    for (const RbLengthStats &stat : result.stats) {
        lengths.push_back(stat.length);
        means.push_back(stat.mean_survival);
        stddevs.push_back(stat.stddev);
    }
    return nlohmann::json{
        {"gate_error_p", config.gate_error_p},
        {"sequences_per_length", config.sequences_per_length},
        {"shots_per_sequence", config.shots_per_sequence},
        {"seed", seed},
        {"lengths", std::move(lengths)},
        {"survival_means", std::move(means)},
        {"survival_stddevs", std::move(stddevs)},
        {"fit", {{"amplitude", result.fit.amplitude},
                 {"baseline", result.fit.baseline},
                 {"decay", result.fit.decay}}},
        {"error_per_clifford", result.error_per_clifford},
    };
}

} // namespace qstack
