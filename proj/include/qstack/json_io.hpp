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

#include <string>

#include <json.hpp>

#include "qstack/compiler.hpp"
#include "qstack/grover.hpp"
#include "qstack/qubo.hpp"
#include "qstack/rb.hpp"
#include "qstack/simulator.hpp"
#include "qstack/topology.hpp"
#include "qstack/tsp.hpp"

namespace qstack {

/// Reads a whole file; throws ErrorKind::IO when it cannot be opened.
std::string read_file(const std::string &path);

void write_file(const std::string &path, const std::string &content);

/// Topology JSON: either {"grid": {"rows": R, "cols": C}} or
/// {"num_positions": N, "edges": [[a,b], ...]}, plus optional
/// {"durations": {"h": 1, ...}} (mnemonic keys) and {"native_swap": bool}.
Topology topology_from_json(const nlohmann::json &j);
Topology load_topology(const std::string &path);

/// QUBO JSON: {"n": N, "terms": [[i, j, coeff], ...], "offset": c}.
QuboModel qubo_from_json(const nlohmann::json &j);
nlohmann::json qubo_to_json(const QuboModel &model);

/// {"weights": [[...], ...]} or a bare matrix.
TspInstance tsp_from_weights_json(const nlohmann::json &j);

/// CSV lines `city_id,x,y`; a leading header line is skipped; weights are
/// Euclidean distances.
TspInstance tsp_from_cities_csv(const std::string &text);

nlohmann::json run_summary_to_json(const RunSummary &summary);
nlohmann::json compile_report_json(const CompiledProgram &program);
nlohmann::json align_result_to_json(const AlignResult &result,
                                    const AlignmentQuery &query);
nlohmann::json rb_result_to_json(const RbResult &result, const RbConfig &config,
                                 uint64_t seed);

} // namespace qstack
