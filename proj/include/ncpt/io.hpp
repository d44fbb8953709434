// Copyright 2026 The ncpt Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncpt/count_table.hpp"
#include "ncpt/detection.hpp"
#include "ncpt/empirics.hpp"
#include "ncpt/event_state.hpp"
#include "ncpt/simulation.hpp"

namespace ncpt::io {

using Json = nlohmann::json;

/// Shortest "%.17g" rendering; parsing it back yields the same double.
std::string format_double(double v);

/// Reads and parses a JSON file. Throws InputError.
Json read_json_file(const std::string& path);
/// Writes `j` indented by two spaces with a trailing newline.
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

// Each from_* function throws InputError on malformed input.

Json to_json(const ObserverSpec& spec);
ObserverSpec observer_from_json(const Json& j);
Json to_json(const SimConfig& config);
/// Missing fields keep the defaults of SimConfig; missing observers select the
/// reference observers (using optional top-level "alpha" and "beta").
SimConfig sim_config_from_json(const Json& j);

/// {"runs": {"0": n0, "1": n1}, "counts": {"0": {key: n}, "1": {...}}}
Json to_json(const CountTable& table);
CountTable count_table_from_json(const Json& j);

Json to_json(const OrderedDistribution& dist);
OrderedDistribution ordered_distribution_from_json(const Json& j);

/// Real matrices as nested arrays, complex ones as {"re": rows, "im": rows}.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"priors": [zeta0, zeta1], "p0": [...], "p1": [...]}
Json to_json(const DetectionProblem& prob);
DetectionProblem detection_problem_from_json(const Json& j);
Json to_json(const DetectionSolution& sol);

/// {"elements": [matrix, ...], "labels": [...]}
Json to_json(const Povm& povm);
Povm povm_from_json(const Json& j);

Json to_json(const AxiomReport& report);
Json to_json(const OrderErrorTable& table);
Json to_json(const P6Result& result);
Json to_json(const StateExistenceResult& result);

// --- CSV -------------------------------------------------------------------

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);
/// Parses RFC 4180 style CSV (quoted fields, doubled quotes).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Header h,obs_order,d_first,d_second,d_third,tau1,tau2,tau3.
void write_runs_csv_header(std::ostream& os);
void write_runs_csv_row(std::ostream& os, const RunRecord& record);

struct ConditionalRow {
    std::string operation;
    ConditionalEstimate e3_prime;
    ConditionalEstimate e3;
    bool defined = true;
};

/// The eight rows of the conditional-probability table for one hypothesis:
/// T_X o T_Y with Y collected first, for both collection orders of D1 and D2.
/// Rows without data are flagged as undefined.
std::vector<ConditionalRow> conditional_rows(const CountTable& table, int h);
std::string conditionals_csv(const std::vector<ConditionalRow>& rows);

/// Header "Order of measurements,Probability of error".
std::string orders_csv(const OrderErrorTable& table);
/// Side-by-side outcome distributions, one (label, h=0, h=1) column group per order.
std::string distributions_csv(const std::vector<OrderedDistribution>& dists);

}  // namespace ncpt::io
