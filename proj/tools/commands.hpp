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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncpt::cli {

enum ExitCode : int {
    kOk = 0,
    kPropertyFailure = 1,
    kInputError = 2,
    kInsufficientData = 3,
};

struct CommandOptions {
    /// Input file: simulation config, count table, distributions, detection
    /// problem, model spec or POVM depending on the command.
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> runs;
    std::optional<unsigned> threads;
    std::optional<std::pair<double, double>> priors;
    std::optional<std::vector<double>> target;
    double z_threshold = 3.0;
    bool counts_only = false;
};

/// Each command writes its artifacts below `opts.out`, prints one summary
/// line to `out` and diagnostics to `err`, and returns an ExitCode.
int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_estimate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_orders(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_detect(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_axioms(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_state_exists(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace ncpt::cli
