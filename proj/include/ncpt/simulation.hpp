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
#include <span>
#include <vector>

#include "ncpt/count_table.hpp"
#include "ncpt/rng.hpp"

namespace ncpt {

/// One observer running Wald's sequential probability ratio test on i.i.d.
/// observations from a finite alphabet.
struct ObserverSpec {
    std::vector<double> pmf_h0;
    std::vector<double> pmf_h1;
    double alpha = 0.05;  // target type-I error
    double beta = 0.05;   // target type-II error
    std::uint32_t max_samples = 10000;

    /// Throws InvariantViolation for malformed pmfs or error targets and
    /// DegenerateSpec when an outcome has zero mass under both hypotheses.
    void validate() const;
    /// log((1 - beta) / alpha)
    double upper_threshold() const;
    /// log(beta / (1 - alpha))
    double lower_threshold() const;
};

struct SprtOutcome {
    int decision = 0;
    std::uint32_t stop_time = 0;
};

/// Draws observations under hypothesis `h` from `stream` until the
/// log-likelihood ratio leaves (lower, upper). At the sample cap the sign of
/// the ratio decides (ties decide 0).
SprtOutcome sprt_run(const ObserverSpec& spec, int h, PhiloxStream& stream);

/// Orders decisions by arrival (stop time) with ties broken by `preference`,
/// a permutation of the 1-based observer ids listing who is read first.
DecisionSequence coordinate(std::span<const std::uint32_t> stop_times, std::span<const int> decisions,
                            std::span<const int> preference);

struct RunRecord {
    int h = 0;
    DecisionSequence decisions;
    std::vector<std::uint32_t> stop_times;  // indexed by observer id - 1

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SimConfig {
    std::vector<ObserverSpec> observers;
    std::uint64_t runs = 1000000;
    std::uint64_t seed = 1;
    double prior_h0 = 0.5;
    double prior_h1 = 0.5;
    std::vector<int> preference{2, 1, 3};
    /// Worker threads; 0 picks the hardware concurrency. Output does not depend on it.
    unsigned threads = 1;

    void validate() const;
    /// The three observers of the reference setup (alphabets of size 5, 4, 3).
    static SimConfig reference(double alpha = 0.05, double beta = 0.05);
};

/// Stream id 0 draws the hypothesis; observer i uses stream id i.
RunRecord simulate_run(const SimConfig& config, std::uint64_t run_index);

std::vector<RunRecord> simulate_campaign(const SimConfig& config);

/// Same runs as simulate_campaign, aggregated into counts without storing records.
CountTable simulate_counts(const SimConfig& config);

}  // namespace ncpt
