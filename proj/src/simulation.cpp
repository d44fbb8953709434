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

#include "ncpt/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "ncpt/error.hpp"

namespace ncpt {

namespace {

void validate_pmf(const std::vector<double>& pmf, const char* name) {
    if (pmf.empty()) {
        throw InvariantViolation("ObserverSpec.pmf", std::string(name) + " is empty");
    }
    double sum = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvariantViolation("ObserverSpec.pmf", std::string(name) + " has a negative or non-finite entry");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvariantViolation("ObserverSpec.pmf", std::string(name) + " sums to " + std::to_string(sum));
    }
}

// Observer with precomputed sampling tables.
struct CompiledObserver {
    std::array<std::vector<double>, 2> cdf;
    std::vector<double> llr_step;
    double upper;
    double lower;
    std::uint32_t max_samples;

    explicit CompiledObserver(const ObserverSpec& spec) {
        spec.validate();
        const std::size_t n = spec.pmf_h0.size();
        const std::vector<double>* pmfs[2] = {&spec.pmf_h0, &spec.pmf_h1};
        for (int h = 0; h < 2; ++h) {
            cdf[h].resize(n);
            std::partial_sum(pmfs[h]->begin(), pmfs[h]->end(), cdf[h].begin());
        }
        llr_step.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double p0 = spec.pmf_h0[i];
            double p1 = spec.pmf_h1[i];
            if (p0 == 0.0) {
                llr_step[i] = INFINITY;
            } else if (p1 == 0.0) {
                llr_step[i] = -INFINITY;
            } else {
                llr_step[i] = std::log(p1 / p0);
            }
        }
        upper = spec.upper_threshold();
        lower = spec.lower_threshold();
        max_samples = spec.max_samples;
    }

    std::size_t sample(int h, PhiloxStream& stream) const {
        const auto& c = cdf[static_cast<std::size_t>(h)];
        double u = stream.uniform();
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            if (u < c[i]) {
                return i;
            }
        }
        // Rounding in the cumulative sum: never return a zero-mass last outcome.
        std::size_t last = c.size() - 1;
        while (last > 0 && c[last] == c[last - 1]) {
            --last;
        }
        return last;
    }

    SprtOutcome run(int h, PhiloxStream& stream) const {
        double llr = 0.0;
        for (std::uint32_t t = 1; t <= max_samples; ++t) {
            llr += llr_step[sample(h, stream)];
            if (llr >= upper) {
                return {1, t};
            }
            if (llr <= lower) {
                return {0, t};
            }
        }
        return {llr > 0.0 ? 1 : 0, max_samples};
    }
};

void validate_preference(std::span<const int> preference, std::size_t n) {
    std::vector<int> sorted(preference.begin(), preference.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(n);
    std::iota(expected.begin(), expected.end(), 1);
    if (sorted != expected) {
        throw InvariantViolation("SimConfig.preference", "preference must be a permutation of observer ids 1.." +
                                                             std::to_string(n));
    }
}

struct CompiledConfig {
    std::vector<CompiledObserver> observers;
    const SimConfig* config;

    explicit CompiledConfig(const SimConfig& c) : config(&c) {
        c.validate();
        for (const auto& spec : c.observers) {
            observers.emplace_back(spec);
        }
    }

    RunRecord run(std::uint64_t index) const {
        RunRecord rec;
        PhiloxStream hyp(config->seed, index, 0);
        rec.h = hyp.uniform() < config->prior_h1 ? 1 : 0;
        std::vector<int> decisions(observers.size());
        rec.stop_times.resize(observers.size());
        for (std::size_t i = 0; i < observers.size(); ++i) {
            PhiloxStream stream(config->seed, index, static_cast<std::uint32_t>(i + 1));
            SprtOutcome out = observers[i].run(rec.h, stream);
            decisions[i] = out.decision;
            rec.stop_times[i] = out.stop_time;
        }
        rec.decisions = coordinate(rec.stop_times, decisions, config->preference);
        return rec;
    }
};

unsigned worker_count(const SimConfig& config) {
    unsigned n = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
    return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(config.runs, 1)));
}

// Splits [0, runs) into contiguous shards and calls body(shard, begin, end) on each.
template <class Body>
void for_each_shard(std::uint64_t runs, unsigned workers, Body&& body) {
    if (workers <= 1) {
        body(0U, std::uint64_t{0}, runs);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (runs + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t begin = std::min(runs, w * chunk);
        std::uint64_t end = std::min(runs, begin + chunk);
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace

void ObserverSpec::validate() const {
    validate_pmf(pmf_h0, "pmf_h0");
    validate_pmf(pmf_h1, "pmf_h1");
    if (pmf_h0.size() != pmf_h1.size()) {
        throw InvariantViolation("ObserverSpec.alphabet", "pmf_h0 and pmf_h1 have different alphabets");
    }
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
        throw InvariantViolation("ObserverSpec.errors", "alpha and beta must lie in (0, 1)");
    }
    if (max_samples == 0) {
        throw InvariantViolation("ObserverSpec.max_samples", "max_samples must be positive");
    }
    for (std::size_t i = 0; i < pmf_h0.size(); ++i) {
        if (pmf_h0[i] == 0.0 && pmf_h1[i] == 0.0) {
            throw DegenerateSpec("outcome " + std::to_string(i + 1) + " has zero probability under both hypotheses");
        }
    }
}

double ObserverSpec::upper_threshold() const { return std::log((1.0 - beta) / alpha); }

double ObserverSpec::lower_threshold() const { return std::log(beta / (1.0 - alpha)); }

SprtOutcome sprt_run(const ObserverSpec& spec, int h, PhiloxStream& stream) {
    return CompiledObserver(spec).run(h, stream);
}

DecisionSequence coordinate(std::span<const std::uint32_t> stop_times, std::span<const int> decisions,
                            std::span<const int> preference) {
    const std::size_t n = stop_times.size();
    if (decisions.size() != n) {
        throw DimensionMismatch("coordinate: stop_times and decisions differ in length");
    }
    validate_preference(preference, n);
    std::vector<std::size_t> rank(n);
    for (std::size_t k = 0; k < n; ++k) {
        rank[static_cast<std::size_t>(preference[k] - 1)] = k;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (stop_times[a] != stop_times[b]) {
            return stop_times[a] < stop_times[b];
        }
        return rank[a] < rank[b];
    });
    DecisionSequence out;
    out.reserve(n);
    for (std::size_t i : order) {
        out.push_back({static_cast<int>(i + 1), decisions[i]});
    }
    return out;
}

void SimConfig::validate() const {
    if (observers.empty()) {
        throw InvariantViolation("SimConfig.observers", "no observers");
    }
    for (const auto& o : observers) {
        o.validate();
    }
    if (!(prior_h0 >= 0.0 && prior_h1 >= 0.0) || std::abs(prior_h0 + prior_h1 - 1.0) > 1e-12) {
        throw InvariantViolation("SimConfig.prior", "prior must be nonnegative and sum to 1");
    }
    validate_preference(preference, observers.size());
}

SimConfig SimConfig::reference(double alpha, double beta) {
    SimConfig c;
    c.observers = {
        {{0.20, 0.10, 0.15, 0.30, 0.25}, {0.40, 0.20, 0.10, 0.15, 0.15}, alpha, beta, 10000},
        {{0.20, 0.40, 0.30, 0.10}, {0.25, 0.30, 0.20, 0.25}, alpha, beta, 10000},
        {{0.25, 0.35, 0.40}, {0.35, 0.50, 0.15}, alpha, beta, 10000},
    };
    return c;
}

RunRecord simulate_run(const SimConfig& config, std::uint64_t run_index) {
    return CompiledConfig(config).run(run_index);
}

std::vector<RunRecord> simulate_campaign(const SimConfig& config) {
    CompiledConfig compiled(config);
    std::vector<RunRecord> records(config.runs);
    for_each_shard(config.runs, worker_count(config), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
            records[r] = compiled.run(r);
        }
    });
    return records;
}

CountTable simulate_counts(const SimConfig& config) {
    CompiledConfig compiled(config);
    unsigned workers = worker_count(config);
    std::vector<CountTable> shards(workers);
    for_each_shard(config.runs, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
            RunRecord rec = compiled.run(r);
            shards[w].add(rec.h, rec.decisions);
        }
    });
    CountTable total;
    for (const auto& s : shards) {
        total.merge(s);
    }
    return total;
}

}  // namespace ncpt
