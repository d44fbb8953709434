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

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("not a number: " + item);
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace ncpt::cli;

    CLI::App app{"ncpt: order effects and detection in noncommutative probability models"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string priors_text;
    std::string target_text;
    std::uint64_t seed = 0;
    std::uint64_t runs = 0;
    unsigned threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config,--input", opts.config, "Input JSON file");
        sub->add_option("-o,--out", opts.out, "Output directory")->capture_default_str();
    };

    auto* simulate = app.add_subcommand("simulate", "Run the decentralized SPRT simulation");
    add_common(simulate);
    auto* seed_opt = simulate->add_option("--seed", seed, "Random seed");
    auto* runs_opt = simulate->add_option("--runs", runs, "Number of runs");
    auto* threads_opt = simulate->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    simulate->add_flag("--counts-only", opts.counts_only, "Skip runs.csv and only write counts.json");

    auto* estimate = app.add_subcommand("estimate", "Estimate ordered conditionals and order effects");
    add_common(estimate);
    estimate->add_option("--z-threshold", opts.z_threshold, "Significance threshold on |z|")->capture_default_str();

    auto* orders = app.add_subcommand("orders", "Minimum error for every measurement order");
    add_common(orders);
    orders->add_option("--priors", priors_text, "Priors zeta0,zeta1");

    auto* detect = app.add_subcommand("detect", "Solve a binary detection problem");
    add_common(detect);
    detect->add_option("--priors", priors_text, "Priors zeta0,zeta1");

    auto* axioms = app.add_subcommand("axioms", "Check event-state axioms on a model spec");
    add_common(axioms);

    auto* state = app.add_subcommand("state-exists", "Decide whether a state reproduces a distribution");
    add_common(state);
    state->add_option("--target", target_text, "Target distribution p1,...,pN");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*seed_opt) {
            opts.seed = seed;
        }
        if (*runs_opt) {
            opts.runs = runs;
        }
        if (*threads_opt) {
            opts.threads = threads;
        }
        if (!priors_text.empty()) {
            auto p = parse_list(priors_text);
            if (p.size() != 2) {
                throw std::invalid_argument("--priors needs two values");
            }
            opts.priors = std::make_pair(p[0], p[1]);
        }
        if (!target_text.empty()) {
            opts.target = parse_list(target_text);
        }
    } catch (const std::exception& e) {
        std::cerr << "ncpt: input error: " << e.what() << '\n';
        return kInputError;
    }

    if (simulate->parsed()) {
        return cmd_simulate(opts, std::cout, std::cerr);
    }
    if (estimate->parsed()) {
        return cmd_estimate(opts, std::cout, std::cerr);
    }
    if (orders->parsed()) {
        return cmd_orders(opts, std::cout, std::cerr);
    }
    if (detect->parsed()) {
        return cmd_detect(opts, std::cout, std::cerr);
    }
    if (axioms->parsed()) {
        return cmd_axioms(opts, std::cout, std::cerr);
    }
    return cmd_state_exists(opts, std::cout, std::cerr);
}
