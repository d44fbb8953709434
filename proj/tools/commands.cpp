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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "ncpt/error.hpp"
#include "ncpt/io.hpp"

namespace ncpt::cli {

namespace {

using io::Json;

std::string path_in(const CommandOptions& opts, const std::string& name) {
    return (std::filesystem::path(opts.out) / name).string();
}

void prepare_out(const CommandOptions& opts) {
    std::error_code ec;
    std::filesystem::create_directories(opts.out, ec);
    if (ec) {
        throw InputError("cannot create output directory " + opts.out + ": " + ec.message());
    }
}

Json require_input(const CommandOptions& opts) {
    if (opts.config.empty()) {
        throw InputError("an input file is required (--config)");
    }
    return io::read_json_file(opts.config);
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const DegenerateSpec& e) {
        err << "ncpt: degenerate specification: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const InsufficientData& e) {
        err << "ncpt: insufficient data: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const EmptyTable& e) {
        err << "ncpt: insufficient data: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const ZeroDenominator& e) {
        err << "ncpt: insufficient data: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const Error& e) {
        err << "ncpt: input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "ncpt: error: " << e.what() << '\n';
        return kInputError;
    }
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

void apply_overrides(const CommandOptions& opts, SimConfig& config) {
    if (opts.seed) {
        config.seed = *opts.seed;
    }
    if (opts.runs) {
        config.runs = *opts.runs;
    }
    if (opts.threads) {
        config.threads = *opts.threads;
    }
    if (opts.priors) {
        config.prior_h0 = opts.priors->first;
        config.prior_h1 = opts.priors->second;
    }
}

std::vector<RunRecord> simulate_chunk(const SimConfig& config, std::uint64_t begin, std::uint64_t end) {
    std::vector<RunRecord> records(end - begin);
    unsigned workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, records.size()));
    if (workers <= 1) {
        for (std::uint64_t i = begin; i < end; ++i) {
            records[i - begin] = simulate_run(config, i);
        }
        return records;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t i = begin + w; i < end; i += workers) {
                records[i - begin] = simulate_run(config, i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    return records;
}

std::string rate_summary(const CountTable& table, std::size_t observers) {
    std::ostringstream os;
    for (int h = 0; h < 2; ++h) {
        os << " | h=" << h << " n=" << table.total(h);
        if (table.total(h) == 0) {
            continue;
        }
        for (std::size_t i = 1; i <= observers; ++i) {
            double rate = empirical_prob(
                table,
                [i](const DecisionSequence& seq) {
                    return std::any_of(seq.begin(), seq.end(), [i](const Decision& d) {
                        return d.observer == static_cast<int>(i) && d.value == 1;
                    });
                },
                h);
            os << " P(D" << i << "=1)=" << fixed(rate);
        }
    }
    return os.str();
}

Json estimate_json(const ConditionalEstimate& e) { return Json{{"estimate", e.estimate}, {"n", e.n}}; }

std::vector<OrderedDistribution> distributions_from(const Json& j) {
    std::vector<OrderedDistribution> dists;
    const Json& orders = j.at("orders");
    if (!orders.is_array() || orders.empty()) {
        throw InputError("'orders' must be a nonempty array");
    }
    for (const auto& o : orders) {
        dists.push_back(io::ordered_distribution_from_json(o));
    }
    return dists;
}

std::pair<double, double> priors_of(const CommandOptions& opts, const Json& j, std::pair<double, double> fallback) {
    if (opts.priors) {
        return *opts.priors;
    }
    if (j.is_object() && j.contains("priors")) {
        auto p = j.at("priors").get<std::vector<double>>();
        if (p.size() != 2) {
            throw InputError("'priors' must hold exactly two values");
        }
        return {p[0], p[1]};
    }
    return fallback;
}

AxiomCheck failed_check(std::string axiom, std::string instance) {
    return AxiomCheck{std::move(axiom), std::move(instance), 0.0, false};
}

AxiomReport quantum_report(const Json& spec) {
    AxiomReport report;
    const Json& events = spec.at("events");
    if (!events.is_array() || events.empty()) {
        throw InputError("'events' must be a nonempty array");
    }
    std::vector<Projection> generators;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Json& e = events[i];
        std::string name = e.value("name", "E" + std::to_string(i + 1));
        try {
            if (e.contains("angle_deg")) {
                generators.push_back(Projection::at_angle(e.at("angle_deg").get<double>() * M_PI / 180.0));
            } else {
                generators.emplace_back(io::matrix_from_json(e.at("matrix")));
            }
            names.push_back(name);
        } catch (const InvariantViolation& err) {
            report.checks.push_back(failed_check("event.projection", name + ": " + err.what()));
        }
    }
    if (!report.checks.empty()) {
        return report;
    }
    const std::size_t dim = generators.front().dim();
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].dim() != dim) {
            throw InputError("events differ in dimension");
        }
    }
    EventSet set = EventSet::closure(std::move(generators), std::move(names));
    auto states = probe_states(dim, spec.value("probes", std::size_t{200}), spec.value("seed", std::uint64_t{0x5eed}));
    return axiom_suite(set, states, standard_operation_map(), spec.value("tolerance", 1e-8));
}

AxiomReport classical_report(const Json& spec) {
    ClassicalModel model;
    model.sample_space_size = spec.at("sample_space_size").get<std::size_t>();
    if (model.sample_space_size == 0 || model.sample_space_size > 64) {
        throw InputError("sample_space_size must lie in 1..64");
    }
    for (const auto& e : spec.at("events")) {
        EventMask mask = 0;
        for (auto outcome : e.get<std::vector<std::size_t>>()) {
            if (outcome >= model.sample_space_size) {
                throw InputError("event outcome out of range");
            }
            mask |= EventMask{1} << outcome;
        }
        model.events.push_back(mask);
    }
    model.measures = spec.at("measures").get<std::vector<std::vector<double>>>();
    try {
        model.validate();
    } catch (const InvariantViolation& err) {
        AxiomReport report;
        report.checks.push_back(failed_check(err.invariant(), err.what()));
        return report;
    }
    return classical_axiom_suite(model, spec.value("tolerance", 1e-12));
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SimConfig config = opts.config.empty() ? SimConfig::reference() : io::sim_config_from_json(require_input(opts));
        apply_overrides(opts, config);
        config.validate();
        prepare_out(opts);

        CountTable table;
        if (opts.counts_only) {
            table = simulate_counts(config);
        } else {
            std::ofstream csv(path_in(opts, "runs.csv"), std::ios::binary);
            if (!csv) {
                throw InputError("cannot write runs.csv");
            }
            io::write_runs_csv_header(csv);
            constexpr std::uint64_t kChunk = 1 << 16;
            for (std::uint64_t begin = 0; begin < config.runs; begin += kChunk) {
                auto records = simulate_chunk(config, begin, std::min(config.runs, begin + kChunk));
                for (const auto& r : records) {
                    io::write_runs_csv_row(csv, r);
                    table.add(r.h, r.decisions);
                }
            }
        }
        io::write_json_file(path_in(opts, "counts.json"), io::to_json(table));
        out << "simulate: runs=" << config.runs << " seed=" << config.seed
            << rate_summary(table, config.observers.size()) << '\n';
        return kOk;
    });
}

int cmd_estimate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        CountTable table = io::count_table_from_json(require_input(opts));
        prepare_out(opts);
        bool undefined = false;
        Json comparisons = Json::array();
        bool any_significant = false;
        double max_abs_z = 0.0;
        for (int h = 0; h < 2; ++h) {
            auto rows = io::conditional_rows(table, h);
            io::write_text_file(path_in(opts, "conditionals_h" + std::to_string(h) + ".csv"),
                                io::conditionals_csv(rows));
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& e2_first = rows[i];
                const auto& e1_first = rows[i + 4];
                Json c{{"h", h}, {"d1", static_cast<int>(i / 2)}, {"d2", static_cast<int>(i % 2)}};
                c["e2_then_e1"] = e2_first.defined ? estimate_json(e2_first.e3) : Json(nullptr);
                c["e1_then_e2"] = e1_first.defined ? estimate_json(e1_first.e3) : Json(nullptr);
                if (e2_first.defined && e1_first.defined) {
                    OrderEffect eff = order_effect_test(e2_first.e3.estimate, e2_first.e3.n, e1_first.e3.estimate,
                                                        e1_first.e3.n, opts.z_threshold);
                    c["z"] = std::isfinite(eff.z) ? Json(eff.z) : Json(eff.z > 0 ? "inf" : "-inf");
                    c["significant"] = eff.significant;
                    any_significant = any_significant || eff.significant;
                    max_abs_z = std::max(max_abs_z, std::abs(eff.z));
                } else {
                    undefined = true;
                    c["z"] = nullptr;
                    c["significant"] = false;
                }
                comparisons.push_back(std::move(c));
            }
        }
        Json report{{"target", "E3"},
                    {"z_threshold", opts.z_threshold},
                    {"comparisons", comparisons},
                    {"significant_any", any_significant},
                    {"undefined_branches", undefined}};
        io::write_json_file(path_in(opts, "order_effects.json"), report);
        out << "estimate: max|z|=" << fixed(max_abs_z, 3) << " significant=" << (any_significant ? "yes" : "no")
            << (undefined ? " (some branches have no data)" : "") << '\n';
        return undefined ? kInsufficientData : kOk;
    });
}

int cmd_orders(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json input = require_input(opts);
        std::vector<OrderedDistribution> dists;
        if (input.contains("orders")) {
            dists = distributions_from(input);
        } else {
            CountTable table = io::count_table_from_json(input);
            for (const auto& order : standard_orders()) {
                dists.push_back(ordered_distribution(table, order));
            }
        }
        auto [z0, z1] = priors_of(opts, input, {0.5, 0.5});
        OrderErrorTable table = min_error_over_orders(dists, z0, z1);
        prepare_out(opts);
        io::write_text_file(path_in(opts, "orders.csv"), io::orders_csv(table));
        io::write_text_file(path_in(opts, "distributions.csv"), io::distributions_csv(dists));

        Json report = io::to_json(table);
        report["priors"] = {z0, z1};
        double worst_other = -1.0;
        double best_third_first = 2.0;
        std::size_t third_first = 0;
        for (std::size_t i = 0; i < dists.size(); ++i) {
            if (!dists[i].order.empty() && dists[i].order.front() == 3 && dists[i].symbol == "D") {
                ++third_first;
                best_third_first = std::min(best_third_first, table.rows[i].error);
            } else {
                worst_other = std::max(worst_other, table.rows[i].error);
            }
        }
        if (third_first > 0 && third_first < dists.size()) {
            report["d3_first_strictly_worst"] = best_third_first > worst_other;
        }
        io::write_json_file(path_in(opts, "orders.json"), report);
        const auto& best = table.rows[table.best];
        out << "orders: " << table.rows.size() << " orders, best=[" << best.order << "] error=" << fixed(best.error)
            << '\n';
        return kOk;
    });
}

int cmd_detect(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json input = require_input(opts);
        DetectionProblem prob = io::detection_problem_from_json(input);
        if (opts.priors) {
            prob.zeta0 = opts.priors->first;
            prob.zeta1 = opts.priors->second;
            prob.validate();
        }
        DetectionSolution classical = classical_min_error(prob);
        PvmModel model = build_pvm_model(prob);
        RiskPair risks = make_risks(prob.zeta0, model.rho0, prob.zeta1, model.rho1);
        DetectionSolution pvm = solve_pvm_detection(risks, model.measurement);
        bool holevo = holevo_conditions_check(risks, pvm.pi0.matrix(), pvm.pi1.matrix());

        Json report{{"problem", io::to_json(prob)},
                    {"classical", io::to_json(classical)},
                    {"pvm", io::to_json(pvm)},
                    {"holevo_conditions", holevo}};
        if (input.contains("rho0") && input.contains("rho1")) {
            DensityState rho0(io::matrix_from_json(input.at("rho0")));
            DensityState rho1(io::matrix_from_json(input.at("rho1")));
            if (input.contains("povm")) {
                Povm povm = io::povm_from_json(input.at("povm"));
                report["p5"] = io::to_json(solve_p5(make_risks(prob.zeta0, rho0, prob.zeta1, rho1), povm));
            }
            report["p6"] = io::to_json(solve_p6_feasibility(rho0, rho1, prob, rho0.dim()));
        }
        prepare_out(opts);
        io::write_json_file(path_in(opts, "detect.json"), report);
        out << "detect: classical error=" << io::format_double(classical.error)
            << " pvm error=" << io::format_double(pvm.error) << " holevo=" << (holevo ? "pass" : "FAIL") << '\n';
        return holevo ? kOk : kPropertyFailure;
    });
}

int cmd_axioms(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json spec = require_input(opts);
        std::string type = spec.value("type", "quantum");
        AxiomReport report;
        try {
            if (type == "quantum") {
                report = quantum_report(spec);
            } else if (type == "classical") {
                report = classical_report(spec);
            } else {
                throw InputError("unknown model type '" + type + "'");
            }
        } catch (const Json::exception& e) {
            throw InputError(std::string("model spec: ") + e.what());
        }
        prepare_out(opts);
        Json j = io::to_json(report);
        j["model"] = type;
        io::write_json_file(path_in(opts, "axioms.json"), j);
        out << "axioms: " << type << " model, " << report.checks.size() << " checks, " << report.failures()
            << " failures\n";
        for (const auto& c : report.checks) {
            if (!c.pass) {
                err << "ncpt: axiom failure: " << c.axiom << " [" << c.instance << "] deviation "
                    << io::format_double(c.max_deviation) << '\n';
            }
        }
        return report.all_passed() ? kOk : kPropertyFailure;
    });
}

int cmd_state_exists(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Json input = require_input(opts);
        Povm povm = io::povm_from_json(input);
        std::vector<double> target;
        if (opts.target) {
            target = *opts.target;
        } else if (input.contains("target")) {
            target = input.at("target").get<std::vector<double>>();
        } else {
            throw InputError("a target distribution is required ('target' or --target)");
        }
        StateExistenceProblem problem(std::move(povm), std::move(target));
        StateExistenceResult result = state_exists_for_povm(problem);
        prepare_out(opts);
        io::write_json_file(path_in(opts, "state_exists.json"), io::to_json(result));
        out << "state-exists: " << to_string(result.verdict) << " residual=" << io::format_double(result.residual)
            << (result.note.empty() ? "" : " (" + result.note + ")") << '\n';
        return kOk;
    });
}

}  // namespace ncpt::cli
