// Copyright 2026 The Multirate Control Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mrc: command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"
#include "mrc/io/config.hpp"
#include "mrc/io/csv.hpp"
#include "mrc/io/json.hpp"
#include "mrc/lifting/lifting.hpp"
#include "mrc/lti/discretize.hpp"
#include "mrc/lti/partial_fraction.hpp"
#include "mrc/lti/reduction.hpp"
#include "mrc/pathsim/pathsim.hpp"

namespace fs = std::filesystem;
using mrc::io::Json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Flags {
    std::optional<std::string> config;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> output_dir;

    std::optional<std::string> controller;
    std::optional<double> period;
    std::optional<std::string> method;
    std::optional<double> snap_tol;
    std::optional<std::size_t> target_order;
    std::optional<double> slow_threshold;
    bool keep_fast_pole = false;

    std::optional<int> n;
    std::optional<std::string> slow;
    std::optional<std::string> rule;
    std::optional<double> k;
    std::optional<double> ratio;
    std::optional<std::string> order;
    std::optional<std::string> input;
    std::optional<std::string> output;
    std::optional<int> phase;

    std::optional<std::string> plant;
    bool formula_plant = false;
    std::optional<std::string> path;
    std::optional<double> duration;
    std::optional<double> speed;
    std::optional<double> lookahead;
    std::optional<std::string> impl;
    int metaperiods = 100;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

// Config file values overridden by explicit flags.
mrc::io::RunConfig settings(const Flags& f) {
    mrc::io::RunConfig c;
    if (f.config) {
        c = mrc::io::load_config(*f.config);
    } else {
        c.output_dir = "out";
    }
    if (f.seed) c.seed = *f.seed;
    if (f.output_dir) c.output_dir = *f.output_dir;
    if (f.controller) {
        c.controller_file = *f.controller;
        c.continuous_controller_file = *f.controller;
    }
    if (f.period) c.period = *f.period;
    if (f.method) {
        if (*f.method == "mpz") {
            c.method = mrc::lti::DiscretizationMethod::MatchedPoleZero;
        } else if (*f.method == "zoh") {
            c.method = mrc::lti::DiscretizationMethod::ZeroOrderHold;
        } else {
            throw mrc::ValidationError(fmt::format("unknown discretization method '{}'", *f.method));
        }
    }
    if (f.snap_tol) c.snap_tol = *f.snap_tol;
    if (f.target_order) c.reduction.target_order = *f.target_order;
    if (f.slow_threshold) c.reduction.slow_pole_threshold = *f.slow_threshold;
    if (f.keep_fast_pole) c.reduction.drop_fast_pole = false;
    if (f.n) c.n = *f.n;
    if (f.rule || f.slow) {
        const std::string rule = f.rule.value_or("explicit");
        if (rule == "explicit") {
            const auto slow = split_list(f.slow.value_or(""));
            c.rule = mrc::interlace::Explicit{{slow.begin(), slow.end()}};
        } else if (rule == "nyquist") {
            c.rule = mrc::interlace::NyquistFraction{f.k.value_or(5.0)};
        } else if (rule == "relative") {
            c.rule = mrc::interlace::RelativeSeparation{f.ratio.value_or(0.2)};
        } else {
            throw mrc::ValidationError(fmt::format("unknown classification rule '{}'", rule));
        }
    }
    if (f.order) c.slot_order = split_list(*f.order);
    if (f.input) c.input = mrc::interlace::parse_input_strategy(*f.input);
    if (f.output) c.output = mrc::interlace::parse_output_strategy(*f.output);
    if (f.phase) c.phase = *f.phase;
    if (f.plant) {
        c.plant_source = "fixture";
        c.plant_file = *f.plant;
    }
    if (f.formula_plant) c.plant_source = "formula";
    if (f.path) c.path_file = *f.path;
    if (f.duration) c.duration = *f.duration;
    if (f.speed) c.constant_speed = *f.speed;
    if (f.lookahead) c.lookahead = *f.lookahead;
    c.validate();
    return c;
}

void emit(const Flags& f, const std::string& text) {
    if (f.out) {
        std::ofstream o(*f.out);
        if (!o) {
            throw mrc::ValidationError(fmt::format("cannot write {}", *f.out));
        }
        o << text;
    } else {
        std::cout << text;
    }
}

std::string table_text(const mrc::io::NumericTable& t) {
    std::ostringstream os;
    mrc::io::write_numeric_csv(os, t);
    return os.str();
}

mrc::lti::TransferFunction require_tf(const std::optional<fs::path>& file, const char* what) {
    if (!file) {
        throw mrc::ValidationError(fmt::format("no {} given (use --controller or the config file)", what));
    }
    return mrc::io::read_tf(*file);
}

// Discrete controller; a continuous one is discretized with the configured method.
mrc::lti::TransferFunction discrete_controller(const mrc::io::RunConfig& c) {
    auto tf = require_tf(c.controller_file, "controller");
    if (tf.domain().is_continuous()) {
        tf = mrc::lti::discretize(tf, c.period, c.method, c.snap_tol);
    }
    return tf;
}

struct Planned {
    mrc::lti::ParallelForm pf;
    mrc::interlace::PolePartition partition;
    mrc::interlace::InterlacePlan plan;
};

Planned build_plan(const mrc::io::RunConfig& c) {
    Planned p{mrc::lti::partial_fraction(discrete_controller(c)), {}, {}};
    p.partition = mrc::interlace::classify_poles(p.pf, c.rule);
    const auto order = c.slot_order.empty() ? p.partition.slow : c.slot_order;
    p.plan = mrc::interlace::make_plan(p.partition, order, c.input, c.output, c.phase);
    if (c.n && *c.n != p.plan.n) {
        throw mrc::ValidationError(
            fmt::format("N = {} was requested but the partition has {} slow blocks", *c.n, p.plan.n));
    }
    mrc::interlace::validate_plan(p.plan, p.pf);
    return p;
}

mrc::pathsim::Scenario build_scenario(const mrc::io::RunConfig& c, double period, int n) {
    auto path = c.path_file ? mrc::pathsim::Path::read_csv(*c.path_file) : mrc::pathsim::synthetic_uturn();
    mrc::pathsim::Scenario sc(std::move(path));
    sc.period = period;
    sc.n = n;
    sc.duration = c.duration;
    sc.reference = mrc::pathsim::PursuitReference{c.lookahead, c.corridor};
    sc.speed = c.constant_speed;
    sc.nominal_speed = c.speed.v_nominal;
    if (c.plant_source == "formula") {
        sc.plant = mrc::pathsim::FormulaPlant{c.vehicle};
    } else {
        sc.plant = mrc::pathsim::FixturePlant{require_tf(c.plant_file, "plant")};
    }
    sc.substeps = c.substeps;
    sc.integration = c.integration;
    sc.steering_limit = c.steering_limit;
    sc.label = c.path_file ? c.path_file->stem().string() : "synthetic_uturn";
    return sc;
}

mrc::lti::StateSpace plant_model(const mrc::io::RunConfig& c) {
    if (c.plant_source == "formula") {
        return mrc::vehicle::lateral_ss(c.vehicle, c.speed.v_nominal);
    }
    return mrc::lti::tf_to_ss(require_tf(c.plant_file, "plant"));
}

mrc::io::NumericTable roots_table(const mrc::lti::TransferFunction& tf) {
    mrc::io::NumericTable t{{"kind", "re", "im"}, {}};
    for (const auto& p : tf.poles()) {
        t.rows.push_back({0.0, p.real(), p.imag()});
    }
    for (const auto& z : tf.zeros()) {
        t.rows.push_back({1.0, z.real(), z.imag()});
    }
    return t;
}

// --- subcommands -------------------------------------------------------------

int cmd_reduce(const Flags& f) {
    const auto c = settings(f);
    const auto tf = require_tf(c.continuous_controller_file, "continuous controller");
    const auto report = mrc::lti::reduce_controller(tf, c.reduction);
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"index", "hankel_value"}, {}};
        for (std::size_t i = 0; i < report.hankel_values.size(); ++i) {
            t.rows.push_back({static_cast<double>(i + 1), report.hankel_values[i]});
        }
        emit(f, table_text(t));
    } else {
        emit(f, mrc::io::dump(mrc::io::to_json(report)));
    }
    return 0;
}

int cmd_discretize(const Flags& f) {
    const auto c = settings(f);
    const auto tf = require_tf(c.continuous_controller_file, "continuous controller");
    if (!tf.domain().is_continuous()) {
        throw mrc::ValidationError("discretize expects a continuous transfer function");
    }
    const auto d = mrc::lti::discretize(tf, c.period, c.method, c.snap_tol);
    if (f.format == "csv") {
        emit(f, table_text(roots_table(d)));
    } else {
        emit(f, mrc::io::dump(mrc::io::to_json(d)));
    }
    return 0;
}

int cmd_decompose(const Flags& f) {
    const auto c = settings(f);
    const auto tf = discrete_controller(c);
    const auto pf = mrc::lti::partial_fraction(tf);
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"block", "residue", "pole"}, {}};
        for (std::size_t i = 0; i < pf.first_order.size(); ++i) {
            t.rows.push_back({static_cast<double>(i + 1), pf.first_order[i].residue, pf.first_order[i].pole});
        }
        emit(f, table_text(t));
    } else {
        Json j = mrc::io::to_json(pf);
        j["recombination_error"] = mrc::io::round9(mrc::lti::relative_tf_error(pf.recombine(), tf));
        emit(f, mrc::io::dump(j));
    }
    return 0;
}

int cmd_plan(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    const double t = p.pf.domain.period();
    Json blocks = Json::array();
    mrc::io::NumericTable table{{"slot", "offset", "w_at_1", "gain_NT", "pole_NT"}, {}};
    for (int slot = 1; slot <= p.plan.n; ++slot) {
        const auto* b = p.pf.find_first_order(p.plan.slots[static_cast<std::size_t>(slot - 1)]);
        const auto r = mrc::interlace::resample_slow_block(*b, t, p.plan.n);
        Json bj = mrc::io::to_json(r);
        bj["slot"] = slot;
        bj["offset"] = p.plan.firing_offset(slot);
        blocks.push_back(std::move(bj));
        table.rows.push_back({static_cast<double>(slot), static_cast<double>(p.plan.firing_offset(slot)), r.w_poly(1.0),
                              r.tf_slow.num()[0], -r.tf_slow.den()[0]});
    }
    if (f.format == "csv") {
        emit(f, table_text(table));
    } else {
        Json j;
        j["partition"] = mrc::io::to_json(p.partition);
        j["plan"] = mrc::io::to_json(p.plan);
        j["resampled"] = std::move(blocks);
        emit(f, mrc::io::dump(j));
    }
    return 0;
}

int cmd_lift(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    const auto lifted = mrc::lifting::lift_interlaced_controller(p.pf, p.plan);
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"row", "col", "D"}, {}};
        for (Eigen::Index i = 0; i < lifted.D.rows(); ++i) {
            for (Eigen::Index k = 0; k < lifted.D.cols(); ++k) {
                t.rows.push_back({static_cast<double>(i), static_cast<double>(k), lifted.D(i, k)});
            }
        }
        emit(f, table_text(t));
    } else {
        emit(f, mrc::io::dump(mrc::io::to_json(lifted)));
    }
    return 0;
}

int cmd_verify(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> input(static_cast<std::size_t>(f.metaperiods * p.plan.n));
    for (auto& v : input) {
        v = dist(rng);
    }
    const auto lifted = mrc::lifting::lift_interlaced_controller(p.pf, p.plan);
    const auto report = mrc::lifting::compare_sequences(mrc::lifting::simulate_lifted(lifted, input),
                                                        mrc::lifting::switched_execute(p.pf, p.plan, input), 1e-9);
    const auto plant = plant_model(c);
    const auto loop = mrc::lifting::lifted_closed_loop(lifted, plant);
    const auto slow_loop = mrc::lifting::lifted_closed_loop(
        mrc::lifting::lift_controller(mrc::interlace::SingleRateSlow{p.pf, p.plan.n}, p.plan.n), plant);

    Json j;
    j["plan"] = mrc::io::to_json(p.plan);
    j["equivalence"] = mrc::io::to_json(report);
    j["closed_loop"] = {{"spectral_radius", mrc::io::round9(loop.spectral_radius)},
                        {"stability", mrc::lti::to_string(loop.stability)}};
    j["slow_single_rate_closed_loop"] = {{"spectral_radius", mrc::io::round9(slow_loop.spectral_radius)},
                                         {"stability", mrc::lti::to_string(slow_loop.stability)}};
    if (c.path_file) {
        const auto sc = build_scenario(c, p.pf.domain.period(), p.plan.n);
        j["feasibility"] = mrc::io::to_json(mrc::pathsim::feasibility_pretest(sc, p.pf));
    }
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"max_abs_error", "equivalent", "spectral_radius", "slow_spectral_radius"},
                                {{report.max_abs_error, report.equivalent() ? 1.0 : 0.0, loop.spectral_radius,
                                  slow_loop.spectral_radius}}};
        emit(f, table_text(t));
    } else {
        emit(f, mrc::io::dump(j));
    }
    return report.equivalent() ? 0 : kExitNumerical;
}

mrc::interlace::ControllerVariant variant_for(const std::string& impl, const Planned& p) {
    if (impl == "fast") {
        return mrc::interlace::SingleRateFast{p.pf};
    }
    if (impl == "slow") {
        return mrc::interlace::SingleRateSlow{p.pf, p.plan.n};
    }
    if (impl == "interlaced") {
        return mrc::interlace::Interlaced{p.pf, p.plan};
    }
    throw mrc::ValidationError(fmt::format("unknown implementation '{}' (fast, slow, interlaced)", impl));
}

int cmd_simulate(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    const auto sc = build_scenario(c, p.pf.domain.period(), p.plan.n);
    const auto r = mrc::pathsim::simulate(sc, variant_for(f.impl.value_or("interlaced"), p));
    if (f.format == "csv") {
        if (f.out) {
            r.write_csv(*f.out);
        } else {
            mrc::io::NumericTable t{{"t", "x", "y", "psi", "delta", "yawrate", "yawrate_ref", "cross_track"}, {}};
            for (std::size_t i = 0; i < r.t.size(); ++i) {
                t.rows.push_back({r.t[i], r.x[i], r.y[i], r.psi[i], r.delta[i], r.yaw_rate[i], r.yaw_rate_ref[i],
                                  r.cross_track[i]});
            }
            std::cout << table_text(t);
        }
    } else {
        Json j;
        j["implementation"] = r.implementation;
        j["samples"] = r.t.size();
        j["metrics"] = mrc::io::to_json(r.metrics);
        j["cost"] = mrc::io::to_json(r.cost);
        j["warnings"] = r.warnings;
        emit(f, mrc::io::dump(j));
    }
    return 0;
}

int cmd_compare(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    const auto sc = build_scenario(c, p.pf.domain.period(), p.plan.n);
    const auto results = mrc::pathsim::simulate_all(
        sc, {variant_for("fast", p), variant_for("interlaced", p), variant_for("slow", p)});
    const auto report = mrc::pathsim::compare(results);
    fs::create_directories(c.output_dir);
    for (const auto& r : results) {
        r.write_csv(c.output_dir / fmt::format("{}.csv", r.implementation));
    }
    Json j = mrc::io::to_json(report);
    j["cost_report"] = mrc::io::to_json(mrc::interlace::cost_report(p.pf, p.plan));
    mrc::io::write_json(c.output_dir / "comparison.json", j);
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"pair", "rms", "max"}, {}};
        for (std::size_t i = 0; i < report.deviations.size(); ++i) {
            t.rows.push_back({static_cast<double>(i), report.deviations[i].rms, report.deviations[i].max});
        }
        emit(f, table_text(t));
    } else {
        emit(f, mrc::io::dump(j));
    }
    return 0;
}

int cmd_cost(const Flags& f) {
    const auto c = settings(f);
    const auto p = build_plan(c);
    const auto report = mrc::interlace::cost_report(p.pf, p.plan);
    if (f.format == "csv") {
        mrc::io::NumericTable t{{"instant", "fast_mult", "fast_add", "slow_mult", "slow_add", "interlaced_mult",
                                 "interlaced_add"},
                                {}};
        const auto& fast = report.single_rate_fast.per_instant.front();
        for (std::size_t k = 0; k < report.interlaced.per_instant.size(); ++k) {
            const auto& s = report.single_rate_slow.per_instant[k];
            const auto& i = report.interlaced.per_instant[k];
            t.rows.push_back({static_cast<double>(k), static_cast<double>(fast.multiplies),
                              static_cast<double>(fast.adds), static_cast<double>(s.multiplies),
                              static_cast<double>(s.adds), static_cast<double>(i.multiplies),
                              static_cast<double>(i.adds)});
        }
        emit(f, table_text(t));
    } else {
        emit(f, mrc::io::dump(mrc::io::to_json(report)));
    }
    return 0;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "TOML or JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", f.seed, "Seed for randomized inputs");
    cmd->add_option("--out", f.out, "Write to this file instead of stdout");
    cmd->add_option("--controller", f.controller, "Controller transfer function (JSON)");
    cmd->add_option("--period", f.period, "Fast sample period T [s]");
    cmd->add_option("--method", f.method, "Discretization method")->check(CLI::IsMember({"mpz", "zoh"}));
    cmd->add_option("--snap-tol", f.snap_tol, "Snap roots this close to z = 1");
}

void add_plan_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--slow", f.slow, "Comma-separated slow block ids (explicit rule)");
    cmd->add_option("--rule", f.rule, "Classification rule")->check(CLI::IsMember({"explicit", "nyquist", "relative"}));
    cmd->add_option("--k", f.k, "Nyquist fraction for the nyquist rule");
    cmd->add_option("--ratio", f.ratio, "Separation ratio for the relative rule");
    cmd->add_option("--order", f.order, "Comma-separated slot order");
    cmd->add_option("--input", f.input, "Input strategy (I1, I2)");
    cmd->add_option("--output", f.output, "Output strategy (O1, O2)");
    cmd->add_option("--phase", f.phase, "Global slot phase offset");
    cmd->add_option("-N,--n", f.n, "Expected metaperiod factor");
}

void add_scenario_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("--plant", f.plant, "Plant transfer function (JSON)");
    cmd->add_flag("--formula-plant", f.formula_plant, "Use the bicycle-model plant");
    cmd->add_option("--path", f.path, "Waypoint CSV (x,y[,v])");
    cmd->add_option("--duration", f.duration, "Simulated time [s]");
    cmd->add_option("--speed", f.speed, "Constant speed [m/s]");
    cmd->add_option("--lookahead", f.lookahead, "Pure pursuit look-ahead [m]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multirate interlaced controller toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto* reduce = app.add_subcommand("reduce", "Balanced truncation and fast-pole removal of a continuous controller");
    add_common(reduce, f);
    reduce->add_option("--target-order", f.target_order, "Order after truncation");
    reduce->add_option("--slow-threshold", f.slow_threshold, "Split off real poles slower than this");
    reduce->add_flag("--keep-fast-pole", f.keep_fast_pole, "Do not drop the fastest real pole");

    auto* discretize = app.add_subcommand("discretize", "Discretize a continuous controller");
    add_common(discretize, f);

    auto* decompose = app.add_subcommand("decompose", "Parallel (partial fraction) form of a discrete controller");
    add_common(decompose, f);

    auto* plan = app.add_subcommand("plan", "Classify poles, build the interlacing plan and resampled blocks");
    add_common(plan, f);
    add_plan_options(plan, f);

    auto* lift = app.add_subcommand("lift", "Lifted quadruple of the interlaced controller");
    add_common(lift, f);
    add_plan_options(lift, f);

    auto* verify = app.add_subcommand("verify", "Lifted vs switched equivalence and closed-loop stability");
    add_common(verify, f);
    add_plan_options(verify, f);
    add_scenario_options(verify, f);
    verify->add_option("--metaperiods", f.metaperiods, "Metaperiods of random input")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Closed-loop path-tracking simulation");
    add_common(simulate, f);
    add_plan_options(simulate, f);
    add_scenario_options(simulate, f);
    simulate->add_option("--impl", f.impl, "fast, slow or interlaced")
        ->check(CLI::IsMember({"fast", "slow", "interlaced"}));

    auto* compare = app.add_subcommand("compare", "Simulate all implementations and compare trajectories");
    add_common(compare, f);
    add_plan_options(compare, f);
    add_scenario_options(compare, f);
    compare->add_option("--output-dir", f.output_dir, "Directory for result CSVs and the report");

    auto* cost = app.add_subcommand("cost", "Per-instant operation counts of each implementation");
    add_common(cost, f);
    add_plan_options(cost, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(f);
        if (discretize->parsed()) return cmd_discretize(f);
        if (decompose->parsed()) return cmd_decompose(f);
        if (plan->parsed()) return cmd_plan(f);
        if (lift->parsed()) return cmd_lift(f);
        if (verify->parsed()) return cmd_verify(f);
        if (simulate->parsed()) return cmd_simulate(f);
        if (compare->parsed()) return cmd_compare(f);
        if (cost->parsed()) return cmd_cost(f);
    } catch (const mrc::ValidationError& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kExitValidation;
    } catch (const mrc::NumericalError& e) {
        fmt::print(std::cerr, "numerical failure: {}\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kExitValidation;
    }
    return 0;
}
