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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "mrc/lifting/lifting.hpp"
#include "mrc/lti/balanced_truncation.hpp"
#include "mrc/lti/discretize.hpp"
#include "mrc/lti/reduction.hpp"
#include "mrc/pathsim/pathsim.hpp"
#include "mrc/vehicle/vehicle.hpp"

using namespace mrc;
using namespace mrc::test;
using interlace::InputStrategy;
using interlace::OutputStrategy;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool rel_close(double got, double want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

// Every expected root has a computed root within tol; reports the worst distance.
bool roots_match(const std::vector<Complex>& got, const std::vector<Complex>& want, double tol, double& worst) {
    worst = 0.0;
    if (got.size() != want.size()) {
        worst = INFINITY;
        return false;
    }
    for (Complex w : want) {
        double best = INFINITY;
        for (Complex g : got) {
            best = std::min(best, std::abs(g - w));
        }
        worst = std::max(worst, best);
    }
    return worst <= tol;
}

Outcome partial_fraction_fixture() {
    constexpr double tol = 1e-3;
    const auto pf = lti::partial_fraction(discrete_controller());
    if (pf.first_order.size() != 3 || pf.second_order.size() != 1) {
        return {false, fmt::format("unexpected block structure {}", fmt::join(pf.block_ids(), ","))};
    }
    const auto& q = pf.second_order[0];
    const struct {
        const char* name;
        double got;
        double want;
    } items[] = {
        {"direct", pf.direct, 2.0107},
        {"r1", pf.first_order[0].residue, 0.1193},
        {"r2", pf.first_order[1].residue, -0.02817},
        {"r3", pf.first_order[2].residue, 0.001037},
        {"quad num z", q.num[1], -0.0003399},
        {"quad num 1", q.num[0], 0.0001023},
        {"quad den z", q.den[1], -1.777},
        {"quad den 1", q.den[0], 0.7935},
    };
    bool pass = true;
    std::vector<std::string> misses;
    for (const auto& it : items) {
        if (!rel_close(it.got, it.want, tol)) {
            pass = false;
            misses.push_back(fmt::format("{} {:.6g} vs {:.6g}", it.name, it.got, it.want));
        }
    }
    return {pass, pass ? "direct, residues and quadratic block within 1e-3 relative"
                       : fmt::format("{} of 8 values off: {}", misses.size(), fmt::join(misses, "; "))};
}

// Largest coefficient gap between z^2 + b z + c and the closest quadratic
// formed from a computed conjugate pair.
double quadratic_factor_gap(const std::vector<Complex>& roots, double b, double c) {
    double best = INFINITY;
    for (Complex r : roots) {
        if (r.imag() > 0.0) {
            best = std::min(best, std::max(std::abs(-2.0 * r.real() - b), std::abs(std::norm(r) - c)));
        }
    }
    return best;
}

Outcome discretization_fixture() {
    constexpr double tol = 1e-3;
    const auto cd = lti::discretize_mpz(reduced_controller(), kPeriod, lti::kDefaultSnapTolerance);
    const std::vector<Complex> poles{{1.0, 0.0}, {0.9849, 0.0}, {0.9695, 0.0}, {0.8887, 0.0613}, {0.8887, -0.0613}};
    double pole_err = 0.0;
    const bool p = roots_match(cd.poles(), poles, tol, pole_err);
    const auto snapped_poles =
        lti::snap_to_unity(lti::matched_roots(reduced_controller(), kPeriod).poles, lti::kDefaultSnapTolerance);
    const bool snapped = std::any_of(snapped_poles.begin(), snapped_poles.end(),
                                     [](Complex r) { return r == Complex{1.0, 0.0}; });

    // Reference zeros are given as one real root and two quadratic factors.
    const auto zeros = cd.zeros();
    double real_err = INFINITY;
    for (Complex z : zeros) {
        if (z.imag() == 0.0) {
            real_err = std::min(real_err, std::abs(z.real() - 0.9605));
        }
    }
    const double gap1 = quadratic_factor_gap(zeros, -1.947, 0.9481);
    const double gap2 = quadratic_factor_gap(zeros, -1.778, 0.7941);
    double root_err = 0.0;
    std::vector<Complex> reference_zeros{{0.9605, 0.0}};
    for (const auto& q : {Polynomial{1.0, -1.947, 0.9481}, Polynomial{1.0, -1.778, 0.7941}}) {
        for (Complex r : q.roots()) {
            reference_zeros.push_back(r);
        }
    }
    roots_match(zeros, reference_zeros, tol, root_err);
    const bool z = zeros.size() == 5 && real_err <= tol && gap1 <= tol && gap2 <= tol;
    return {p && z && snapped,
            fmt::format("worst pole distance {:.2e}, unit pole {}; real zero off by {:.2e}, quadratic zero factors off "
                        "by {:.2e} and {:.2e} (root distance {:.2e}, the first pair is nearly double)",
                        pole_err, snapped ? "snapped" : "missing", real_err, gap1, gap2, root_err)};
}

Outcome resampling_fixture() {
    constexpr double tol = 1e-3;
    bool pass = true;
    std::vector<std::string> misses;
    const struct {
        lti::FirstOrderBlock block;
        Polynomial w;
        double num;
        double pole;
    } cases[] = {
        {{"b1", 0.1193, 1.0}, {1.0, 1.0, 1.0}, 0.358, 1.0},
        {{"b2", -0.02817, 0.9849}, {1.0, 0.9849, 0.97}, -0.08324, 0.9553},
        {{"b3", 0.001037, 0.9695}, {1.0, 0.9695, 0.94}, 0.003016, 0.9114},
    };
    for (const auto& c : cases) {
        const auto r = interlace::resample_slow_block(c.block, kPeriod, 3);
        for (std::size_t p = 0; p <= 2; ++p) {
            if (!rel_close(r.w_poly[p], c.w[p], tol)) {
                pass = false;
                misses.push_back(fmt::format("{} W[{}]", c.block.id, p));
            }
        }
        const auto tf = r.tf_slow.normalized();
        if (tf.den().degree() != 1 || !rel_close(tf.num()[0], c.num, tol) || !rel_close(-tf.den()[0], c.pole, tol)) {
            pass = false;
            misses.push_back(fmt::format("{} block {:.6g}/(z3-{:.6g})", c.block.id, tf.num()[0], -tf.den()[0]));
        }
    }
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double alpha = uniform(rng, -1.0, 1.0);
        const int n = 1 + static_cast<int>(rng() % 12);
        const Polynomial lhs = Polynomial{1.0, -alpha} * interlace::w_polynomial(alpha, n);
        const Polynomial rhs = Polynomial::monomial(static_cast<std::size_t>(n)) -
                               Polynomial::constant(std::pow(alpha, n));
        for (std::size_t p = 0; p <= static_cast<std::size_t>(n); ++p) {
            worst = std::max(worst, std::abs(lhs[p] - rhs[p]));
        }
    }
    if (worst > 1e-12) {
        pass = false;
        misses.push_back(fmt::format("identity error {:.2e}", worst));
    }
    return {pass, pass ? fmt::format("W polynomials and blocks within 1e-3, identity error {:.1e} over 1000 draws", worst)
                       : fmt::format("{}", fmt::join(misses, "; "))};
}

Outcome lifting_equivalence() {
    constexpr double tol = 1e-9;
    constexpr int metaperiods = 80;
    std::mt19937_64 rng(4);
    std::vector<lti::ParallelForm> controllers{lti::partial_fraction(discrete_controller())};
    for (int i = 0; i < 24; ++i) {
        controllers.push_back(random_parallel_form(rng, 1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 3),
                                                   static_cast<int>(rng() % 2)));
    }
    int runs = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < controllers.size(); ++c) {
        const auto& pf = controllers[c];
        std::vector<std::string> slow;
        for (const auto& b : pf.first_order) {
            if (c == 0 ? b.id != "b45" : b.pole > 0.9) {
                slow.push_back(b.id);
            }
        }
        const auto part = interlace::classify_poles(pf, interlace::Explicit{{slow.begin(), slow.end()}});
        for (auto in : {InputStrategy::I1, InputStrategy::I2}) {
            for (auto out : {OutputStrategy::O1, OutputStrategy::O2}) {
                const auto plan = interlace::make_plan(part, slow, in, out);
                const auto e = random_signal(rng, static_cast<std::size_t>(metaperiods * plan.n));
                const auto lifted = lifting::lift_interlaced_controller(pf, plan);
                const auto r = lifting::compare_sequences(lifting::simulate_lifted(lifted, e),
                                                          lifting::switched_execute(pf, plan, e), tol);
                ++runs;
                worst = std::max(worst, r.max_abs_error);
                if (!r.equivalent()) {
                    return {false, fmt::format("controller {} {}/{} diverges at sample {} (|err| {:.2e})", c,
                                               interlace::to_string(in), interlace::to_string(out),
                                               *r.first_divergence, r.max_abs_error)};
                }
            }
        }
    }
    return {true, fmt::format("{} runs ({} controllers x 4 strategies, {} metaperiods), max |err| {:.2e}", runs,
                              controllers.size(), metaperiods, worst)};
}

pathsim::Scenario uturn() {
    pathsim::Scenario sc(pathsim::Path::read_csv(data_file("uturn.csv")));
    sc.plant = pathsim::FixturePlant{nominal_plant()};
    sc.duration = 14.0;
    return sc;
}

Outcome stability() {
    const auto pf = lti::partial_fraction(discrete_controller());
    const auto lifted = lifting::lift_controller(interlace::Interlaced{pf, lane_keeping_plan(pf)}, 3);
    const auto loop = lifting::lifted_closed_loop(lifted, lti::tf_to_ss(nominal_plant()));
    const auto verdict = pathsim::feasibility_pretest(uturn(), pf);
    return {loop.spectral_radius < 1.0 && verdict.stable,
            fmt::format("interlaced lifted radius {:.9f}; slow single-rate radius {:.9f}, pretest {}",
                        loop.spectral_radius, verdict.spectral_radius,
                        verdict.stable ? fmt::format("passed (rms ratio {:.3f})", verdict.performance_ratio)
                                       : verdict.failure.value_or("failed"))};
}

Outcome trajectory_overlap() {
    const auto pf = lti::partial_fraction(discrete_controller());
    const auto results = pathsim::simulate_all(uturn(), {interlace::SingleRateFast{pf}, interlace::SingleRateSlow{pf, 3},
                                                         interlace::Interlaced{pf, lane_keeping_plan(pf)}});
    const auto rep = pathsim::compare(results);
    const auto* il = rep.find("single_rate_fast", "interlaced");
    const auto* slow = rep.find("single_rate_fast", "single_rate_slow");
    const bool pass = il->rms <= 0.05 && il->max <= 0.15 && il->rms < slow->rms;
    return {pass, fmt::format("fast vs interlaced rms {:.4f} m max {:.4f} m; fast vs slow rms {:.4f} m", il->rms,
                              il->max, slow->rms)};
}

Outcome computation_saving() {
    const auto pf = lti::partial_fraction(discrete_controller());
    const auto rep = interlace::cost_report(pf, lane_keeping_plan(pf));
    const bool fixture = rep.interlaced.worst_multiplies == 9 && rep.single_rate_fast.worst_multiplies == 11;
    std::string detail = fmt::format("lane keeping {} vs {} multiplies, savings {:.3f}",
                                     rep.interlaced.worst_multiplies, rep.single_rate_fast.worst_multiplies,
                                     rep.savings_ratio);

    // Every plan with N >= 2 over the lane-keeping controller and random ones.
    std::mt19937_64 rng(7);
    std::vector<lti::ParallelForm> controllers{pf};
    for (int i = 0; i < 200; ++i) {
        controllers.push_back(random_parallel_form(rng, 2 + static_cast<int>(rng() % 5), static_cast<int>(rng() % 4),
                                                   static_cast<int>(rng() % 3)));
    }
    int plans = 0;
    int violations = 0;
    std::string first;
    for (const auto& c : controllers) {
        const auto& blocks = c.first_order;
        const auto count = blocks.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
            std::vector<std::string> slow;
            for (std::size_t b = 0; b < count; ++b) {
                if (mask >> b & 1U) {
                    slow.push_back(blocks[b].id);
                }
            }
            if (slow.size() < 2) {
                continue;
            }
            const auto part = interlace::classify_poles(c, interlace::Explicit{{slow.begin(), slow.end()}});
            const auto r = interlace::cost_report(c, interlace::make_plan(part, slow, InputStrategy::I1,
                                                                          OutputStrategy::O1));
            ++plans;
            if (r.interlaced.worst_multiplies >= r.single_rate_fast.worst_multiplies) {
                if (violations++ == 0) {
                    first = fmt::format("slow {{{}}} of {} blocks: {} vs {}", fmt::join(slow, ","),
                                        c.block_ids().size(), r.interlaced.worst_multiplies,
                                        r.single_rate_fast.worst_multiplies);
                }
            }
        }
    }
    detail += fmt::format("; invariant broken by {} of {} generated plans", violations, plans);
    if (violations) {
        detail += fmt::format(" (first: {})", first);
    }
    return {fixture && violations == 0, detail};
}

Outcome balanced_truncation() {
    const auto c0 = full_order_controller();
    const lti::ReductionOptions opts;
    const auto split = lti::split_slow_poles(c0, opts.slow_pole_threshold);
    const auto bt = lti::balanced_truncate(lti::tf_to_ss(split.rest), opts.target_order - split.slow_poles.size());
    bool monotone = true;
    for (std::size_t i = 1; i < bt.hankel_values.size(); ++i) {
        monotone = monotone && bt.hankel_values[i] <= bt.hankel_values[i - 1];
    }
    const auto grid = lti::logspace(1e-3, 1e5, 4000);
    const double err = lti::max_error_on_grid(split.rest, lti::ss_to_tf(bt.reduced), grid);
    const bool bounded = err <= bt.error_bound * (1.0 + 1e-9);

    const auto reduced = lti::reduce_controller(c0, opts).reduced;
    const auto band = lti::logspace(0.1, 100.0, 1000);
    const auto a = lti::freq_response(reduced, band);
    const auto b = lti::freq_response(reduced_controller(), band);
    double worst_db = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst_db = std::max(worst_db, std::abs(db(std::abs(a[i])) - db(std::abs(b[i]))));
    }
    return {monotone && bounded && worst_db <= 1.0,
            fmt::format("Hankel values {}; grid error {:.3e} vs bound {:.3e}; {:.3f} dB from the reference reduced "
                        "controller",
                        monotone ? "non-increasing" : "NOT monotone", err, bt.error_bound, worst_db)};
}

Outcome vehicle_consistency() {
    std::mt19937_64 rng(9);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const vehicle::VehicleParams p{uniform(rng, 800.0, 3000.0), uniform(rng, 0.8, 2.0), uniform(rng, 0.8, 2.0),
                                       uniform(rng, 4e4, 2e5),      uniform(rng, 4e4, 2e5), uniform(rng, 1000.0, 5000.0)};
        const double vx = uniform(rng, 1.0, 40.0);
        worst = std::max(worst,
                         lti::relative_tf_error(vehicle::lateral_tf(p, vx), lti::ss_to_tf(vehicle::lateral_ss(p, vx))));
    }
    const auto nominal = vehicle::VehicleParams::test_bed();
    int stable = 0;
    int grid = 0;
    for (int k = 0; k <= 60; ++k) {
        const double vx = 4.0 + 0.1 * k;
        ++grid;
        if (lti::is_stable(vehicle::lateral_tf(nominal, vx)) == lti::Stability::Stable) {
            ++stable;
        }
    }
    const double mismatch = lti::relative_tf_error(vehicle::lateral_tf(nominal, 6.0), nominal_plant());
    return {worst <= 1e-8 && stable == grid,
            fmt::format("tf vs state-space {:.2e} over 50 draws; stable at {}/{} speeds; fixture plant differs from "
                        "the formula at 6 m/s by {:.2f} (not asserted)",
                        worst, stable, grid, mismatch)};
}

}  // namespace

int main() {
    const struct {
        int id;
        const char* name;
        double budget;  // seconds, 0 = none
        std::function<Outcome()> run;
    } criteria[] = {
        {1, "partial-fraction fixture", 1.0, partial_fraction_fixture},
        {2, "discretization fixture", 0.0, discretization_fixture},
        {3, "resampling fixture", 0.0, resampling_fixture},
        {4, "lifting equivalence", 30.0, lifting_equivalence},
        {5, "closed-loop stability", 0.0, stability},
        {6, "trajectory overlap", 60.0, trajectory_overlap},
        {7, "computation saving", 0.0, computation_saving},
        {8, "balanced truncation", 0.0, balanced_truncation},
        {9, "vehicle-model consistency", 0.0, vehicle_consistency},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format("threw: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0.0 && secs > c.budget) {
            o.pass = false;
            o.detail += fmt::format("; over the {:.0f} s budget", c.budget);
        }
        failed += o.pass ? 0 : 1;
        fmt::print("{} {} {} ({:.3f} s): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
    }
    fmt::print("{}/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
