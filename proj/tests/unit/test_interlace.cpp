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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <doctest.h>

#include "fixtures.hpp"
#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"

using namespace mrc;
using namespace mrc::interlace;
using namespace mrc::test;
using lti::FirstOrderBlock;

namespace {

// Simulated step response of a SISO realization, held unit input.
std::vector<double> step_response(const lti::StateSpace& ss, std::size_t samples) {
    lti::Vector x = lti::Vector::Zero(ss.states());
    std::vector<double> y;
    for (std::size_t k = 0; k < samples; ++k) {
        y.push_back((ss.C * x + ss.D).value());
        x = ss.A * x + ss.B;
    }
    return y;
}

void check_partition(const PolePartition& part, const lti::ParallelForm& pf) {
    std::multiset<std::string> seen(part.slow.begin(), part.slow.end());
    seen.insert(part.fast.begin(), part.fast.end());
    const auto ids = pf.block_ids();
    CHECK(seen == std::multiset<std::string>(ids.begin(), ids.end()));
}

}  // namespace

TEST_CASE("classification") {
    const auto pf = lti::partial_fraction(discrete_controller());

    SUBCASE("explicit lane-keeping partition") {
        const auto part = classify_poles(pf, Explicit{{"b1", "b2", "b3"}});
        CHECK(part.slow == std::vector<std::string>{"b1", "b2", "b3"});
        CHECK(part.fast == std::vector<std::string>{"b45"});
        CHECK(part.rule_used == "explicit");
    }
    SUBCASE("Nyquist fraction also takes the complex pair as slow") {
        // |ln z| / T of 0.8887 + 0.0613i, from numpy: 13.4578 rad/s
        CHECK(equivalent_frequency({0.8887, 0.0613}, kPeriod) == doctest::Approx(13.457831284543396).epsilon(1e-12));
        const auto part = classify_poles(pf, NyquistFraction{5.0});
        CHECK(part.slow == std::vector<std::string>{"b1", "b2", "b3", "b45"});
        CHECK(part.fast.empty());
    }
    SUBCASE("relative separation") {
        const auto part = classify_poles(pf, RelativeSeparation{0.2});
        check_partition(part, pf);
        CHECK(std::find(part.fast.begin(), part.fast.end(), "b45") != part.fast.end());
    }
    SUBCASE("all fast") {
        lti::ParallelForm single;
        single.domain = lti::Domain::discrete(kPeriod);
        single.first_order.push_back({"b1", 1.0, 0.5});
        const auto part = classify_poles(single, Explicit{});
        CHECK(part.slow.empty());
        CHECK(part.fast == std::vector<std::string>{"b1"});
        CHECK_THROWS_AS(make_plan(part, {}, InputStrategy::I1, OutputStrategy::O1), ValidationError);
    }
    SUBCASE("pole at the origin is fast with a warning") {
        lti::ParallelForm pf0;
        pf0.domain = lti::Domain::discrete(kPeriod);
        pf0.first_order.push_back({"b1", 1.0, 0.0});
        const auto part = classify_poles(pf0, NyquistFraction{5.0});
        CHECK(part.fast == std::vector<std::string>{"b1"});
        CHECK_FALSE(part.warnings.empty());
    }
    SUBCASE("unknown explicit id") {
        CHECK_THROWS_AS(classify_poles(pf, Explicit{{"b9"}}), ValidationError);
    }
    SUBCASE("partitions are exhaustive and disjoint") {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 100; ++trial) {
            const auto r = random_parallel_form(rng, 1 + trial % 4, trial % 3, trial % 2);
            check_partition(classify_poles(r, NyquistFraction{uniform(rng, 1.0, 20.0)}), r);
            check_partition(classify_poles(r, RelativeSeparation{uniform(rng, 0.05, 1.0)}), r);
            std::set<std::string> chosen;
            for (const auto& id : r.block_ids()) {
                if (rng() % 2) {
                    chosen.insert(id);
                }
            }
            const auto part = classify_poles(r, Explicit{chosen});
            CHECK(std::set<std::string>(part.slow.begin(), part.slow.end()) == chosen);
            check_partition(part, r);
        }
    }
}

TEST_CASE("W polynomial") {
    CHECK(w_polynomial(1.0, 3) == Polynomial{1.0, 1.0, 1.0});
    const auto w2 = w_polynomial(0.9849, 3);
    CHECK(w2[1] == doctest::Approx(0.9849));
    CHECK(w2[0] == doctest::Approx(0.9700).epsilon(1e-3));
    CHECK(w_polynomial(0.0, 3) == Polynomial({1.0, 0.0, 0.0}));
    CHECK(w_polynomial(0.5, 1) == Polynomial::constant(1.0));
    CHECK_THROWS_AS(w_polynomial(0.5, 0), ValidationError);

    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 1000; ++trial) {
        const double alpha = uniform(rng, -1.2, 1.2);
        const int n = 1 + static_cast<int>(rng() % 6);
        const Polynomial lhs = Polynomial({1.0, -alpha}) * w_polynomial(alpha, n);
        const Polynomial rhs = Polynomial::monomial(static_cast<std::size_t>(n)) -
                               Polynomial::constant(std::pow(alpha, n));
        REQUIRE(lhs.degree() == rhs.degree());
        for (std::size_t i = 0; i <= rhs.degree(); ++i) {
            CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
        }
    }
}

TEST_CASE("resampling slow blocks") {
    struct Case {
        FirstOrderBlock block;
        double num;
        double pole;
    };
    // Reference blocks and their reference resampled forms at N = 3.
    const Case cases[] = {
        {{"b1", 0.1193, 1.0}, 0.358, 1.0},
        {{"b2", -0.02817, 0.9849}, -0.08324, 0.9553},
        {{"b3", 0.001037, 0.9695}, 0.003016, 0.9114},
    };
    for (const auto& c : cases) {
        CAPTURE(c.block.id);
        const auto r = resample_slow_block(c.block, kPeriod, 3);
        CHECK(r.n == 3);
        CHECK(r.tf_slow.domain() == lti::Domain::discrete(3 * kPeriod));
        const auto tf = r.tf_slow.normalized();
        REQUIRE(tf.den().degree() == 1);
        CHECK(tf.num()[0] == doctest::Approx(c.num).epsilon(1e-3));
        CHECK(-tf.den()[0] == doctest::Approx(c.pole).epsilon(1e-3));
        CHECK(r.w_poly == w_polynomial(c.block.pole, 3));
    }

    SUBCASE("pole magnitude, DC gain and held-input step response") {
        std::mt19937_64 rng(23);
        for (int trial = 0; trial < 200; ++trial) {
            const FirstOrderBlock b{"b1", uniform(rng, -2.0, 2.0), uniform(rng, -0.99, 0.99)};
            const int n = 2 + static_cast<int>(rng() % 5);
            const auto r = resample_slow_block(b, kPeriod, n);
            const auto poles = r.tf_slow.poles();
            REQUIRE(poles.size() == 1);
            CHECK(std::abs(std::abs(poles[0]) - std::pow(std::abs(b.pole), n)) <= 1e-12);
            const double dc_source = b.residue / (1.0 - b.pole);
            CHECK(std::abs(r.tf_slow.dc_gain() - dc_source) <= 1e-10 * std::max(1.0, std::abs(dc_source)));

            const auto fast = step_response(lti::realize(b, lti::Domain::discrete(kPeriod)), 10 * n);
            const auto slow = step_response(r.realization(), 10);
            for (int m = 0; m < 10; ++m) {
                CHECK(slow[m] == doctest::Approx(fast[m * n]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("plans") {
    const auto pf = lti::partial_fraction(discrete_controller());

    SUBCASE("lane-keeping plan") {
        const auto plan = lane_keeping_plan(pf);
        CHECK(plan.n == 3);
        CHECK(plan.slots == std::vector<std::string>{"b1", "b2", "b3"});
        CHECK(plan.firing_offset(1) == 0);
        CHECK(plan.firing_offset(2) == 1);
        CHECK(plan.firing_offset(3) == 2);
        CHECK_NOTHROW(validate_plan(plan, pf));
        CHECK(fast_block_ids(plan, pf) == std::vector<std::string>{"b45"});
    }
    SUBCASE("four-mode example keeps the requested order") {
        PolePartition part{{"b2", "b3", "b4"}, {"b1"}, "explicit", {}};
        const auto plan = make_plan(part, {"b4", "b2", "b3"}, InputStrategy::I1, OutputStrategy::O1);
        CHECK(plan.n == 3);
        CHECK(plan.slots == std::vector<std::string>{"b4", "b2", "b3"});
    }
    SUBCASE("one slow block degenerates to single rate") {
        PolePartition part{{"b1"}, {"b2"}, "explicit", {}};
        const auto plan = make_plan(part, {"b1"}, InputStrategy::I1, OutputStrategy::O1);
        CHECK(plan.n == 1);
        CHECK_FALSE(plan.warnings.empty());
    }
    SUBCASE("phase shifts every slot") {
        PolePartition part{{"b1", "b2", "b3"}, {}, "explicit", {}};
        const auto plan = make_plan(part, {"b1", "b2", "b3"}, InputStrategy::I1, OutputStrategy::O1, 4);
        CHECK(plan.phase == 1);
        CHECK(plan.firing_offset(1) == 1);
        CHECK(plan.firing_offset(3) == 0);
    }
    SUBCASE("invalid orders") {
        PolePartition part{{"b1", "b2"}, {}, "explicit", {}};
        CHECK_THROWS_AS(make_plan(part, {"b1"}, InputStrategy::I1, OutputStrategy::O1), ValidationError);
        CHECK_THROWS_AS(make_plan(part, {"b1", "b1"}, InputStrategy::I1, OutputStrategy::O1), ValidationError);
        CHECK_THROWS_AS(make_plan(part, {"b1", "b3"}, InputStrategy::I1, OutputStrategy::O1), ValidationError);
    }
    SUBCASE("second-order slow blocks are unsupported") {
        const auto part = classify_poles(pf, Explicit{{"b1", "b45"}});
        const auto plan = make_plan(part, {"b1", "b45"}, InputStrategy::I1, OutputStrategy::O1);
        CHECK_THROWS_AS(validate_plan(plan, pf), UnsupportedError);
    }
    SUBCASE("strategy names") {
        CHECK(parse_input_strategy("I2") == InputStrategy::I2);
        CHECK(parse_output_strategy("O-2") == OutputStrategy::O2);
        CHECK_THROWS_AS(parse_input_strategy("I3"), UnsupportedError);
        CHECK_THROWS_AS(parse_output_strategy("O3"), ValidationError);
    }
}

TEST_CASE("cost model") {
    const auto pf = lti::partial_fraction(discrete_controller());

    SUBCASE("single rate, whole controller as one block") {
        const auto c = cost_model(SingleRateFast{pf});
        REQUIRE(c.per_instant.size() == 1);
        CHECK(c.worst_multiplies == 11);
        CHECK(c.worst_adds == 10);
    }
    SUBCASE("lane-keeping interlaced plan") {
        const auto report = cost_report(pf, lane_keeping_plan(pf));
        CHECK(report.interlaced.per_instant.size() == 3);
        CHECK(report.interlaced.worst_multiplies == 9);
        CHECK(report.single_rate_fast.worst_multiplies == 11);
        CHECK(report.savings_ratio == doctest::Approx(2.0 / 11.0));
        CHECK(report.single_rate_slow.per_instant[0].multiplies == 11);
        CHECK(report.single_rate_slow.per_instant[1].multiplies == 0);
        CHECK(report.single_rate_slow.mean_multiplies == doctest::Approx(11.0 / 3.0));
    }
    SUBCASE("gain only") {
        lti::ParallelForm gain;
        gain.domain = lti::Domain::discrete(kPeriod);
        gain.direct = 3.0;
        const auto c = cost_model(SingleRateFast{gain});
        CHECK(c.worst_multiplies == 1);
        CHECK(c.worst_adds == 0);
    }
    SUBCASE("exact operation counts on random plans") {
        // Interlaced worst case = [direct] + Σ_fast (2 n_i + 1) + 3 against
        // 2 n + 1 for the single-rate controller; it is lower exactly when
        // [direct] + (fast block count) + 2 < 2 N.
        std::mt19937_64 rng(24);
        int lower = 0;
        int not_lower = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const int slow = 2 + static_cast<int>(rng() % 4);
            const int ff = static_cast<int>(rng() % 3);
            const int fs = static_cast<int>(rng() % 2);
            auto r = random_parallel_form(rng, slow, ff, fs);
            if (rng() % 4 == 0) {
                r.direct = 0.0;
            }
            std::vector<std::string> order;
            for (int i = 0; i < slow; ++i) {
                order.push_back(r.first_order[static_cast<std::size_t>(i)].id);
            }
            std::shuffle(order.begin(), order.end(), rng);
            const auto part = classify_poles(r, Explicit{{order.begin(), order.end()}});
            const auto out = rng() % 2 ? OutputStrategy::O1 : OutputStrategy::O2;
            const auto plan = make_plan(part, order, InputStrategy::I1, out);
            const auto report = cost_report(r, plan);

            const int direct = r.direct != 0.0 ? 1 : 0;
            const int fast_blocks = ff + fs;
            const int fast_states = ff + 2 * fs;
            CHECK(report.interlaced.worst_multiplies == direct + 2 * fast_states + fast_blocks + 3);
            CHECK(report.single_rate_fast.worst_multiplies == 2 * (fast_states + slow) + 1);
            for (const auto& c : report.interlaced.per_instant) {
                CHECK(c.multiplies >= 0);
                CHECK(c.adds >= 0);
            }
            const bool saves = report.interlaced.worst_multiplies < report.single_rate_fast.worst_multiplies;
            CHECK(saves == (direct + fast_blocks + 2 < 2 * slow));
            (saves ? lower : not_lower) += 1;
        }
        CHECK(lower > 0);
        CHECK(not_lower > 0);
    }
    SUBCASE("two slow blocks with two fast blocks cost more than single rate") {
        const auto part = classify_poles(pf, Explicit{{"b1", "b2"}});
        const auto plan = make_plan(part, {"b1", "b2"}, InputStrategy::I1, OutputStrategy::O1);
        const auto report = cost_report(pf, plan);
        CHECK(report.interlaced.worst_multiplies == 12);
        CHECK(report.single_rate_fast.worst_multiplies == 11);
        CHECK(report.savings_ratio < 0.0);
    }
}
