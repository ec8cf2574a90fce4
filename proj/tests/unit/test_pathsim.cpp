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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "fixtures.hpp"
#include "mrc/errors.hpp"
#include "mrc/lifting/lifting.hpp"
#include "mrc/pathsim/pathsim.hpp"

using namespace mrc;
using namespace mrc::pathsim;
using namespace mrc::test;

namespace {

Path straight(double length = 200.0) { return Path({{0.0, 0.0, {}}, {length, 0.0, {}}}); }

Path circle(double radius, int points) {
    std::vector<Waypoint> w;
    for (int i = 0; i <= points; ++i) {
        const double a = 2.0 * std::numbers::pi * i / points;
        w.push_back({radius * std::sin(a), radius * (1.0 - std::cos(a)), {}});
    }
    return Path(w);
}

Scenario uturn_scenario() {
    Scenario sc(Path::read_csv(data_file("uturn.csv")));
    sc.plant = FixturePlant{nominal_plant()};
    sc.duration = 14.0;
    return sc;
}

}  // namespace

TEST_CASE("path geometry") {
    SUBCASE("validation") {
        CHECK_THROWS_AS(Path({{0.0, 0.0, {}}}), ValidationError);
        CHECK_THROWS_AS(Path({{0.0, 0.0, {}}, {0.0, 0.0, {}}}), ValidationError);
        CHECK_THROWS_AS(Path({{0.0, 0.0, 4.0}, {1.0, 0.0, {}}}), ValidationError);
        CHECK_THROWS_AS(Path({{0.0, 0.0, 4.0}, {1.0, 0.0, -1.0}}), ValidationError);
        CHECK_THROWS_AS(Path({{0.0, 0.0, {}}, {NAN, 0.0, {}}}), ValidationError);
    }
    SUBCASE("projection and arclength") {
        const Path p({{0.0, 0.0, 4.0}, {10.0, 0.0, 6.0}, {10.0, 10.0, 6.0}});
        CHECK(p.length() == doctest::Approx(20.0));
        const auto left = p.project(3.0, 2.0);
        CHECK(left.s == doctest::Approx(3.0));
        CHECK(left.offset == doctest::Approx(2.0));
        CHECK(p.project(3.0, -2.0).offset == doctest::Approx(-2.0));
        CHECK(p.project(12.0, 5.0).s == doctest::Approx(15.0));
        CHECK(p.project(12.0, 5.0).offset == doctest::Approx(-2.0));
        CHECK(p.point_at(25.0).y == doctest::Approx(10.0));
        CHECK(p.point_at(-1.0).x == 0.0);
        CHECK(p.heading_at(15.0) == doctest::Approx(std::numbers::pi / 2));
        CHECK(p.speed_at(5.0) == doctest::Approx(5.0));
        CHECK_THROWS_AS(straight().speed_at(1.0), ValidationError);
    }
    SUBCASE("synthetic U-turn matches the shipped fixture") {
        const Path generated = synthetic_uturn();
        const Path shipped = Path::read_csv(data_file("uturn.csv"));
        REQUIRE(generated.waypoints().size() == shipped.waypoints().size());
        for (std::size_t i = 0; i < shipped.waypoints().size(); ++i) {
            CHECK(generated.waypoints()[i].x == doctest::Approx(shipped.waypoints()[i].x).epsilon(1e-8));
            CHECK(generated.waypoints()[i].y == doctest::Approx(shipped.waypoints()[i].y).epsilon(1e-8));
        }
        CHECK(shipped.has_speeds());
    }
}

TEST_CASE("pure pursuit reference") {
    const double vx = 6.0;
    SUBCASE("on a straight line the reference is zero") {
        const auto cmd = pure_pursuit_ref({10.0, 0.0, 0.0}, straight(), 6.0, vx);
        CHECK(cmd.yaw_rate_ref == 0.0);
        CHECK(cmd.goal.x == doctest::Approx(16.0));
    }
    SUBCASE("goal straight to the left") {
        const Path up({{0.0, 0.0, {}}, {0.0, 50.0, {}}});
        const double lookahead = 5.0;
        const auto cmd = pure_pursuit_ref({0.0, 0.0, 0.0}, up, lookahead, vx);
        CHECK(cmd.yaw_rate_ref == doctest::Approx(2.0 * vx / lookahead));
        const auto right = pure_pursuit_ref({0.0, 0.0, std::numbers::pi}, up, lookahead, vx);
        CHECK(right.yaw_rate_ref == doctest::Approx(-2.0 * vx / lookahead));
    }
    SUBCASE("circle of radius R") {
        const double radius = 60.0;
        const double lookahead = radius / 10.0;
        const Path c = circle(radius, 20000);
        const auto cmd = pure_pursuit_ref({0.0, 0.0, 0.0}, c, lookahead, vx);
        const double chord = 2.0 * std::sin(lookahead / (2.0 * radius)) * vx / lookahead;
        CHECK(cmd.yaw_rate_ref == doctest::Approx(chord).epsilon(1e-5));
        CHECK(std::abs(cmd.yaw_rate_ref - vx / radius) <= 0.02 * vx / radius);
    }
    SUBCASE("leaving the corridor") {
        CHECK_THROWS_AS(pure_pursuit_ref({10.0, 20.0, 0.0}, straight(), 6.0, vx, 10.0), PathLostError);
        CHECK_THROWS_AS(pure_pursuit_ref({10.0, 0.0, 0.0}, straight(), 0.0, vx), ValidationError);
    }
}

TEST_CASE("closed-loop simulation") {
    const auto pf = lti::partial_fraction(discrete_controller());

    SUBCASE("straight path at constant speed stays at rest") {
        Scenario sc(straight());
        sc.plant = FixturePlant{nominal_plant()};
        sc.speed = 6.0;
        sc.duration = 3.0;
        const auto r = simulate(sc, interlace::Interlaced{pf, lane_keeping_plan(pf)});
        CHECK(r.t.size() == 300);
        for (std::size_t k = 0; k < r.t.size(); ++k) {
            CHECK(r.delta[k] == 0.0);
            CHECK(std::abs(r.cross_track[k]) <= 1e-12);
            CHECK(r.y[k] == 0.0);
        }
    }
    SUBCASE("runs are deterministic") {
        const auto sc = uturn_scenario();
        const interlace::Interlaced il{pf, lane_keeping_plan(pf)};
        const auto a = simulate(sc, il);
        const auto b = simulate(sc, il);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.delta == b.delta);
        CHECK(a.scenario == b.scenario);
    }
    SUBCASE("controller output replays through the switched executor") {
        const auto sc = uturn_scenario();
        const auto plan = lane_keeping_plan(pf);
        const auto r = simulate(sc, interlace::Interlaced{pf, plan});
        const auto replay = lifting::switched_execute(pf, plan, r.error);
        double worst = 0.0;
        for (std::size_t k = 0; k < r.delta.size(); ++k) {
            worst = std::max(worst, std::abs(replay[k] - r.delta[k]));
        }
        CHECK(worst <= 1e-10);
    }
    SUBCASE("halving the integration step barely moves the result") {
        auto sc = uturn_scenario();
        const interlace::Interlaced il{pf, lane_keeping_plan(pf)};
        const double coarse = simulate(sc, il).metrics.rms_cross_track;
        sc.substeps = 20;
        const double fine = simulate(sc, il).metrics.rms_cross_track;
        CHECK(std::abs(coarse - fine) <= 0.005 * fine);
    }
    SUBCASE("constant yaw-rate reference is tracked") {
        Scenario sc(straight(500.0));
        sc.plant = FixturePlant{nominal_plant()};
        sc.speed = 6.0;
        sc.duration = 10.0;
        sc.reference = ConstantYawRate{0.1};
        const auto r = simulate(sc, interlace::SingleRateFast{pf});
        CHECK(r.yaw_rate.front() == 0.0);
        CHECK(r.yaw_rate.back() == doctest::Approx(0.1).epsilon(0.01));
    }
    SUBCASE("plan and scenario must agree on N") {
        auto sc = uturn_scenario();
        sc.n = 4;
        CHECK_THROWS_AS(simulate(sc, interlace::Interlaced{pf, lane_keeping_plan(pf)}), ValidationError);
    }
    SUBCASE("controller period must match") {
        auto sc = uturn_scenario();
        sc.period = 0.02;
        CHECK_THROWS_AS(simulate(sc, interlace::SingleRateFast{pf}), ValidationError);
    }
    SUBCASE("speed source required") {
        Scenario sc(straight());
        sc.plant = FixturePlant{nominal_plant()};
        CHECK_THROWS_AS(simulate(sc, interlace::SingleRateFast{pf}), ValidationError);
    }
}

TEST_CASE("feasibility pretest") {
    const auto pf = lti::partial_fraction(discrete_controller());
    SUBCASE("N = 1 is the fast controller") {
        auto sc = uturn_scenario();
        sc.n = 1;
        const auto v = feasibility_pretest(sc, pf);
        CHECK(v.stable);
        CHECK(v.performance_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("lane-keeping setup passes") {
        const auto v = feasibility_pretest(uturn_scenario(), pf);
        CHECK(v.stable);
        CHECK(v.spectral_radius < 1.0);
        CHECK_FALSE(v.failure.has_value());
    }
    SUBCASE("very slow update fails") {
        auto sc = uturn_scenario();
        sc.n = 50;
        const auto v = feasibility_pretest(sc, pf);
        CHECK((!v.stable || v.performance_ratio > 2.0));
    }
}

TEST_CASE("comparison of implementations") {
    const auto pf = lti::partial_fraction(discrete_controller());
    const auto sc = uturn_scenario();
    const auto results = simulate_all(
        sc, {interlace::SingleRateFast{pf}, interlace::SingleRateSlow{pf, 3}, interlace::Interlaced{pf, lane_keeping_plan(pf)}});
    REQUIRE(results.size() == 3);

    SUBCASE("self comparison") {
        const auto rep = compare({results[0], results[0]});
        REQUIRE(rep.deviations.size() == 1);
        CHECK(rep.deviations[0].rms == 0.0);
        CHECK(rep.deviations[0].max == 0.0);
    }
    SUBCASE("interlaced sits closer to the fast controller than the slow one") {
        const auto rep = compare(results);
        CHECK(rep.deviations.size() == 3);
        const auto* il = rep.find("single_rate_fast", "interlaced");
        const auto* slow = rep.find("single_rate_fast", "single_rate_slow");
        REQUIRE(il != nullptr);
        REQUIRE(slow != nullptr);
        CHECK(il->rms < slow->rms);
        CHECK(rep.costs[2].worst_multiplies < rep.costs[0].worst_multiplies);
    }
    SUBCASE("different scenarios are rejected") {
        auto other = sc;
        other.substeps = 20;
        const auto r = simulate(other, interlace::SingleRateFast{pf});
        CHECK_THROWS_AS(compare({results[0], r}), ValidationError);
        CHECK_THROWS_AS(compare({}), ValidationError);
    }
}
