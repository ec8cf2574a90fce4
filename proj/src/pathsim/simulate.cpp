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
#include <functional>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "mrc/io/csv.hpp"
#include "mrc/lifting/lifting.hpp"
#include "mrc/pathsim/pathsim.hpp"

namespace mrc::pathsim {

namespace {

constexpr double kBlowUp = 1e6;

using lti::Matrix;
using lti::StateSpace;
using lti::Vector;

// Executes a controller variant one fast instant at a time.
class ControllerRunner {
public:
    ControllerRunner(const interlace::ControllerVariant& v, double period) {
        const auto check_period = [&](const interlace::ParallelForm& pf) {
            if (!pf.domain.is_discrete() || std::abs(pf.domain.period() - period) > 1e-12 * period) {
                throw ValidationError(fmt::format("controller period does not match the scenario period {}", period));
            }
        };
        if (const auto* f = std::get_if<interlace::SingleRateFast>(&v)) {
            check_period(f->controller);
            ss_ = lti::realize(f->controller);
            n_ = 1;
        } else if (const auto* s = std::get_if<interlace::SingleRateSlow>(&v)) {
            check_period(s->controller);
            ss_ = interlace::resample_held_input(lti::realize(s->controller), s->n);
            n_ = s->n;
        } else {
            const auto& il = std::get<interlace::Interlaced>(v);
            check_period(il.controller);
            exec_.emplace(il.controller, il.plan);
        }
        if (ss_) {
            x_ = Vector::Zero(ss_->states());
        }
    }

    double step(double e) {
        if (exec_) {
            return exec_->step(e);
        }
        if (k_ % n_ == 0) {
            held_ = (ss_->C * x_)(0, 0) + ss_->D(0, 0) * e;
            x_ = ss_->A * x_ + ss_->B * e;
        }
        ++k_;
        return held_;
    }

private:
    std::optional<StateSpace> ss_;
    std::optional<lifting::SwitchedExecutor> exec_;
    Vector x_;
    int n_ = 1;
    long k_ = 0;
    double held_ = 0.0;
};

double rms(const std::vector<double>& v) {
    if (v.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

// Plant state + pose, integrated together.
struct PlantState {
    Vector xp;
    vehicle::Pose pose;
};

}  // namespace

void Scenario::validate() const {
    if (!(period > 0.0) || !(duration > 0.0)) {
        throw ValidationError("scenario period and duration must be positive");
    }
    if (n < 1) {
        throw ValidationError("scenario N must be at least 1");
    }
    if (substeps < 1) {
        throw ValidationError("plant substeps must be at least 1");
    }
    if (speed && !(*speed > 0.0)) {
        throw ValidationError("scenario speed must be positive");
    }
    if (!speed && !path.has_speeds()) {
        throw ValidationError("scenario needs a constant speed or a path with speeds");
    }
    if (!(nominal_speed > 0.0)) {
        throw ValidationError("nominal speed must be positive");
    }
    if (const auto* p = std::get_if<PursuitReference>(&reference)) {
        if (!(p->lookahead > 0.0) || !(p->corridor > 0.0)) {
            throw ValidationError("look-ahead and corridor must be positive");
        }
    }
    if (steering_limit && !(*steering_limit > 0.0)) {
        throw ValidationError("steering limit must be positive");
    }
    if (const auto* f = std::get_if<FixturePlant>(&plant)) {
        if (!f->tf.domain().is_continuous() || !f->tf.is_proper()) {
            throw ValidationError("fixture plant must be a proper continuous transfer function");
        }
    } else {
        std::get<FormulaPlant>(plant).params.validate();
    }
}

StateSpace Scenario::plant_model(double vx) const {
    if (const auto* f = std::get_if<FixturePlant>(&plant)) {
        return lti::tf_to_ss(f->tf);
    }
    return vehicle::lateral_ss(std::get<FormulaPlant>(plant).params, vx);
}

std::string Scenario::fingerprint() const {
    std::string s = fmt::format("T={:.17g};N={};dur={:.17g};sub={};int={};", period, n, duration, substeps,
                                static_cast<int>(integration));
    if (const auto* p = std::get_if<PursuitReference>(&reference)) {
        s += fmt::format("pursuit({:.17g},{:.17g});", p->lookahead, p->corridor);
    } else {
        s += fmt::format("const({:.17g});", std::get<ConstantYawRate>(reference).value);
    }
    s += speed ? fmt::format("v={:.17g};", *speed) : std::string("v=path;");
    s += fmt::format("vnom={:.17g};", nominal_speed);
    if (steering_limit) {
        s += fmt::format("sat={:.17g};", *steering_limit);
    }
    if (const auto* f = std::get_if<FixturePlant>(&plant)) {
        s += fmt::format("fixture({:.17g}/{:.17g});", fmt::join(f->tf.num().coeffs(), ","),
                         fmt::join(f->tf.den().coeffs(), ","));
    } else {
        const auto& q = std::get<FormulaPlant>(plant).params;
        s += fmt::format("formula({:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g});", q.m, q.lf, q.lr, q.c_alpha_f,
                         q.c_alpha_r, q.iz);
    }
    std::string pts;
    for (const auto& w : path.waypoints()) {
        pts += fmt::format("{:.17g},{:.17g},{:.17g};", w.x, w.y, w.v.value_or(0.0));
    }
    s += fmt::format("path={}:{:016x}", path.waypoints().size(), std::hash<std::string>{}(pts));
    return s;
}

Metrics compute_metrics(const SimResult& r) {
    Metrics m;
    m.rms_cross_track = rms(r.cross_track);
    for (double c : r.cross_track) {
        m.max_cross_track = std::max(m.max_cross_track, std::abs(c));
    }
    m.rms_yaw_rate_error = rms(r.error);
    return m;
}

std::string variant_name(const interlace::ControllerVariant& v) {
    switch (v.index()) {
        case 0:
            return "single_rate_fast";
        case 1:
            return "single_rate_slow";
        default:
            return "interlaced";
    }
}

SimResult simulate(const Scenario& sc, const interlace::ControllerVariant& controller) {
    sc.validate();
    if (const auto* il = std::get_if<interlace::Interlaced>(&controller); il != nullptr && il->plan.n != sc.n) {
        throw ValidationError(fmt::format("plan N = {} but the scenario uses N = {}", il->plan.n, sc.n));
    }
    ControllerRunner runner(controller, sc.period);
    const bool formula = std::holds_alternative<FormulaPlant>(sc.plant);
    const auto steps = static_cast<std::size_t>(std::llround(sc.duration / sc.period));
    const double h = sc.period / sc.substeps;

    SimResult r;
    r.implementation = variant_name(controller);
    r.scenario = sc.fingerprint();
    r.cost = interlace::cost_model(controller);
    for (auto* v : {&r.t, &r.x, &r.y, &r.psi, &r.delta, &r.yaw_rate, &r.yaw_rate_ref, &r.cross_track, &r.error}) {
        v->reserve(steps);
    }

    std::optional<double> model_speed;
    StateSpace model = sc.plant_model(sc.speed.value_or(sc.nominal_speed));
    StateSpace sampled = model;  // exact substep model for ExactZoh
    PlantState st{Vector::Zero(model.states()), {sc.path.waypoints().front().x, sc.path.waypoints().front().y,
                                                 sc.path.heading_at(0.0)}};
    const auto beta_of = [&](const Vector& xp) { return formula ? xp(0) : 0.0; };
    double delta = 0.0;
    bool warned_beta = false;

    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * sc.period;
        const auto proj = sc.path.project(st.pose.x, st.pose.y);
        const double vx = sc.speed ? *sc.speed : sc.path.speed_at(proj.s);
        if (!model_speed || (formula && *model_speed != vx)) {
            model = sc.plant_model(vx);
            if (sc.integration == PlantIntegration::ExactZoh) {
                sampled = lti::discretize_zoh(model, h);
            }
            model_speed = vx;
        }
        const double yaw_rate = (model.C * st.xp)(0, 0) + model.D(0, 0) * delta;
        double ref = 0.0;
        if (const auto* p = std::get_if<PursuitReference>(&sc.reference)) {
            ref = pure_pursuit_ref(st.pose, sc.path, p->lookahead, vx, p->corridor).yaw_rate_ref;
        } else {
            ref = std::get<ConstantYawRate>(sc.reference).value;
        }
        const double e = ref - yaw_rate;
        delta = runner.step(e);
        if (sc.steering_limit) {
            delta = std::clamp(delta, -*sc.steering_limit, *sc.steering_limit);
        }

        r.t.push_back(t);
        r.x.push_back(st.pose.x);
        r.y.push_back(st.pose.y);
        r.psi.push_back(st.pose.psi);
        r.delta.push_back(delta);
        r.yaw_rate.push_back(yaw_rate);
        r.yaw_rate_ref.push_back(ref);
        r.cross_track.push_back(proj.offset);
        r.error.push_back(e);

        for (int i = 0; i < sc.substeps; ++i) {
            if (sc.integration == PlantIntegration::Rk4) {
                const auto deriv = [&](const PlantState& s) {
                    PlantState d;
                    d.xp = model.A * s.xp + model.B * delta;
                    const double rate = (model.C * s.xp)(0, 0) + model.D(0, 0) * delta;
                    d.pose = vehicle::pose_rate(s.pose, beta_of(s.xp), rate, vx);
                    return d;
                };
                const auto shifted = [](const PlantState& s, const PlantState& d, double dt) {
                    return PlantState{s.xp + dt * d.xp,
                                      {s.pose.x + dt * d.pose.x, s.pose.y + dt * d.pose.y, s.pose.psi + dt * d.pose.psi}};
                };
                const PlantState k1 = deriv(st);
                const PlantState k2 = deriv(shifted(st, k1, h / 2));
                const PlantState k3 = deriv(shifted(st, k2, h / 2));
                const PlantState k4 = deriv(shifted(st, k3, h));
                st.xp += h / 6 * (k1.xp + 2 * k2.xp + 2 * k3.xp + k4.xp);
                st.pose.x += h / 6 * (k1.pose.x + 2 * k2.pose.x + 2 * k3.pose.x + k4.pose.x);
                st.pose.y += h / 6 * (k1.pose.y + 2 * k2.pose.y + 2 * k3.pose.y + k4.pose.y);
                st.pose.psi += h / 6 * (k1.pose.psi + 2 * k2.pose.psi + 2 * k3.pose.psi + k4.pose.psi);
            } else {
                vehicle::LateralState ls{beta_of(st.xp), (model.C * st.xp)(0, 0) + model.D(0, 0) * delta, st.pose};
                st.pose = vehicle::integrate_pose(ls, vx, h).pose;
                st.xp = sampled.A * st.xp + sampled.B * delta;
            }
        }

        const bool finite = st.xp.allFinite() && std::isfinite(st.pose.x) && std::isfinite(st.pose.y) &&
                            std::isfinite(st.pose.psi);
        const double biggest = std::max({st.xp.size() ? st.xp.cwiseAbs().maxCoeff() : 0.0, std::abs(st.pose.x),
                                         std::abs(st.pose.y), std::abs(st.pose.psi), std::abs(delta)});
        if (!finite || biggest > kBlowUp) {
            throw NumericalError(fmt::format("{}: state blew up at t = {:.3f} s (max |state| = {:.3g})",
                                             r.implementation, t + sc.period, biggest));
        }
        if (!warned_beta && std::abs(beta_of(st.xp)) > vehicle::kSmallAngleLimit) {
            r.warnings.push_back(fmt::format("sideslip exceeds {} rad at t = {:.3f} s; linear model is outside its range",
                                             vehicle::kSmallAngleLimit, t + sc.period));
            warned_beta = true;
        }
    }
    r.metrics = compute_metrics(r);
    return r;
}

void SimResult::write_csv(const std::filesystem::path& file) const {
    io::NumericTable table;
    table.header = {"t", "x", "y", "psi", "delta", "yawrate", "yawrate_ref", "cross_track"};
    for (std::size_t i = 0; i < t.size(); ++i) {
        table.rows.push_back({t[i], x[i], y[i], psi[i], delta[i], yaw_rate[i], yaw_rate_ref[i], cross_track[i]});
    }
    io::write_numeric_csv(file, table);
}

FeasibilityVerdict feasibility_pretest(const Scenario& sc, const interlace::ParallelForm& controller) {
    sc.validate();
    FeasibilityVerdict v;
    const auto lifted = lifting::lift_controller(interlace::SingleRateSlow{controller, sc.n}, sc.n);
    v.spectral_radius = lifting::lifted_closed_loop(lifted, sc.plant_model(sc.nominal_speed)).spectral_radius;
    try {
        const auto fast = simulate(sc, interlace::SingleRateFast{controller});
        const auto slow = simulate(sc, interlace::SingleRateSlow{controller, sc.n});
        const double f = fast.metrics.rms_cross_track;
        const double s = slow.metrics.rms_cross_track;
        v.performance_ratio = f > 0.0 ? s / f : (s > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    } catch (const NumericalError& e) {
        v.failure = e.what();
        v.performance_ratio = std::numeric_limits<double>::infinity();
    }
    v.stable = !v.failure && v.spectral_radius < 1.0;
    if (!v.failure && !v.stable) {
        v.failure = fmt::format("lifted closed-loop spectral radius {:.6g} >= 1", v.spectral_radius);
    }
    return v;
}

}  // namespace mrc::pathsim
