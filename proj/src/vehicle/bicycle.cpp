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

#include <fmt/format.h>

#include "mrc/errors.hpp"
#include "mrc/vehicle/vehicle.hpp"

namespace mrc::vehicle {

namespace {

void require_speed(double vx) {
    if (!(vx > 0.0) || !std::isfinite(vx)) {
        throw ValidationError(fmt::format("longitudinal speed must be positive, got {}", vx));
    }
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(fmt::format("vehicle parameter {} must be positive, got {}", name, v));
    }
}

}  // namespace

VehicleParams VehicleParams::test_bed() { return {1800.0, 1.6, 1.65, 120e3, 110e3, 3270.0}; }

void VehicleParams::validate() const {
    require_positive(m, "m");
    require_positive(lf, "lf");
    require_positive(lr, "lr");
    require_positive(c_alpha_f, "c_alpha_f");
    require_positive(c_alpha_r, "c_alpha_r");
    require_positive(iz, "iz");
}

void SpeedRange::validate() const {
    require_positive(v_min, "v_min");
    if (!(v_min <= v_nominal && v_nominal <= v_max)) {
        throw ValidationError("speed range needs v_min <= v_nominal <= v_max");
    }
}

LateralCoefficients lateral_coefficients(const VehicleParams& p, double vx) {
    p.validate();
    require_speed(vx);
    const double cf = p.c_alpha_f;
    const double cr = p.c_alpha_r;
    const double l = p.lf + p.lr;
    return {
        p.m * vx * p.lf * cf,
        l * cf * cr,
        p.m * vx * p.iz,
        p.iz * (cf + cr) + p.m * (p.lf * p.lf * cf + p.lr * p.lr * cr),
        cf * cr * l * l / vx + p.m * vx * (p.lr * cr - p.lf * cf),
    };
}

LateralCoefficients quoted_lateral_coefficients(const VehicleParams& p, double vx) {
    p.validate();
    require_speed(vx);
    const double cf = p.c_alpha_f;
    const double cr = p.c_alpha_r;
    const double l = p.lf + p.lr;
    const double bracket = 1.0 + p.m * vx * (p.lr * cr - p.lf * cf) / (l * l * cf * cr);
    return {
        p.m * vx * p.lf * cf,
        l * cf * cr,
        p.m * vx * p.iz,
        p.iz * (cf + cr) + p.m * (p.lf * p.lf * cf - p.lr * p.lr * cr),
        cf * cr / vx * l * l * bracket,
    };
}

lti::TransferFunction lateral_tf(const VehicleParams& p, double vx) {
    const auto c = lateral_coefficients(p, vx);
    return lti::TransferFunction(lti::Polynomial({c.a1, c.a2}), lti::Polynomial({c.b1, c.b2, c.b3}))
        .normalized();
}

lti::StateSpace lateral_ss(const VehicleParams& p, double vx) {
    p.validate();
    require_speed(vx);
    const double cf = p.c_alpha_f;
    const double cr = p.c_alpha_r;
    const double mv = p.m * vx;
    const double moment = p.lr * cr - p.lf * cf;
    lti::Matrix a(2, 2);
    a << (-cf - cr) / mv, -1.0 + moment / (mv * vx),
        moment / p.iz, (-p.lr * p.lr * cr - p.lf * p.lf * cf) / (p.iz * vx);
    lti::Matrix b(2, 1);
    b << cf / mv, p.lf * cf / p.iz;
    lti::Matrix c(1, 2);
    c << 0.0, 1.0;
    return {a, b, c, lti::Matrix::Zero(1, 1)};
}

double tire_force(double c_alpha, double alpha) { return c_alpha * alpha; }

double sideslip(double u_y, double u_x) {
    if (u_x == 0.0) {
        throw ValidationError("sideslip is undefined for zero longitudinal velocity");
    }
    return std::atan(u_y / u_x);
}

}  // namespace mrc::vehicle
