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

// Linear single-track (bicycle) model of the lateral dynamics, states
// (sideslip β, yaw rate r), input front steering angle δ, and the planar pose
// kinematics driven by it. All cornering stiffnesses are in N/rad.

#pragma once

#include "mrc/lti/state_space.hpp"
#include "mrc/lti/transfer_function.hpp"

namespace mrc::vehicle {

struct VehicleParams {
    double m = 0.0;          // kg
    double lf = 0.0;         // m, CG to front axle
    double lr = 0.0;         // m, CG to rear axle
    double c_alpha_f = 0.0;  // N/rad
    double c_alpha_r = 0.0;  // N/rad
    double iz = 0.0;         // kg m^2

    /// Test-bed vehicle: 1800 kg, 1.6 / 1.65 m, 120 / 110 kN/rad, 3270 kg m^2.
    static VehicleParams test_bed();
    /// Throws ValidationError unless every field is finite and positive.
    void validate() const;
    friend bool operator==(const VehicleParams&, const VehicleParams&) = default;
};

struct SpeedRange {
    double v_min = 4.0;
    double v_max = 10.0;
    double v_nominal = 6.0;

    void validate() const;
};

/// (a1 s + a2) / (b1 s^2 + b2 s + b3), yaw rate over steering angle.
struct LateralCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b3 = 0.0;
};

/// Coefficients of the transfer function implied by lateral_ss:
///   a1 = m Vx lf Cf,  a2 = (lf + lr) Cf Cr,  b1 = m Vx Iz,
///   b2 = Iz (Cf + Cr) + m (lf^2 Cf + lr^2 Cr),
///   b3 = Cf Cr (lf + lr)^2 / Vx + m Vx (lr Cr - lf Cf).
LateralCoefficients lateral_coefficients(const VehicleParams& p, double vx);

/// The commonly quoted closed-form coefficients, kept verbatim for comparison.
/// They differ from lateral_coefficients in b2 (sign of the m lr^2 Cr term)
/// and in b3 (m (lr Cr - lf Cf) without the Vx factor).
LateralCoefficients quoted_lateral_coefficients(const VehicleParams& p, double vx);

/// Yaw-rate / steering transfer function with a monic denominator.
lti::TransferFunction lateral_tf(const VehicleParams& p, double vx);

/// Continuous 2-state model x = (β, r), input δ, output r.
lti::StateSpace lateral_ss(const VehicleParams& p, double vx);

/// Linear tire law F = C_α α.
double tire_force(double c_alpha, double alpha);

/// β = atan(u_y / u_x) for forward motion. Throws ValidationError for u_x = 0.
double sideslip(double u_y, double u_x);

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;
};

struct LateralState {
    double beta = 0.0;
    double yaw_rate = 0.0;
    Pose pose;

    /// The linear model assumes small sideslip.
    bool outside_small_angle() const noexcept;
};

inline constexpr double kSmallAngleLimit = 0.2;  // rad

/// (Ẋ, Ẏ, ψ̇) with the velocity along ψ + β.
Pose pose_rate(const Pose& pose, double beta, double yaw_rate, double vx);

/// One RK4 step of the pose with β and yaw rate held over the step.
LateralState integrate_pose(const LateralState& state, double vx, double dt);

}  // namespace mrc::vehicle
