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

#include "mrc/errors.hpp"
#include "mrc/vehicle/vehicle.hpp"

namespace mrc::vehicle {

bool LateralState::outside_small_angle() const noexcept { return std::abs(beta) > kSmallAngleLimit; }

Pose pose_rate(const Pose& pose, double beta, double yaw_rate, double vx) {
    const double heading = pose.psi + beta;
    return {vx * std::cos(heading), vx * std::sin(heading), yaw_rate};
}

LateralState integrate_pose(const LateralState& state, double vx, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("integration step must be positive");
    }
    auto shifted = [&](const Pose& k, double h) {
        return Pose{state.pose.x + h * k.x, state.pose.y + h * k.y, state.pose.psi + h * k.psi};
    };
    const Pose k1 = pose_rate(state.pose, state.beta, state.yaw_rate, vx);
    const Pose k2 = pose_rate(shifted(k1, dt / 2), state.beta, state.yaw_rate, vx);
    const Pose k3 = pose_rate(shifted(k2, dt / 2), state.beta, state.yaw_rate, vx);
    const Pose k4 = pose_rate(shifted(k3, dt), state.beta, state.yaw_rate, vx);
    LateralState out = state;
    out.pose.x += dt / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    out.pose.y += dt / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    out.pose.psi += dt / 6 * (k1.psi + 2 * k2.psi + 2 * k3.psi + k4.psi);
    return out;
}

}  // namespace mrc::vehicle
