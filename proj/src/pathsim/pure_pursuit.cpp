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

#include "mrc/pathsim/pathsim.hpp"

namespace mrc::pathsim {

PursuitCommand pure_pursuit_ref(const vehicle::Pose& pose, const Path& path, double lookahead, double vx,
                                double corridor) {
    if (!(lookahead > 0.0) || !(corridor > 0.0)) {
        throw ValidationError("look-ahead and corridor must be positive");
    }
    PursuitCommand cmd;
    cmd.projection = path.project(pose.x, pose.y);
    if (cmd.projection.distance() > corridor) {
        throw PathLostError(fmt::format("vehicle at ({:.3f}, {:.3f}) is {:.3f} m from the path (corridor {} m)",
                                        pose.x, pose.y, cmd.projection.distance(), corridor));
    }
    cmd.goal = path.point_at(cmd.projection.s + lookahead);
    const double dx = cmd.goal.x - pose.x;
    const double dy = cmd.goal.y - pose.y;
    if (std::hypot(dx, dy) > 1e-9) {
        const double alpha = std::atan2(dy, dx) - pose.psi;
        cmd.curvature = 2.0 * std::sin(alpha) / lookahead;
    }
    cmd.yaw_rate_ref = vx * cmd.curvature;
    return cmd;
}

}  // namespace mrc::pathsim
