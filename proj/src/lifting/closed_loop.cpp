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

#include <Eigen/LU>

#include "mrc/errors.hpp"
#include "mrc/lifting/lifting.hpp"

namespace mrc::lifting {

ClosedLoop lifted_closed_loop(const LiftedQuadruple& controller, const StateSpace& plant) {
    if (!plant.is_siso()) {
        throw ValidationError("plant must be SISO");
    }
    const double t = controller.period / controller.n;
    StateSpace plant_t = plant;
    if (plant.domain.is_continuous()) {
        plant_t = lti::discretize_zoh(plant, t);
    } else if (std::abs(plant.domain.period() - t) > 1e-12 * t) {
        throw ValidationError("plant period differs from the controller's fast period");
    }
    const LiftedQuadruple p = lift_fast_part(plant_t, controller.n);
    const auto& c = controller;
    const Eigen::Index n = c.n;

    // u = M (Cc xc - Dc Cp xp + Dc r), M = (I + Dc Dp)^{-1}
    const Matrix loop = Matrix::Identity(n, n) + c.D * p.D;
    Eigen::FullPivLU<Matrix> lu(loop);
    if (!lu.isInvertible() || lu.rcond() < 1e-12) {
        throw NumericalError("algebraic loop: I + Dc Dp is singular");
    }
    const Matrix m = lu.inverse();
    const Matrix u_xp = -m * c.D * p.C;
    const Matrix u_xc = m * c.C;
    const Matrix u_r = m * c.D;
    // e = r - Cp xp - Dp u
    const Matrix e_xp = -p.C - p.D * u_xp;
    const Matrix e_xc = -p.D * u_xc;
    const Matrix e_r = Matrix::Identity(n, n) - p.D * u_r;

    const Eigen::Index np = p.states();
    const Eigen::Index nc = c.states();
    ClosedLoop out;
    auto& s = out.system;
    s.n = c.n;
    s.period = c.period;
    s.A.resize(np + nc, np + nc);
    s.A << p.A + p.B * u_xp, p.B * u_xc, c.B * e_xp, c.A + c.B * e_xc;
    s.B.resize(np + nc, n);
    s.B << p.B * u_r, c.B * e_r;
    s.C.resize(n, np + nc);
    s.C << p.C + p.D * u_xp, p.D * u_xc;
    s.D = p.D * u_r;

    out.spectral_radius = lti::spectral_radius(s.A);
    out.stability = lti::stability_of_poles(lti::eigenvalues(s.A), lti::Domain::discrete(s.period));
    return out;
}

}  // namespace mrc::lifting
