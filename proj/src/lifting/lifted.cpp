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
#include <limits>

#include <fmt/format.h>

#include "mrc/errors.hpp"
#include "mrc/lifting/lifting.hpp"

namespace mrc::lifting {

namespace {

void require_discrete_siso(const StateSpace& ss, const char* what) {
    if (!ss.domain.is_discrete()) {
        throw ValidationError(fmt::format("{} must be a discrete system", what));
    }
    if (!ss.is_siso()) {
        throw ValidationError(fmt::format("{} must be SISO", what));
    }
}

}  // namespace

LiftedQuadruple lift_fast_part(const StateSpace& ss, int n) {
    if (n < 1) {
        throw ValidationError("lifting factor N must be at least 1");
    }
    require_discrete_siso(ss, "lifted system");
    const Eigen::Index k = ss.states();
    const Eigen::Index nn = n;

    // powers[i] = A^i, i = 0..N
    std::vector<Matrix> powers{Matrix::Identity(k, k)};
    for (int i = 0; i < n; ++i) {
        powers.push_back(powers.back() * ss.A);
    }

    LiftedQuadruple out;
    out.n = n;
    out.period = ss.domain.period() * n;
    out.A = powers[static_cast<std::size_t>(n)];
    out.B = Matrix::Zero(k, nn);
    out.C = Matrix::Zero(nn, k);
    out.D = Matrix::Zero(nn, nn);
    for (Eigen::Index j = 0; j < nn; ++j) {
        out.B.col(j) = powers[static_cast<std::size_t>(nn - 1 - j)] * ss.B;
        out.C.row(j) = ss.C * powers[static_cast<std::size_t>(j)];
    }
    for (Eigen::Index i = 0; i < nn; ++i) {
        out.D(i, i) = ss.D(0, 0);
        for (Eigen::Index j = 0; j < i; ++j) {
            out.D(i, j) = (ss.C * powers[static_cast<std::size_t>(i - j - 1)] * ss.B)(0, 0);
        }
    }
    return out;
}

LiftedQuadruple lift_slow_block(const StateSpace& block_nt, int slot, InputStrategy input, OutputStrategy output,
                                int n, int phase) {
    if (n < 1) {
        throw ValidationError("lifting factor N must be at least 1");
    }
    if (slot < 1 || slot > n) {
        throw ValidationError(fmt::format("slot {} outside 1..{}", slot, n));
    }
    require_discrete_siso(block_nt, "slow block");
    const int fire = ((slot - 1 + phase) % n + n) % n;
    const int sel = input == InputStrategy::I1 ? fire : 0;
    const Eigen::Index k = block_nt.states();
    const Eigen::Index nn = n;

    LiftedQuadruple out;
    out.n = n;
    out.period = block_nt.domain.period();
    out.A = Matrix::Zero(k + 1, k + 1);
    out.A.topLeftCorner(k, k) = block_nt.A;
    out.A.bottomLeftCorner(1, k) = block_nt.C;
    out.B = Matrix::Zero(k + 1, nn);
    out.B.block(0, sel, k, 1) = block_nt.B;
    out.B(k, sel) = block_nt.D(0, 0);
    out.C = Matrix::Zero(nn, k + 1);
    out.D = Matrix::Zero(nn, nn);
    for (Eigen::Index m = 0; m < nn; ++m) {
        if (output == OutputStrategy::O2 || m < fire) {
            out.C(m, k) = 1.0;
        } else {
            out.C.block(m, 0, 1, k) = block_nt.C;
            out.D(m, sel) = block_nt.D(0, 0);
        }
    }
    return out;
}

LiftedQuadruple aggregate(std::span<const LiftedQuadruple> parts) {
    if (parts.empty()) {
        throw ValidationError("nothing to aggregate");
    }
    const int n = parts.front().n;
    Eigen::Index states = 0;
    for (const auto& p : parts) {
        if (p.n != n) {
            throw ValidationError("aggregated parts must share N");
        }
        states += p.states();
    }
    LiftedQuadruple out;
    out.n = n;
    out.period = parts.front().period;
    out.A = Matrix::Zero(states, states);
    out.B = Matrix::Zero(states, n);
    out.C = Matrix::Zero(n, states);
    out.D = Matrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& p : parts) {
        const auto k = p.states();
        out.A.block(off, off, k, k) = p.A;
        out.B.middleRows(off, k) = p.B;
        out.C.middleCols(off, k) = p.C;
        out.D += p.D;
        off += k;
    }
    return out;
}

LiftedQuadruple lift_interlaced_controller(const ParallelForm& pf, const InterlacePlan& plan) {
    interlace::validate_plan(plan, pf);
    const double t = pf.domain.period();

    std::vector<StateSpace> fast{StateSpace::gain(pf.direct, pf.domain)};
    for (const auto& id : interlace::fast_block_ids(plan, pf)) {
        if (const auto* b1 = pf.find_first_order(id)) {
            fast.push_back(lti::realize(*b1, pf.domain));
        } else {
            fast.push_back(lti::realize(*pf.find_second_order(id), pf.domain));
        }
    }
    std::vector<LiftedQuadruple> parts{lift_fast_part(lti::parallel(fast), plan.n)};
    for (int slot = 1; slot <= plan.n; ++slot) {
        const auto* block = pf.find_first_order(plan.slots[static_cast<std::size_t>(slot - 1)]);
        const auto resampled = interlace::resample_slow_block(*block, t, plan.n);
        parts.push_back(lift_slow_block(resampled.realization(), slot, plan.input, plan.output, plan.n, plan.phase));
    }
    return aggregate(parts);
}

LiftedQuadruple lift_controller(const interlace::ControllerVariant& variant, int n) {
    if (n < 1) {
        throw ValidationError("lifting factor N must be at least 1");
    }
    if (const auto* f = std::get_if<interlace::SingleRateFast>(&variant)) {
        return lift_fast_part(lti::realize(f->controller), n);
    }
    if (const auto* s = std::get_if<interlace::SingleRateSlow>(&variant)) {
        if (s->n != n) {
            throw ValidationError("single-rate slow factor differs from the lifting factor");
        }
        const auto held = interlace::resample_held_input(lti::realize(s->controller), n);
        const Eigen::Index k = held.states();
        LiftedQuadruple out;
        out.n = n;
        out.period = held.domain.period();
        out.A = held.A;
        out.B = Matrix::Zero(k, n);
        out.B.col(0) = held.B;
        out.C = held.C.replicate(n, 1);
        out.D = Matrix::Zero(n, n);
        out.D.col(0).setConstant(held.D(0, 0));
        return out;
    }
    const auto& il = std::get<interlace::Interlaced>(variant);
    if (il.plan.n != n) {
        throw ValidationError("plan N differs from the lifting factor");
    }
    return lift_interlaced_controller(il.controller, il.plan);
}

std::vector<double> simulate_lifted(const LiftedQuadruple& sys, std::span<const double> input, const Vector& x0) {
    const auto n = static_cast<std::size_t>(sys.n);
    if (input.size() % n != 0) {
        throw ValidationError("lifted simulation needs a whole number of metaperiods");
    }
    Vector x = x0.size() == 0 ? Vector::Zero(sys.states()) : x0;
    if (x.size() != sys.states()) {
        throw ValidationError("initial state has the wrong dimension");
    }
    std::vector<double> out(input.size());
    for (std::size_t j = 0; j < input.size(); j += n) {
        const Eigen::Map<const Vector> e(input.data() + j, sys.n);
        const Vector y = sys.C * x + sys.D * e;
        x = sys.A * x + sys.B * e;
        for (std::size_t m = 0; m < n; ++m) {
            out[j + m] = y(static_cast<Eigen::Index>(m));
        }
    }
    return out;
}

EquivalenceReport compare_sequences(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) {
        throw ValidationError("compared sequences differ in length");
    }
    EquivalenceReport r;
    r.samples = a.size();
    r.tolerance = tol;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double err = std::abs(a[i] - b[i]);
        if (!(err <= tol) && !r.first_divergence) {
            r.first_divergence = i;
        }
        if (std::isnan(err)) {
            r.max_abs_error = std::numeric_limits<double>::infinity();
        } else {
            r.max_abs_error = std::max(r.max_abs_error, err);
        }
    }
    return r;
}

}  // namespace mrc::lifting
