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

#include "mrc/errors.hpp"
#include "mrc/lifting/lifting.hpp"

namespace mrc::lifting {

namespace {

// y = C x + D u, then x <- A x + B u.
double advance(const StateSpace& ss, Vector& x, double u) {
    const double y = (ss.C * x)(0, 0) + ss.D(0, 0) * u;
    x = ss.A * x + ss.B * u;
    return y;
}

}  // namespace

SwitchedExecutor::SwitchedExecutor(const ParallelForm& pf, const InterlacePlan& plan) : plan_(plan), direct_(pf.direct) {
    interlace::validate_plan(plan, pf);
    for (const auto& id : interlace::fast_block_ids(plan, pf)) {
        StateSpace ss = pf.find_first_order(id) != nullptr ? lti::realize(*pf.find_first_order(id), pf.domain)
                                                           : lti::realize(*pf.find_second_order(id), pf.domain);
        Vector x = Vector::Zero(ss.states());
        fast_.push_back({std::move(ss), std::move(x)});
    }
    for (int slot = 1; slot <= plan.n; ++slot) {
        const auto* block = pf.find_first_order(plan.slots[static_cast<std::size_t>(slot - 1)]);
        StateSpace ss = interlace::resample_slow_block(*block, pf.domain.period(), plan.n).realization();
        Vector x = Vector::Zero(ss.states());
        slow_.push_back({std::move(ss), std::move(x), plan.firing_offset(slot), 0.0});
    }
}

double SwitchedExecutor::step(double e) {
    double u = direct_ * e;
    for (auto& b : fast_) {
        u += advance(b.ss, b.x, e);
    }
    if (offset_ == 0) {
        start_sample_ = e;
        if (plan_.output == OutputStrategy::O2) {
            aggregate_ = 0.0;
            for (const auto& s : slow_) {
                aggregate_ += s.held;
            }
        }
    }
    const double v = plan_.input == InputStrategy::I1 ? e : start_sample_;
    for (auto& s : slow_) {
        if (s.offset == offset_) {
            s.held = advance(s.ss, s.x, v);
        }
    }
    if (plan_.output == OutputStrategy::O1) {
        for (const auto& s : slow_) {
            u += s.held;
        }
    } else {
        u += aggregate_;
    }
    offset_ = (offset_ + 1) % plan_.n;
    return u;
}

void SwitchedExecutor::reset() {
    for (auto& b : fast_) {
        b.x.setZero();
    }
    for (auto& s : slow_) {
        s.x.setZero();
        s.held = 0.0;
    }
    offset_ = 0;
    start_sample_ = 0.0;
    aggregate_ = 0.0;
}

Eigen::Index SwitchedExecutor::state_size() const noexcept {
    Eigen::Index n = 0;
    for (const auto& b : fast_) {
        n += b.x.size();
    }
    for (const auto& s : slow_) {
        n += s.x.size() + 1;
    }
    return n;
}

Vector SwitchedExecutor::lifted_state() const {
    Vector out(state_size());
    Eigen::Index off = 0;
    for (const auto& b : fast_) {
        out.segment(off, b.x.size()) = b.x;
        off += b.x.size();
    }
    for (const auto& s : slow_) {
        out.segment(off, s.x.size()) = s.x;
        off += s.x.size();
        out(off++) = s.held;
    }
    return out;
}

void SwitchedExecutor::set_lifted_state(const Vector& x) {
    if (offset_ != 0) {
        throw ValidationError("executor state can only be injected at a metaperiod boundary");
    }
    if (x.size() != state_size()) {
        throw ValidationError("injected state has the wrong dimension");
    }
    Eigen::Index off = 0;
    for (auto& b : fast_) {
        b.x = x.segment(off, b.x.size());
        off += b.x.size();
    }
    for (auto& s : slow_) {
        s.x = x.segment(off, s.x.size());
        off += s.x.size();
        s.held = x(off++);
    }
}

std::vector<double> switched_execute(const ParallelForm& pf, const InterlacePlan& plan, std::span<const double> input) {
    SwitchedExecutor exec(pf, plan);
    const auto n = static_cast<std::size_t>(plan.n);
    const std::size_t padded = (input.size() + n - 1) / n * n;
    std::vector<double> out(padded);
    for (std::size_t k = 0; k < padded; ++k) {
        out[k] = exec.step(k < input.size() ? input[k] : 0.0);
    }
    return out;
}

}  // namespace mrc::lifting
