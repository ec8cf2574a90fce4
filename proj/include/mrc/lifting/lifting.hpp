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

// Lifting of the N-periodic interlaced controller to an LTI system at period
// N T, and the step-by-step switched executor that defines its semantics.
//
// Executor semantics at fast instant k with offset m = k mod N:
//   1. the direct term and every fast block output and update with e[k];
//   2. under O2, when m = 0 the slow aggregate is refreshed to the sum of the
//      slow blocks' latest outputs, before any slow block fires;
//   3. the slow block whose slot fires at m computes y = C x + D v, updates
//      x, and holds y; v = e[k] under I1 and v = e[k - m] under I2;
//   4. u[k] = direct + fast outputs + (O1: Σ held outputs | O2: aggregate).
//
// The lifted state is the fast-part state followed by, for every slot in
// order, the slow block state and its held output from the previous
// metaperiod.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mrc/interlace/interlace.hpp"
#include "mrc/lti/state_space.hpp"

namespace mrc::lifting {

using interlace::InputStrategy;
using interlace::InterlacePlan;
using interlace::OutputStrategy;
using lti::Matrix;
using lti::ParallelForm;
using lti::StateSpace;
using lti::Vector;

/// LTI map from N stacked fast inputs to N stacked fast outputs per metaperiod.
struct LiftedQuadruple {
    Matrix A;
    Matrix B;  // states x N
    Matrix C;  // N x states
    Matrix D;  // N x N
    double period = 0.0;  // N T
    int n = 1;

    Eigen::Index states() const noexcept { return A.rows(); }
};

/// Standard N-step lifting of a SISO discrete system at period T.
LiftedQuadruple lift_fast_part(const StateSpace& ss, int n);

/// Lifting of one slow block given by its realization at N T. The block
/// fires at offset (slot - 1 + phase) mod N; one extra state holds the
/// output of the previous metaperiod.
LiftedQuadruple lift_slow_block(const StateSpace& block_nt, int slot, InputStrategy input, OutputStrategy output,
                                int n, int phase = 0);

/// Block-diagonal aggregation of lifted parts sharing N; B stacked, C
/// concatenated, D summed.
LiftedQuadruple aggregate(std::span<const LiftedQuadruple> parts);

/// Fast part (direct term + fast blocks) lifted, plus every slow block of the plan.
LiftedQuadruple lift_interlaced_controller(const ParallelForm& pf, const InterlacePlan& plan);

/// Lifting of any controller variant over a metaperiod of `n` fast instants.
/// SingleRateFast is the plain lifting of the whole controller; SingleRateSlow
/// samples the error at offset 0, updates once, and holds its output.
LiftedQuadruple lift_controller(const interlace::ControllerVariant& variant, int n);

/// Fast output sequence of a lifted system fed `input` (length a multiple of N).
std::vector<double> simulate_lifted(const LiftedQuadruple& sys, std::span<const double> input,
                                    const Vector& x0 = {});

class SwitchedExecutor {
public:
    SwitchedExecutor(const ParallelForm& pf, const InterlacePlan& plan);

    /// Advances one fast instant and returns the controller output.
    double step(double e);
    void reset();

    int n() const noexcept { return plan_.n; }
    /// Offset of the next instant inside the metaperiod.
    int offset() const noexcept { return offset_; }
    /// Dimension of the matching lifted state.
    Eigen::Index state_size() const noexcept;
    /// State in the lifted ordering. Meaningful at metaperiod boundaries.
    Vector lifted_state() const;
    /// Injects a lifted-ordering state; only allowed at a metaperiod boundary.
    void set_lifted_state(const Vector& x);

private:
    struct Block {
        StateSpace ss;
        Vector x;
    };
    struct SlowBlock {
        StateSpace ss;  // at N T
        Vector x;
        int offset = 0;
        double held = 0.0;
    };

    InterlacePlan plan_;
    double direct_ = 0.0;
    std::vector<Block> fast_;
    std::vector<SlowBlock> slow_;  // slot order
    int offset_ = 0;
    double start_sample_ = 0.0;
    double aggregate_ = 0.0;
};

/// Runs the executor from zero state; the input is zero-padded to a whole
/// number of metaperiods and the padded-length output returned.
std::vector<double> switched_execute(const ParallelForm& pf, const InterlacePlan& plan,
                                     std::span<const double> input);

struct EquivalenceReport {
    double max_abs_error = 0.0;
    std::optional<std::size_t> first_divergence;
    std::size_t samples = 0;
    double tolerance = 0.0;

    bool equivalent() const noexcept { return !first_divergence.has_value(); }
};

EquivalenceReport compare_sequences(std::span<const double> a, std::span<const double> b, double tol);

struct ClosedLoop {
    LiftedQuadruple system;  // reference -> plant output
    double spectral_radius = 0.0;
    lti::Stability stability = lti::Stability::Stable;
};

/// Negative unity feedback of a lifted controller around a plant. A
/// continuous plant is ZOH-sampled at the fast period first. Throws
/// NumericalError when I + D_c D_p is singular.
ClosedLoop lifted_closed_loop(const LiftedQuadruple& controller, const StateSpace& plant);

}  // namespace mrc::lifting
