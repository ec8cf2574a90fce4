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

// Interlaced implementation of a fast single-rate controller: the slow
// first-order parallel blocks are re-expressed at period NT and updated
// round-robin, one per fast instant, while the direct term and the fast blocks
// run at every instant.

#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mrc/lti/partial_fraction.hpp"

namespace mrc::interlace {

using lti::ParallelForm;
using lti::Polynomial;
using lti::TransferFunction;

// --- classification -------------------------------------------------------

/// Slow iff the block's equivalent continuous frequency |ln z|/T is below
/// (π/T)/k.
struct NyquistFraction {
    double k = 5.0;
};
/// Slow iff |ln z|/T < ratio * (fastest block frequency).
struct RelativeSeparation {
    double ratio = 0.2;
};
/// Slow blocks named explicitly.
struct Explicit {
    std::set<std::string> slow;
};
using ClassificationRule = std::variant<NyquistFraction, RelativeSeparation, Explicit>;

struct PolePartition {
    std::vector<std::string> slow;
    std::vector<std::string> fast;
    std::string rule_used;
    std::vector<std::string> warnings;
};

/// |ln z| / T, the natural frequency of the continuous pole mapping to z.
/// Infinite for z = 0.
double equivalent_frequency(lti::Complex z, double period);

PolePartition classify_poles(const ParallelForm& pf, const ClassificationRule& rule);

// --- resampling -----------------------------------------------------------

/// z^{N-1} + α z^{N-2} + ... + α^{N-1}; (z - α) W(z) = z^N - α^N.
Polynomial w_polynomial(double alpha, int n);

struct ResampledSlowBlock {
    lti::FirstOrderBlock source;
    int n = 1;
    /// r (1 + α + ... + α^{N-1}) / (z_N - α^N) at period N T.
    TransferFunction tf_slow;
    Polynomial w_poly;

    /// Realization at period N T shared by the executor and the lifting.
    lti::StateSpace realization() const { return lti::tf_to_ss(tf_slow); }
};

/// Re-expresses a first-order block at period T as a block at period N T
/// driven by an input held over the N fast instants.
ResampledSlowBlock resample_slow_block(const lti::FirstOrderBlock& block, double period, int n);

/// Held-input resampling of an arbitrary realization at period T to N T:
/// (A^N, Σ_{i<N} A^i B, C, D).
lti::StateSpace resample_held_input(const lti::StateSpace& ss, int n);

// --- plans ----------------------------------------------------------------

enum class InputStrategy { I1, I2 };
enum class OutputStrategy { O1, O2 };

const char* to_string(InputStrategy s) noexcept;
const char* to_string(OutputStrategy s) noexcept;
InputStrategy parse_input_strategy(const std::string& s);
OutputStrategy parse_output_strategy(const std::string& s);

/// Slot i (1-based) updates at fast index k with k ≡ (i - 1 + phase) mod N.
struct InterlacePlan {
    int n = 1;
    std::vector<std::string> slots;
    InputStrategy input = InputStrategy::I1;
    OutputStrategy output = OutputStrategy::O1;
    int phase = 0;
    std::vector<std::string> warnings;

    /// Offset within the metaperiod at which a 1-based slot fires.
    int firing_offset(int slot) const;
    friend bool operator==(const InterlacePlan& a, const InterlacePlan& b) {
        return a.n == b.n && a.slots == b.slots && a.input == b.input && a.output == b.output && a.phase == b.phase;
    }
};

/// Builds a plan with N = |slow| slots in the given order. Throws
/// ValidationError when there are no slow blocks or `order` is not a
/// permutation of them.
InterlacePlan make_plan(const PolePartition& partition, const std::vector<std::string>& order,
                        InputStrategy input, OutputStrategy output, int phase = 0);

/// Checks a plan against a controller: slot ids exist, are first-order
/// (second-order slow blocks raise UnsupportedError), and N matches.
void validate_plan(const InterlacePlan& plan, const ParallelForm& pf);

/// Ids of the blocks that stay at the fast rate under `plan`.
std::vector<std::string> fast_block_ids(const InterlacePlan& plan, const ParallelForm& pf);

// --- computational cost -----------------------------------------------------

/// Operation counts at one fast instant.
struct InstantCost {
    int multiplies = 0;
    int adds = 0;
    friend bool operator==(const InstantCost&, const InstantCost&) = default;
};

struct VariantCost {
    std::string variant;
    std::vector<InstantCost> per_instant;  // one metaperiod
    int worst_multiplies = 0;
    int worst_adds = 0;
    double mean_multiplies = 0.0;
    double mean_adds = 0.0;
};

inline constexpr const char* kCostConvention =
    "DF2T: order-n block costs 2n+1 multiplies and 2n adds per update; "
    "summing m block outputs costs m-1 adds; a nonzero direct gain is an order-0 block";

struct SingleRateFast {
    ParallelForm controller;
};
/// Whole controller updated once per metaperiod N T, output held.
struct SingleRateSlow {
    ParallelForm controller;
    int n = 1;
};
struct Interlaced {
    ParallelForm controller;
    InterlacePlan plan;
};
using ControllerVariant = std::variant<SingleRateFast, SingleRateSlow, Interlaced>;

VariantCost cost_model(const ControllerVariant& variant);

struct CostReport {
    std::string convention = kCostConvention;
    VariantCost single_rate_fast;
    VariantCost single_rate_slow;
    VariantCost interlaced;
    /// 1 - worst(interlaced) / worst(single-rate fast), multiplies.
    double savings_ratio = 0.0;
};

CostReport cost_report(const ParallelForm& pf, const InterlacePlan& plan);

}  // namespace mrc::interlace
