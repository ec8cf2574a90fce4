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
#include <set>

#include <fmt/format.h>

#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"

namespace mrc::interlace {

const char* to_string(InputStrategy s) noexcept { return s == InputStrategy::I1 ? "I1" : "I2"; }

const char* to_string(OutputStrategy s) noexcept { return s == OutputStrategy::O1 ? "O1" : "O2"; }

InputStrategy parse_input_strategy(const std::string& s) {
    if (s == "I1" || s == "I-1") {
        return InputStrategy::I1;
    }
    if (s == "I2" || s == "I-2") {
        return InputStrategy::I2;
    }
    if (s == "I3" || s == "I-3") {
        throw UnsupportedError("input strategy I3 (mean input) is not supported");
    }
    throw ValidationError(fmt::format("unknown input strategy '{}'", s));
}

OutputStrategy parse_output_strategy(const std::string& s) {
    if (s == "O1" || s == "O-1") {
        return OutputStrategy::O1;
    }
    if (s == "O2" || s == "O-2") {
        return OutputStrategy::O2;
    }
    throw ValidationError(fmt::format("unknown output strategy '{}'", s));
}

int InterlacePlan::firing_offset(int slot) const {
    if (slot < 1 || slot > n) {
        throw ValidationError(fmt::format("slot {} outside 1..{}", slot, n));
    }
    return ((slot - 1 + phase) % n + n) % n;
}

InterlacePlan make_plan(const PolePartition& partition, const std::vector<std::string>& order,
                        InputStrategy input, OutputStrategy output, int phase) {
    if (partition.slow.empty()) {
        throw ValidationError("no slow blocks: interlacing degenerates to the single-rate controller");
    }
    const std::set<std::string> expected(partition.slow.begin(), partition.slow.end());
    const std::set<std::string> given(order.begin(), order.end());
    if (given.size() != order.size() || given != expected) {
        throw ValidationError("slot order must be a permutation of the slow blocks");
    }
    InterlacePlan plan;
    plan.n = static_cast<int>(order.size());
    plan.slots = order;
    plan.input = input;
    plan.output = output;
    plan.phase = ((phase % plan.n) + plan.n) % plan.n;
    if (plan.n == 1) {
        plan.warnings.emplace_back("N = 1: the single slow block updates every instant; the plan is single-rate");
    }
    return plan;
}

void validate_plan(const InterlacePlan& plan, const ParallelForm& pf) {
    if (plan.n < 1 || static_cast<std::size_t>(plan.n) != plan.slots.size()) {
        throw ValidationError("plan N must equal the number of slots");
    }
    if (plan.phase < 0 || plan.phase >= plan.n) {
        throw ValidationError("plan phase must lie in 0..N-1");
    }
    if (!pf.domain.is_discrete()) {
        throw ValidationError("interlacing needs a discrete controller");
    }
    const std::set<std::string> unique(plan.slots.begin(), plan.slots.end());
    if (unique.size() != plan.slots.size()) {
        throw ValidationError("plan slots repeat a block");
    }
    for (const auto& id : plan.slots) {
        if (pf.find_second_order(id) != nullptr) {
            throw UnsupportedError(fmt::format("block {} is second-order; only first-order blocks can be slow", id));
        }
        if (pf.find_first_order(id) == nullptr) {
            throw ValidationError(fmt::format("plan slot '{}' is not a block of the controller", id));
        }
    }
}

std::vector<std::string> fast_block_ids(const InterlacePlan& plan, const ParallelForm& pf) {
    std::vector<std::string> out;
    for (const auto& id : pf.block_ids()) {
        if (std::find(plan.slots.begin(), plan.slots.end(), id) == plan.slots.end()) {
            out.push_back(id);
        }
    }
    return out;
}

}  // namespace mrc::interlace
