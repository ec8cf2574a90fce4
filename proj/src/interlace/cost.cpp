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

#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"

namespace mrc::interlace {

namespace {

InstantCost block_cost(std::size_t order) {
    const int n = static_cast<int>(order);
    return {2 * n + 1, 2 * n};
}

void summarize(VariantCost& v) {
    v.worst_multiplies = 0;
    v.worst_adds = 0;
    double m = 0.0;
    double a = 0.0;
    for (const auto& c : v.per_instant) {
        v.worst_multiplies = std::max(v.worst_multiplies, c.multiplies);
        v.worst_adds = std::max(v.worst_adds, c.adds);
        m += c.multiplies;
        a += c.adds;
    }
    const auto k = static_cast<double>(v.per_instant.size());
    v.mean_multiplies = m / k;
    v.mean_adds = a / k;
}

VariantCost fast_cost(const SingleRateFast& v) {
    VariantCost out{"single_rate_fast", {block_cost(v.controller.order())}, 0, 0, 0.0, 0.0};
    summarize(out);
    return out;
}

VariantCost slow_cost(const SingleRateSlow& v) {
    if (v.n < 1) {
        throw ValidationError("single-rate slow variant needs N >= 1");
    }
    VariantCost out{"single_rate_slow", std::vector<InstantCost>(static_cast<std::size_t>(v.n)), 0, 0, 0.0, 0.0};
    out.per_instant[0] = block_cost(v.controller.order());
    summarize(out);
    return out;
}

VariantCost interlaced_cost(const Interlaced& v) {
    validate_plan(v.plan, v.controller);
    const auto& pf = v.controller;
    const auto fast_ids = fast_block_ids(v.plan, pf);
    const bool has_direct = pf.direct != 0.0;

    InstantCost base{has_direct ? 1 : 0, 0};
    for (const auto& id : fast_ids) {
        const InstantCost c = block_cost(pf.find_first_order(id) != nullptr ? 1 : 2);
        base.multiplies += c.multiplies;
        base.adds += c.adds;
    }
    const int fast_terms = (has_direct ? 1 : 0) + static_cast<int>(fast_ids.size());
    const int slow_terms = v.plan.n;

    VariantCost out{"interlaced", std::vector<InstantCost>(static_cast<std::size_t>(v.plan.n), base), 0, 0, 0.0, 0.0};
    for (int slot = 1; slot <= v.plan.n; ++slot) {
        // Resampled slow blocks are first-order.
        const InstantCost c = block_cost(1);
        auto& at = out.per_instant[static_cast<std::size_t>(v.plan.firing_offset(slot))];
        at.multiplies += c.multiplies;
        at.adds += c.adds;
    }
    for (std::size_t k = 0; k < out.per_instant.size(); ++k) {
        auto& at = out.per_instant[k];
        if (v.plan.output == OutputStrategy::O1) {
            at.adds += std::max(0, fast_terms + slow_terms - 1);
        } else {
            at.adds += std::max(0, fast_terms + 1 - 1);
            if (k == 0) {
                at.adds += slow_terms - 1;  // aggregate refresh at the metaperiod boundary
            }
        }
    }
    summarize(out);
    return out;
}

}  // namespace

VariantCost cost_model(const ControllerVariant& variant) {
    return std::visit(
        [](const auto& v) -> VariantCost {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SingleRateFast>) {
                return fast_cost(v);
            } else if constexpr (std::is_same_v<T, SingleRateSlow>) {
                return slow_cost(v);
            } else {
                return interlaced_cost(v);
            }
        },
        variant);
}

CostReport cost_report(const ParallelForm& pf, const InterlacePlan& plan) {
    CostReport r;
    r.single_rate_fast = cost_model(SingleRateFast{pf});
    r.single_rate_slow = cost_model(SingleRateSlow{pf, plan.n});
    r.interlaced = cost_model(Interlaced{pf, plan});
    r.savings_ratio = 1.0 - static_cast<double>(r.interlaced.worst_multiplies) /
                                static_cast<double>(r.single_rate_fast.worst_multiplies);
    return r;
}

}  // namespace mrc::interlace
