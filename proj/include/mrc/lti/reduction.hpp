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

#pragma once

#include <optional>
#include <vector>

#include "mrc/lti/balanced_truncation.hpp"
#include "mrc/lti/transfer_function.hpp"

namespace mrc::lti {

/// Deletes the real pole factor (s - pole) from the denominator and rescales
/// so the DC gain is unchanged. Throws ValidationError when no denominator
/// root lies within 1e-6 of `pole`.
TransferFunction remove_fast_pole(const TransferFunction& tf, double pole);

/// Additive split tf = slow + rest, where `slow` collects the real poles with
/// Re(p) > -threshold (integrators and near-integrators). Those poles make the
/// Gramians of the full system near-singular.
struct SlowSplit {
    TransferFunction slow;
    TransferFunction rest;
    std::vector<double> slow_poles;
};
SlowSplit split_slow_poles(const TransferFunction& tf, double threshold);

struct ReductionOptions {
    /// Total order after truncation, counting the split-off slow poles.
    std::size_t target_order = 6;
    double slow_pole_threshold = 0.01;
    /// Drop the largest-magnitude real pole after truncation.
    bool drop_fast_pole = true;
};

struct ReductionReport {
    TransferFunction reduced;
    std::vector<double> hankel_values;  // of the stable remainder
    double error_bound = 0.0;           // on the stable remainder
    std::vector<double> split_poles;
    std::optional<double> dropped_pole;
};

/// Split slow poles, balance-truncate the remainder, re-attach, and
/// optionally drop the fastest real pole with DC-gain compensation.
ReductionReport reduce_controller(const TransferFunction& tf, const ReductionOptions& opts);

}  // namespace mrc::lti
