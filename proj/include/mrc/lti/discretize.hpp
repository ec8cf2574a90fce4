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

#include <vector>

#include "mrc/lti/transfer_function.hpp"

namespace mrc::lti {

enum class DiscretizationMethod { MatchedPoleZero, ZeroOrderHold };

inline constexpr double kDefaultSnapTolerance = 1e-3;

/// Result of mapping roots through z = e^{sT}, before any snapping.
struct MatchedRoots {
    std::vector<Complex> poles;
    std::vector<Complex> zeros;
    double gain = 0.0;
    /// Where the gain was matched: "dc" (s=0 <-> z=1) or "nyquist" (s=jπ/T <-> z=-1).
    const char* matched_at = "dc";
};

/// Pole/zero map and gain match without snapping. Infinite zeros stay at
/// infinity, so the relative degree is preserved.
MatchedRoots matched_roots(const TransferFunction& tf_c, double period);

/// Real roots within snap_tol of z = 1 are replaced by exactly 1.
std::vector<Complex> snap_to_unity(std::vector<Complex> roots, double snap_tol);

/// Matched pole-zero discretization. The gain is matched at DC unless the
/// continuous system has a pole or zero at s = 0, in which case the magnitude
/// is matched between s = jπ/T and z = -1.
TransferFunction discretize_mpz(const TransferFunction& tf_c, double period,
                                double snap_tol = kDefaultSnapTolerance);

/// ZOH-equivalent transfer function (exact sampling of a held input), with
/// the same unity snapping applied to its poles and zeros.
TransferFunction discretize_zoh(const TransferFunction& tf_c, double period,
                                double snap_tol = kDefaultSnapTolerance);

TransferFunction discretize(const TransferFunction& tf_c, double period, DiscretizationMethod method,
                            double snap_tol = kDefaultSnapTolerance);

}  // namespace mrc::lti
