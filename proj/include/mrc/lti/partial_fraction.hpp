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
#include <string>
#include <vector>

#include "mrc/lti/state_space.hpp"
#include "mrc/lti/transfer_function.hpp"

namespace mrc::lti {

/// residue / (x - pole)
struct FirstOrderBlock {
    std::string id;
    double residue = 0.0;
    double pole = 0.0;

    TransferFunction tf(const Domain& d) const;
    friend bool operator==(const FirstOrderBlock&, const FirstOrderBlock&) = default;
};

/// (b1 x + b0) / (x^2 + a1 x + a0), the real form of a complex-conjugate pair.
struct SecondOrderBlock {
    std::string id;
    Polynomial num;  // degree <= 1
    Polynomial den;  // monic, degree 2

    TransferFunction tf(const Domain& d) const;
    std::vector<Complex> poles() const { return den.roots(); }
    friend bool operator==(const SecondOrderBlock&, const SecondOrderBlock&) = default;
};

/// direct + Σ first-order blocks + Σ second-order blocks.
///
/// Block ids are b1, b2, ... numbered from the slowest pole (largest |z| in
/// discrete time, smallest |s| in continuous time); a second-order block takes
/// two consecutive numbers, e.g. "b45".
struct ParallelForm {
    double direct = 0.0;
    std::vector<FirstOrderBlock> first_order;
    std::vector<SecondOrderBlock> second_order;
    Domain domain = Domain::continuous();

    /// Common-denominator sum back to a single transfer function.
    TransferFunction recombine() const;
    std::size_t order() const noexcept { return first_order.size() + 2 * second_order.size(); }
    std::vector<std::string> block_ids() const;
    const FirstOrderBlock* find_first_order(const std::string& id) const;
    const SecondOrderBlock* find_second_order(const std::string& id) const;
    bool has_block(const std::string& id) const;

    friend bool operator==(const ParallelForm&, const ParallelForm&) = default;
};

/// Realization used for a block everywhere a block is executed or lifted.
StateSpace realize(const FirstOrderBlock& b, const Domain& d);
StateSpace realize(const SecondOrderBlock& b, const Domain& d);
/// Block-diagonal realization of the whole form: first-order blocks, then
/// second-order blocks, with the direct term as feedthrough.
StateSpace realize(const ParallelForm& pf);

struct PartialFractionOptions {
    /// Poles closer than this are treated as repeated and rejected.
    double cluster_tol = 1e-7;
    /// A pole counts as real when |Im| <= real_tol * max(1, |pole|).
    double real_tol = 1e-8;
    /// Largest admissible imaginary part of a real pole's residue.
    double imag_residue_tol = 1e-9;
};

/// Simple-pole partial fraction expansion of a proper transfer function.
/// Throws ValidationError for improper input or repeated poles.
ParallelForm partial_fraction(const TransferFunction& tf, const PartialFractionOptions& opts = {});

}  // namespace mrc::lti
