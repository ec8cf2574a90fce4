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

#include "mrc/lti/state_space.hpp"

namespace mrc::lti {

/// Solves A X + X Aᵀ + Q = 0 (continuous) or A X Aᵀ - X + Q = 0 (discrete)
/// by Bartels-Stewart on the complex Schur form of A. Throws NumericalError
/// when A has eigenvalues on the stability boundary.
Matrix solve_lyapunov(const Matrix& a, const Matrix& q, const Domain& domain);

struct Gramians {
    Matrix controllability;
    Matrix observability;
};
Gramians gramians(const StateSpace& ss);

struct BalancedTruncation {
    StateSpace reduced;
    /// All Hankel singular values of the input, non-increasing.
    std::vector<double> hankel_values;
    /// 2 Σ of the discarded Hankel values.
    double error_bound = 0.0;
};

/// Square-root balanced truncation to `target_order` states.
///
/// Requires a strictly stable system. `target_order` may equal the current
/// order (returns a balanced realization of the same transfer function) but
/// may not exceed it.
BalancedTruncation balanced_truncate(const StateSpace& ss, std::size_t target_order);

/// max over the grid of |G(jω) - Gr(jω)| (or on the unit circle).
double max_error_on_grid(const TransferFunction& g, const TransferFunction& gr, std::span<const double> omegas);

}  // namespace mrc::lti
