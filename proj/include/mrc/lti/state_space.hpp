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

#include <Eigen/Core>

#include "mrc/lti/transfer_function.hpp"

namespace mrc::lti {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// (A, B, C, D) quadruple. A zero-state system (pure gain) has a 0x0 A.
struct StateSpace {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;
    Domain domain = Domain::continuous();

    StateSpace(Matrix a, Matrix b, Matrix c, Matrix d, Domain dom = Domain::continuous());

    static StateSpace gain(double k, Domain dom = Domain::continuous());

    Eigen::Index states() const noexcept { return A.rows(); }
    Eigen::Index inputs() const noexcept { return B.cols(); }
    Eigen::Index outputs() const noexcept { return C.rows(); }
    bool is_siso() const noexcept { return inputs() == 1 && outputs() == 1; }
};

/// Controllable canonical realization. Throws ValidationError for improper tf.
StateSpace tf_to_ss(const TransferFunction& tf);

/// C (xI - A)^{-1} B + D for SISO systems, via the identity
/// C adj(xI - A) B = det(xI - A + BC) - det(xI - A).
TransferFunction ss_to_tf(const StateSpace& ss);

/// det(xI - A) by Hessenberg reduction and Hyman's recurrence.
Polynomial characteristic_polynomial(const Matrix& a);

std::vector<Complex> eigenvalues(const Matrix& a);
double spectral_radius(const Matrix& a);
Stability is_stable(const StateSpace& ss, double boundary_tol = 1e-9);

/// Controllability and observability by rank tests on the Krylov matrices.
struct MinimalityReport {
    bool controllable;
    bool observable;
    bool minimal() const noexcept { return controllable && observable; }
};
MinimalityReport minimality(const StateSpace& ss, double rank_tol = 1e-9);

/// Exact sampling with a zero-order-hold input (matrix exponential).
StateSpace discretize_zoh(const StateSpace& continuous, double period);

/// Block-diagonal parallel connection of SISO systems; outputs summed.
StateSpace parallel(std::span<const StateSpace> parts);

}  // namespace mrc::lti
