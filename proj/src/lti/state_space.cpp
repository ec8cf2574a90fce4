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

#include "mrc/lti/state_space.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include "mrc/errors.hpp"

namespace mrc::lti {

StateSpace::StateSpace(Matrix a, Matrix b, Matrix c, Matrix d, Domain dom)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)), domain(dom) {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() || D.cols() != B.cols()) {
        throw ValidationError("state-space matrix dimensions are inconsistent");
    }
}

StateSpace StateSpace::gain(double k, Domain dom) {
    return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), Matrix::Constant(1, 1, k), dom};
}

StateSpace tf_to_ss(const TransferFunction& tf) {
    if (!tf.is_proper()) {
        throw ValidationError("cannot realize an improper transfer function");
    }
    const auto norm = tf.normalized();
    const std::size_t n = norm.den().degree();
    const auto idx = static_cast<Eigen::Index>(n);

    // b_i, a_i for powers n..0 (num zero-padded to degree n).
    std::vector<double> a(n + 1), b(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        a[i] = norm.den()[n - i];
        b[i] = norm.num()[n - i];
    }
    const double d = b[0];

    Matrix A = Matrix::Zero(idx, idx);
    Matrix B = Matrix::Zero(idx, 1);
    Matrix C = Matrix::Zero(1, idx);
    for (Eigen::Index j = 0; j < idx; ++j) {
        A(0, j) = -a[static_cast<std::size_t>(j) + 1];
        C(0, j) = b[static_cast<std::size_t>(j) + 1] - d * a[static_cast<std::size_t>(j) + 1];
    }
    for (Eigen::Index i = 1; i < idx; ++i) {
        A(i, i - 1) = 1.0;
    }
    if (idx > 0) {
        B(0, 0) = 1.0;
    }
    return {A, B, C, Matrix::Constant(1, 1, d), tf.domain()};
}

Polynomial characteristic_polynomial(const Matrix& a) {
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return Polynomial::constant(1.0);
    }
    const Matrix h = (n > 2) ? Matrix(Eigen::HessenbergDecomposition<Matrix>(a).matrixH()) : a;

    // p[k] is det(xI - H_k) for the leading k x k block.
    std::vector<Polynomial> p;
    p.reserve(static_cast<std::size_t>(n) + 1);
    p.push_back(Polynomial::constant(1.0));
    for (Eigen::Index k = 0; k < n; ++k) {
        Polynomial next = Polynomial({1.0, -h(k, k)}) * p[static_cast<std::size_t>(k)];
        double sub = 1.0;
        for (Eigen::Index i = k - 1; i >= 0; --i) {
            sub *= h(i + 1, i);
            next -= p[static_cast<std::size_t>(i)] * (h(i, k) * sub);
        }
        p.push_back(next);
    }
    // Keep the monic leading term exact even if cancellations trimmed it.
    std::vector<double> c = p.back().coeffs();
    c.insert(c.begin(), static_cast<std::size_t>(n) + 1 - c.size(), 0.0);
    c.front() = 1.0;
    return Polynomial(std::move(c));
}

TransferFunction ss_to_tf(const StateSpace& ss) {
    if (!ss.is_siso()) {
        throw ValidationError("ss_to_tf supports SISO systems only");
    }
    const Polynomial den = characteristic_polynomial(ss.A);
    const Polynomial closed = characteristic_polynomial(ss.A - ss.B * ss.C);
    Polynomial num = closed - den + den * ss.D(0, 0);
    return {num, den, ss.domain};
}

std::vector<Complex> eigenvalues(const Matrix& a) {
    if (a.rows() == 0) {
        return {};
    }
    Eigen::EigenSolver<Matrix> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalue iteration did not converge");
    }
    std::vector<Complex> out(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    }
    return out;
}

double spectral_radius(const Matrix& a) {
    double r = 0.0;
    for (const Complex& l : eigenvalues(a)) {
        r = std::max(r, std::abs(l));
    }
    return r;
}

Stability is_stable(const StateSpace& ss, double boundary_tol) {
    const auto ev = eigenvalues(ss.A);
    return stability_of_poles(ev, ss.domain, boundary_tol);
}

MinimalityReport minimality(const StateSpace& ss, double rank_tol) {
    const Eigen::Index n = ss.states();
    if (n == 0) {
        return {true, true};
    }
    Matrix ctrb(n, n * ss.inputs());
    Matrix obsv(n * ss.outputs(), n);
    Matrix block_b = ss.B;
    Matrix block_c = ss.C;
    for (Eigen::Index k = 0; k < n; ++k) {
        ctrb.middleCols(k * ss.inputs(), ss.inputs()) = block_b;
        obsv.middleRows(k * ss.outputs(), ss.outputs()) = block_c;
        block_b = ss.A * block_b;
        block_c = block_c * ss.A;
    }
    Eigen::ColPivHouseholderQR<Matrix> qc(ctrb);
    qc.setThreshold(rank_tol);
    Eigen::ColPivHouseholderQR<Matrix> qo(obsv);
    qo.setThreshold(rank_tol);
    return {qc.rank() == n, qo.rank() == n};
}

StateSpace discretize_zoh(const StateSpace& continuous, double period) {
    if (continuous.domain.is_discrete()) {
        throw ValidationError("discretize_zoh expects a continuous system");
    }
    const Domain target = Domain::discrete(period);
    const Eigen::Index n = continuous.states();
    const Eigen::Index m = continuous.inputs();
    if (n == 0) {
        return {continuous.A, continuous.B, continuous.C, continuous.D, target};
    }
    Matrix aug = Matrix::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = continuous.A * period;
    aug.topRightCorner(n, m) = continuous.B * period;
    const Matrix phi = aug.exp();
    return {phi.topLeftCorner(n, n), phi.topRightCorner(n, m), continuous.C, continuous.D, target};
}

StateSpace parallel(std::span<const StateSpace> parts) {
    if (parts.empty()) {
        throw ValidationError("parallel connection needs at least one system");
    }
    Eigen::Index n = 0;
    for (const auto& p : parts) {
        if (!p.is_siso()) {
            throw ValidationError("parallel connection supports SISO parts only");
        }
        if (!(p.domain == parts.front().domain)) {
            throw ValidationError("parallel parts must share a domain");
        }
        n += p.states();
    }
    Matrix A = Matrix::Zero(n, n);
    Matrix B = Matrix::Zero(n, 1);
    Matrix C = Matrix::Zero(1, n);
    double d = 0.0;
    Eigen::Index off = 0;
    for (const auto& p : parts) {
        const auto k = p.states();
        A.block(off, off, k, k) = p.A;
        B.middleRows(off, k) = p.B;
        C.middleCols(off, k) = p.C;
        d += p.D(0, 0);
        off += k;
    }
    return {A, B, C, Matrix::Constant(1, 1, d), parts.front().domain};
}

}  // namespace mrc::lti
