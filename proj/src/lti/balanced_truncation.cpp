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

#include "mrc/lti/balanced_truncation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "mrc/errors.hpp"

namespace mrc::lti {

namespace {

// Factor L with L Lᵀ = X for a symmetric positive semidefinite X; tiny negative
// eigenvalues from roundoff are clamped to zero.
Matrix psd_factor(const Matrix& x) {
    const Matrix sym = 0.5 * (x + x.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const Vector w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * w.asDiagonal();
}

}  // namespace

Matrix solve_lyapunov(const Matrix& a, const Matrix& q, const Domain& domain) {
    // Bartels-Stewart on the complex Schur form A = U T Uᴴ, column by column
    // from the last.
    const Eigen::Index n = a.rows();
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    Eigen::ComplexSchur<Matrix> schur(a);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("Schur decomposition failed in the Lyapunov solver");
    }
    const CMatrix& t = schur.matrixT();
    const CMatrix& u = schur.matrixU();
    const CMatrix qt = u.adjoint() * q.cast<Complex>() * u;
    const CMatrix eye = CMatrix::Identity(n, n);
    const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    CMatrix y = CMatrix::Zero(n, n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        CVector tail = CVector::Zero(n);
        for (Eigen::Index k = j + 1; k < n; ++k) {
            tail += std::conj(t(j, k)) * y.col(k);
        }
        CMatrix op;
        CVector rhs;
        if (domain.is_discrete()) {
            // Y - T Y Tᴴ = Q
            op = eye - std::conj(t(j, j)) * t;
            rhs = qt.col(j) + t * tail;
        } else {
            // T Y + Y Tᴴ = -Q
            op = t + std::conj(t(j, j)) * eye;
            rhs = -qt.col(j) - tail;
        }
        const CVector d = op.diagonal();
        if (d.cwiseAbs().minCoeff() <= 1e-14 * (domain.is_discrete() ? 1.0 : scale)) {
            throw NumericalError("Lyapunov operator is singular (eigenvalues on the stability boundary)");
        }
        y.col(j) = op.triangularView<Eigen::Upper>().solve(rhs);
    }
    const Matrix out = (u * y * u.adjoint()).real();
    return 0.5 * (out + out.transpose());
}

Gramians gramians(const StateSpace& ss) {
    return {solve_lyapunov(ss.A, ss.B * ss.B.transpose(), ss.domain),
            solve_lyapunov(ss.A.transpose(), ss.C.transpose() * ss.C, ss.domain)};
}

BalancedTruncation balanced_truncate(const StateSpace& ss, std::size_t target_order) {
    const auto n = static_cast<std::size_t>(ss.states());
    if (target_order > n) {
        throw ValidationError(fmt::format("target order {} exceeds the system order {}", target_order, n));
    }
    if (is_stable(ss) != Stability::Stable) {
        throw ValidationError("balanced truncation requires a strictly stable system");
    }
    BalancedTruncation out{ss, {}, 0.0};
    if (n == 0) {
        return out;
    }

    const Gramians g = gramians(ss);
    const Matrix lc = psd_factor(g.controllability);
    const Matrix lo = psd_factor(g.observability);
    Eigen::JacobiSVD<Matrix> svd(lo.transpose() * lc, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& sigma = svd.singularValues();
    out.hankel_values.assign(sigma.data(), sigma.data() + sigma.size());
    for (std::size_t i = target_order; i < n; ++i) {
        out.error_bound += 2.0 * out.hankel_values[i];
    }

    const auto r = static_cast<Eigen::Index>(target_order);
    if (r == 0) {
        out.reduced = StateSpace(Matrix(0, 0), Matrix(0, ss.inputs()), Matrix(ss.outputs(), 0), ss.D, ss.domain);
        return out;
    }
    if (!(sigma(r - 1) > 1e-13 * sigma(0))) {
        throw NumericalError(
            fmt::format("retained Hankel value {} is numerically zero; the realization is not minimal at order {}",
                        target_order, target_order));
    }
    const Vector inv_sqrt = sigma.head(r).cwiseSqrt().cwiseInverse();
    const Matrix t = lc * svd.matrixV().leftCols(r) * inv_sqrt.asDiagonal();
    const Matrix t_inv = inv_sqrt.asDiagonal() * svd.matrixU().leftCols(r).transpose() * lo.transpose();
    out.reduced = StateSpace(t_inv * ss.A * t, t_inv * ss.B, ss.C * t, ss.D, ss.domain);
    return out;
}

double max_error_on_grid(const TransferFunction& g, const TransferFunction& gr, std::span<const double> omegas) {
    const auto a = freq_response(g, omegas);
    const auto b = freq_response(gr, omegas);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace mrc::lti
