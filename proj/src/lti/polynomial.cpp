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

#include "mrc/lti/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mrc/errors.hpp"

namespace mrc::lti {

namespace {

// Parlett-Reinsch balancing, radix 2. Companion matrices of polynomials with
// widely spread coefficients lose several digits in the QR iteration without it.
void balance(Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

Complex horner(const std::vector<double>& c, Complex x) {
    Complex acc{0.0, 0.0};
    for (double v : c) {
        acc = acc * x + v;
    }
    return acc;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> highest_first) : coeffs_(std::move(highest_first)) {
    normalize();
}

Polynomial Polynomial::monomial(std::size_t degree, double c) {
    std::vector<double> v(degree + 1, 0.0);
    v[0] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double gain) {
    std::vector<Complex> acc{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] += acc[i];
            next[i + 1] -= acc[i] * r;
        }
        acc = std::move(next);
    }
    std::vector<double> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [gain](Complex c) { return gain * c.real(); });
    return Polynomial(std::move(out));
}

void Polynomial::normalize() {
    if (coeffs_.empty()) {
        coeffs_ = {0.0};
        return;
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw ValidationError("polynomial coefficient is not finite");
        }
    }
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; });
    if (first == coeffs_.end()) {
        coeffs_ = {0.0};
    } else {
        coeffs_.erase(coeffs_.begin(), first);
    }
}

double Polynomial::operator[](std::size_t power) const {
    if (power > degree()) {
        return 0.0;
    }
    return coeffs_[degree() - power];
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * x + c;
    }
    return acc;
}

Complex Polynomial::operator()(Complex x) const { return horner(coeffs_, x); }

Polynomial Polynomial::derivative() const {
    if (degree() == 0) {
        return Polynomial{};
    }
    std::vector<double> d(degree());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = coeffs_[i] * static_cast<double>(degree() - i);
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) {
        throw ValidationError("zero polynomial has no monic form");
    }
    return *this * (1.0 / leading());
}

Polynomial Polynomial::trimmed(double rel_tol) const {
    double scale = 0.0;
    for (double c : coeffs_) {
        scale = std::max(scale, std::abs(c));
    }
    std::vector<double> v = coeffs_;
    std::size_t k = 0;
    while (k + 1 < v.size() && std::abs(v[k]) <= rel_tol * scale) {
        ++k;
    }
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return Polynomial(std::move(v));
}

std::vector<Complex> Polynomial::roots() const {
    if (is_zero()) {
        throw ValidationError("roots of the zero polynomial are undefined");
    }
    const std::size_t n = degree();
    std::vector<Complex> out;
    if (n == 0) {
        return out;
    }
    // Exact zero roots are split off so they come back as exact zeros.
    std::size_t zeros_at_origin = 0;
    while (zeros_at_origin < n && coeffs_[n - zeros_at_origin] == 0.0) {
        ++zeros_at_origin;
    }
    const std::size_t m = n - zeros_at_origin;
    if (m > 0) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t j = 0; j < m; ++j) {
            companion(0, static_cast<Eigen::Index>(j)) = -coeffs_[j + 1] / coeffs_[0];
        }
        for (std::size_t i = 1; i < m; ++i) {
            companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        }
        balance(companion);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("companion eigenvalue iteration did not converge");
        }
        const std::vector<double> reduced(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(m + 1));
        const Polynomial p(reduced);
        const Polynomial dp = p.derivative();
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            Complex r = solver.eigenvalues()[i];
            // One guarded Newton polish; kept only if it lowers the residual.
            const Complex d = dp(r);
            if (std::abs(d) > 0.0) {
                const Complex candidate = r - p(r) / d;
                if (std::abs(p(candidate)) < std::abs(p(r)) && (r.imag() == 0.0) == (candidate.imag() == 0.0)) {
                    r = candidate;
                }
            }
            out.push_back(r);
        }
    }
    out.insert(out.end(), zeros_at_origin, Complex{0.0, 0.0});
    return out;
}

Polynomial::Division Polynomial::divide(const Polynomial& divisor) const {
    if (divisor.is_zero()) {
        throw ValidationError("polynomial division by zero");
    }
    if (degree() < divisor.degree()) {
        return {Polynomial{}, *this};
    }
    std::vector<double> rem = coeffs_;
    const std::size_t qn = degree() - divisor.degree() + 1;
    std::vector<double> q(qn, 0.0);
    for (std::size_t i = 0; i < qn; ++i) {
        const double f = rem[i] / divisor.leading();
        q[i] = f;
        for (std::size_t j = 0; j < divisor.coeffs_.size(); ++j) {
            rem[i + j] -= f * divisor.coeffs_[j];
        }
        rem[i] = 0.0;
    }
    std::vector<double> r(rem.begin() + static_cast<std::ptrdiff_t>(qn), rem.end());
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    const std::size_t n = std::max(coeffs_.size(), rhs.coeffs_.size());
    std::vector<double> out(n, 0.0);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(n - coeffs_.size()));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        out[n - rhs.coeffs_.size() + i] += rhs.coeffs_[i];
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += rhs * -1.0; }

Polynomial& Polynomial::operator*=(double k) {
    for (double& c : coeffs_) {
        c *= k;
    }
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

double relative_coefficient_error(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::max(a.degree(), b.degree()) + 1;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        num = std::max(num, std::abs(a[p] - b[p]));
        den = std::max(den, std::abs(b[p]));
    }
    if (den == 0.0) {
        return num;
    }
    return num / den;
}

}  // namespace mrc::lti
