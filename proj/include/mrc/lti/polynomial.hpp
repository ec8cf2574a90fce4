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

#include <complex>
#include <span>
#include <vector>

namespace mrc::lti {

using Complex = std::complex<double>;

/// Dense real polynomial, coefficients stored highest degree first.
///
/// The leading coefficient is nonzero unless the polynomial is identically
/// zero, in which case the representation is the single coefficient {0}.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> highest_first);
    Polynomial(std::initializer_list<double> highest_first)
        : Polynomial(std::vector<double>(highest_first)) {}

    static Polynomial constant(double c) { return Polynomial({c}); }
    /// z^degree scaled by c.
    static Polynomial monomial(std::size_t degree, double c = 1.0);
    /// Monic product of (x - r) over the roots, scaled by gain. Complex roots
    /// must come in conjugate pairs; the imaginary residue of the product is
    /// discarded.
    static Polynomial from_roots(std::span<const Complex> roots, double gain = 1.0);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double leading() const noexcept { return coeffs_.front(); }
    double operator[](std::size_t power) const;  // coefficient of x^power

    double operator()(double x) const;
    Complex operator()(Complex x) const;

    Polynomial derivative() const;
    Polynomial monic() const;
    /// Zeroes leading coefficients whose magnitude is below tol * max|coeff|.
    Polynomial trimmed(double rel_tol) const;

    /// Roots via eigenvalues of the (balanced) companion matrix.
    std::vector<Complex> roots() const;

    struct Division;
    Division divide(const Polynomial& divisor) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(double k);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double k) { return a *= k; }
    friend Polynomial operator*(double k, Polynomial a) { return a *= k; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void normalize();
    std::vector<double> coeffs_;
};

struct Polynomial::Division {
    Polynomial quotient;
    Polynomial remainder;
};

/// max_i |a_i - b_i| / max_i |b_i| over the zero-padded coefficient vectors.
double relative_coefficient_error(const Polynomial& a, const Polynomial& b);

}  // namespace mrc::lti
