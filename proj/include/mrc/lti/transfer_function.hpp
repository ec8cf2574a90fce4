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
#include <span>
#include <vector>

#include "mrc/lti/polynomial.hpp"

namespace mrc::lti {

/// Continuous time, or discrete time with a strictly positive sample period.
class Domain {
public:
    static Domain continuous() noexcept { return Domain{}; }
    static Domain discrete(double period);

    bool is_discrete() const noexcept { return period_.has_value(); }
    bool is_continuous() const noexcept { return !period_.has_value(); }
    /// Sample period in seconds; throws ValidationError for continuous domains.
    double period() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Domain() = default;
    std::optional<double> period_;
};

enum class Stability { Stable, Marginal, Unstable };

const char* to_string(Stability s) noexcept;

/// Real rational transfer function num/den in s (continuous) or z (discrete).
class TransferFunction {
public:
    TransferFunction(Polynomial num, Polynomial den, Domain domain = Domain::continuous());

    static TransferFunction gain(double k, Domain domain = Domain::continuous()) {
        return {Polynomial::constant(k), Polynomial::constant(1.0), domain};
    }

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    const Domain& domain() const noexcept { return domain_; }

    bool is_proper() const noexcept { return num_.degree() <= den_.degree(); }
    bool is_strictly_proper() const noexcept { return num_.is_zero() || num_.degree() < den_.degree(); }
    std::size_t order() const noexcept { return den_.degree(); }

    /// Same transfer function with a monic denominator.
    TransferFunction normalized() const;

    Complex operator()(Complex x) const { return num_(x) / den_(x); }
    /// Value at s = 0 or z = 1 (infinite when a pole sits there).
    double dc_gain() const;

    std::vector<Complex> poles() const { return den_.roots(); }
    std::vector<Complex> zeros() const;

    friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

private:
    Polynomial num_;
    Polynomial den_;
    Domain domain_;
};

/// Evaluates at s = jω (continuous) or z = e^{jωT} (discrete).
std::vector<Complex> freq_response(const TransferFunction& tf, std::span<const double> omegas);

/// Logarithmically spaced grid of `count` points over [lo, hi].
std::vector<double> logspace(double lo, double hi, std::size_t count);

/// Open left half-plane / open unit disk. Poles within `boundary_tol` of the
/// boundary are reported as Marginal.
Stability stability_of_poles(std::span<const Complex> poles, const Domain& domain, double boundary_tol = 1e-9);
Stability is_stable(const TransferFunction& tf, double boundary_tol = 1e-9);

/// Parallel sum a + b over a common denominator (same domain required).
TransferFunction add(const TransferFunction& a, const TransferFunction& b);
/// max relative coefficient error after monic normalisation of both.
double relative_tf_error(const TransferFunction& a, const TransferFunction& b);

}  // namespace mrc::lti
