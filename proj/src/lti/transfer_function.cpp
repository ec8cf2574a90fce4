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

#include "mrc/lti/transfer_function.hpp"

#include <cmath>
#include <limits>

#include "mrc/errors.hpp"

namespace mrc::lti {

Domain Domain::discrete(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ValidationError("discrete sample period must be positive and finite");
    }
    Domain d;
    d.period_ = period;
    return d;
}

double Domain::period() const {
    if (!period_) {
        throw ValidationError("continuous domain has no sample period");
    }
    return *period_;
}

const char* to_string(Stability s) noexcept {
    switch (s) {
        case Stability::Stable:
            return "stable";
        case Stability::Marginal:
            return "marginal";
        case Stability::Unstable:
            return "unstable";
    }
    return "unknown";
}

TransferFunction::TransferFunction(Polynomial num, Polynomial den, Domain domain)
    : num_(std::move(num)), den_(std::move(den)), domain_(domain) {
    if (den_.is_zero()) {
        throw ValidationError("transfer function denominator is the zero polynomial");
    }
}

TransferFunction TransferFunction::normalized() const {
    const double lead = den_.leading();
    return {num_ * (1.0 / lead), den_ * (1.0 / lead), domain_};
}

double TransferFunction::dc_gain() const {
    const double x = domain_.is_discrete() ? 1.0 : 0.0;
    const double d = den_(x);
    if (d == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return num_(x) / d;
}

std::vector<Complex> TransferFunction::zeros() const {
    if (num_.is_zero()) {
        return {};
    }
    return num_.roots();
}

std::vector<Complex> freq_response(const TransferFunction& tf, std::span<const double> omegas) {
    std::vector<Complex> out;
    out.reserve(omegas.size());
    for (double w : omegas) {
        const Complex x = tf.domain().is_discrete() ? std::polar(1.0, w * tf.domain().period()) : Complex{0.0, w};
        out.push_back(tf(x));
    }
    return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw ValidationError("logspace needs 0 < lo < hi and at least two points");
    }
    std::vector<double> out(count);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return out;
}

Stability stability_of_poles(std::span<const Complex> poles, const Domain& domain, double boundary_tol) {
    Stability verdict = Stability::Stable;
    for (const Complex& p : poles) {
        const double margin = domain.is_discrete() ? std::abs(p) - 1.0 : p.real();
        if (margin > boundary_tol) {
            return Stability::Unstable;
        }
        if (margin >= -boundary_tol) {
            verdict = Stability::Marginal;
        }
    }
    return verdict;
}

Stability is_stable(const TransferFunction& tf, double boundary_tol) {
    const auto p = tf.poles();
    return stability_of_poles(p, tf.domain(), boundary_tol);
}

TransferFunction add(const TransferFunction& a, const TransferFunction& b) {
    if (!(a.domain() == b.domain())) {
        throw ValidationError("cannot add transfer functions from different domains");
    }
    return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den(), a.domain()};
}

double relative_tf_error(const TransferFunction& a, const TransferFunction& b) {
    const auto na = a.normalized();
    const auto nb = b.normalized();
    return std::max(relative_coefficient_error(na.num(), nb.num()), relative_coefficient_error(na.den(), nb.den()));
}

}  // namespace mrc::lti
