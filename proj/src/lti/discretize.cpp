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

#include "mrc/lti/discretize.hpp"

#include <cmath>
#include <numbers>

#include "mrc/errors.hpp"
#include "mrc/lti/state_space.hpp"

namespace mrc::lti {

namespace {

Complex product_of_differences(Complex x, const std::vector<Complex>& roots) {
    Complex acc{1.0, 0.0};
    for (const Complex& r : roots) {
        acc *= x - r;
    }
    return acc;
}

bool has_origin_root(const std::vector<Complex>& roots) {
    for (const Complex& r : roots) {
        if (std::abs(r) < 1e-12) {
            return true;
        }
    }
    return false;
}

bool any_near_unity(const std::vector<Complex>& roots, double snap_tol) {
    for (const Complex& r : roots) {
        if (std::abs(r - 1.0) <= snap_tol && r != Complex{1.0, 0.0}) {
            return true;
        }
    }
    return false;
}

void require_continuous(const TransferFunction& tf, double period) {
    if (!tf.domain().is_continuous()) {
        throw ValidationError("discretization expects a continuous transfer function");
    }
    if (!(period > 0.0)) {
        throw ValidationError("sample period must be positive");
    }
}

}  // namespace

std::vector<Complex> snap_to_unity(std::vector<Complex> roots, double snap_tol) {
    for (Complex& r : roots) {
        if (std::abs(r - 1.0) <= snap_tol) {
            r = Complex{1.0, 0.0};
        }
    }
    return roots;
}

MatchedRoots matched_roots(const TransferFunction& tf_c, double period) {
    require_continuous(tf_c, period);
    MatchedRoots out;
    const auto cont_poles = tf_c.poles();
    const auto cont_zeros = tf_c.zeros();
    for (const Complex& p : cont_poles) {
        out.poles.push_back(std::exp(p * period));
    }
    for (const Complex& z : cont_zeros) {
        out.zeros.push_back(std::exp(z * period));
    }
    if (tf_c.num().is_zero()) {
        out.gain = 0.0;
        return out;
    }
    const double kc = tf_c.num().leading() / tf_c.den().leading();
    if (!has_origin_root(cont_poles) && !has_origin_root(cont_zeros)) {
        const Complex unit_gain = product_of_differences(1.0, out.zeros) / product_of_differences(1.0, out.poles);
        out.gain = tf_c.dc_gain() / unit_gain.real();
        out.matched_at = "dc";
    } else {
        const Complex s_nyq{0.0, std::numbers::pi / period};
        const double cont_mag = std::abs(tf_c(s_nyq));
        const double disc_mag =
            std::abs(product_of_differences(-1.0, out.zeros) / product_of_differences(-1.0, out.poles));
        out.gain = std::copysign(cont_mag / disc_mag, kc);
        out.matched_at = "nyquist";
    }
    return out;
}

TransferFunction discretize_mpz(const TransferFunction& tf_c, double period, double snap_tol) {
    const MatchedRoots m = matched_roots(tf_c, period);
    const Domain d = Domain::discrete(period);
    if (m.gain == 0.0) {
        return {Polynomial{}, Polynomial::from_roots(snap_to_unity(m.poles, snap_tol)), d};
    }
    const auto poles = snap_to_unity(m.poles, snap_tol);
    const auto zeros = snap_to_unity(m.zeros, snap_tol);
    return {Polynomial::from_roots(zeros, m.gain), Polynomial::from_roots(poles), d};
}

TransferFunction discretize_zoh(const TransferFunction& tf_c, double period, double snap_tol) {
    require_continuous(tf_c, period);
    const TransferFunction raw = ss_to_tf(discretize_zoh(tf_to_ss(tf_c), period)).normalized();
    const auto poles = raw.poles();
    if (raw.num().is_zero()) {
        return {Polynomial{}, Polynomial::from_roots(snap_to_unity(poles, snap_tol)), raw.domain()};
    }
    const auto zeros = raw.zeros();
    if (!any_near_unity(poles, snap_tol) && !any_near_unity(zeros, snap_tol)) {
        return raw;
    }
    return {Polynomial::from_roots(snap_to_unity(zeros, snap_tol), raw.num().leading()),
            Polynomial::from_roots(snap_to_unity(poles, snap_tol)), raw.domain()};
}

TransferFunction discretize(const TransferFunction& tf_c, double period, DiscretizationMethod method,
                            double snap_tol) {
    switch (method) {
        case DiscretizationMethod::MatchedPoleZero:
            return discretize_mpz(tf_c, period, snap_tol);
        case DiscretizationMethod::ZeroOrderHold:
            return discretize_zoh(tf_c, period, snap_tol);
    }
    throw ValidationError("unknown discretization method");
}

}  // namespace mrc::lti
