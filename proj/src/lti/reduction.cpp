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

#include "mrc/lti/reduction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mrc/errors.hpp"
#include "mrc/lti/state_space.hpp"

namespace mrc::lti {

namespace {

// Divides out (x - root). Backward recurrence from the constant term when the
// root is large, forward otherwise, so the deflation stays stable.
Polynomial deflate(const Polynomial& p, double root) {
    const std::size_t n = p.degree();
    if (std::abs(root) <= 1.0) {
        return p.divide(Polynomial({1.0, -root})).quotient;
    }
    std::vector<double> q(n);  // highest first
    double prev = 0.0;         // coefficient of x^(k-1) in the quotient
    for (std::size_t k = 0; k < n; ++k) {
        const double qk = (prev - p[k]) / root;
        q[n - 1 - k] = qk;
        prev = qk;
    }
    return Polynomial(q);
}

}  // namespace

TransferFunction remove_fast_pole(const TransferFunction& tf, double pole) {
    if (pole == 0.0) {
        throw ValidationError("cannot remove a pole at the origin with DC-gain compensation");
    }
    const auto poles = tf.poles();
    const bool found = std::any_of(poles.begin(), poles.end(), [pole](Complex p) {
        return std::abs(p - Complex{pole, 0.0}) <= 1e-6 * std::max(1.0, std::abs(pole));
    });
    if (!found) {
        throw ValidationError(fmt::format("pole {:.9g} is not a pole of the transfer function", pole));
    }
    const auto norm = tf.normalized();
    const Polynomial deflated = deflate(norm.den(), pole);
    // (s - p) evaluated at DC is -p.
    return {norm.num() * (1.0 / -pole), deflated, tf.domain()};
}

SlowSplit split_slow_poles(const TransferFunction& tf, double threshold) {
    if (!tf.is_proper()) {
        throw ValidationError("slow-pole split needs a proper transfer function");
    }
    const auto norm = tf.normalized();
    std::vector<double> slow;
    for (const Complex& p : norm.poles()) {
        if (std::abs(p.imag()) <= 1e-9 * std::max(1.0, std::abs(p)) && p.real() > -threshold) {
            slow.push_back(p.real());
        }
    }
    std::sort(slow.begin(), slow.end());
    if (slow.empty()) {
        return {TransferFunction(Polynomial{}, Polynomial::constant(1.0), tf.domain()), tf, {}};
    }
    for (std::size_t i = 1; i < slow.size(); ++i) {
        if (std::abs(slow[i] - slow[i - 1]) < 1e-7) {
            throw ValidationError("repeated slow poles cannot be split additively");
        }
    }

    Polynomial slow_den = Polynomial::constant(1.0);
    for (double p : slow) {
        slow_den = slow_den * Polynomial({1.0, -p});
    }
    const Polynomial rest_den = norm.den().divide(slow_den).quotient;

    Polynomial slow_num;
    for (std::size_t i = 0; i < slow.size(); ++i) {
        double others = 1.0;
        Polynomial others_poly = Polynomial::constant(1.0);
        for (std::size_t j = 0; j < slow.size(); ++j) {
            if (j != i) {
                others *= slow[i] - slow[j];
                others_poly = others_poly * Polynomial({1.0, -slow[j]});
            }
        }
        const double residue = norm.num()(slow[i]) / (rest_den(slow[i]) * others);
        slow_num += others_poly * residue;
    }
    // num = slow_num * rest_den + rest_num * slow_den
    const Polynomial rest_num = (norm.num() - slow_num * rest_den).divide(slow_den).quotient;
    return {TransferFunction(slow_num, slow_den, tf.domain()), TransferFunction(rest_num, rest_den, tf.domain()),
            slow};
}

ReductionReport reduce_controller(const TransferFunction& tf, const ReductionOptions& opts) {
    const SlowSplit split = split_slow_poles(tf, opts.slow_pole_threshold);
    if (opts.target_order < split.slow_poles.size()) {
        throw ValidationError("target order is smaller than the number of split-off slow poles");
    }
    const std::size_t rest_target = opts.target_order - split.slow_poles.size();
    const BalancedTruncation bt = balanced_truncate(tf_to_ss(split.rest), rest_target);

    TransferFunction reduced = ss_to_tf(bt.reduced);
    if (!split.slow_poles.empty()) {
        reduced = add(split.slow, reduced);
    }
    ReductionReport report{reduced.normalized(), bt.hankel_values, bt.error_bound, split.slow_poles, std::nullopt};

    if (opts.drop_fast_pole) {
        std::optional<double> fastest;
        for (const Complex& p : report.reduced.poles()) {
            if (std::abs(p.imag()) <= 1e-9 * std::max(1.0, std::abs(p)) &&
                (!fastest || std::abs(p.real()) > std::abs(*fastest))) {
                fastest = p.real();
            }
        }
        if (!fastest) {
            throw ValidationError("no real pole available to drop");
        }
        report.reduced = remove_fast_pole(report.reduced, *fastest);
        report.dropped_pole = fastest;
    }
    return report;
}

}  // namespace mrc::lti
