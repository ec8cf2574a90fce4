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

#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"

namespace mrc::interlace {

Polynomial w_polynomial(double alpha, int n) {
    if (n < 1) {
        throw ValidationError("W polynomial needs N >= 1");
    }
    std::vector<double> c(static_cast<std::size_t>(n));
    double power = 1.0;
    for (auto& v : c) {
        v = power;
        power *= alpha;
    }
    return Polynomial(std::move(c));
}

ResampledSlowBlock resample_slow_block(const lti::FirstOrderBlock& block, double period, int n) {
    if (n < 1) {
        throw ValidationError("resampling factor N must be at least 1");
    }
    const Polynomial w = w_polynomial(block.pole, n);
    double alpha_n = 1.0;
    for (int i = 0; i < n; ++i) {
        alpha_n *= block.pole;
    }
    // W(1) = 1 + α + ... + α^{N-1}
    const double gain = block.residue * w(1.0);
    TransferFunction tf(Polynomial::constant(gain), Polynomial({1.0, -alpha_n}),
                        lti::Domain::discrete(period * static_cast<double>(n)));
    return {block, n, std::move(tf), w};
}

lti::StateSpace resample_held_input(const lti::StateSpace& ss, int n) {
    if (n < 1) {
        throw ValidationError("resampling factor N must be at least 1");
    }
    if (!ss.domain.is_discrete()) {
        throw ValidationError("held-input resampling expects a discrete system");
    }
    const Eigen::Index k = ss.states();
    lti::Matrix a_pow = lti::Matrix::Identity(k, k);
    lti::Matrix b_sum = lti::Matrix::Zero(k, ss.inputs());
    for (int i = 0; i < n; ++i) {
        b_sum += a_pow * ss.B;
        a_pow = a_pow * ss.A;
    }
    return {a_pow, b_sum, ss.C, ss.D, lti::Domain::discrete(ss.domain.period() * static_cast<double>(n))};
}

}  // namespace mrc::interlace
