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

#include "mrc/lti/partial_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mrc/errors.hpp"

namespace mrc::lti {

TransferFunction FirstOrderBlock::tf(const Domain& d) const {
    return {Polynomial::constant(residue), Polynomial({1.0, -pole}), d};
}

TransferFunction SecondOrderBlock::tf(const Domain& d) const { return {num, den, d}; }

StateSpace realize(const FirstOrderBlock& b, const Domain& d) { return tf_to_ss(b.tf(d)); }

StateSpace realize(const SecondOrderBlock& b, const Domain& d) { return tf_to_ss(b.tf(d)); }

StateSpace realize(const ParallelForm& pf) {
    std::vector<StateSpace> parts{StateSpace::gain(pf.direct, pf.domain)};
    for (const auto& b : pf.first_order) {
        parts.push_back(realize(b, pf.domain));
    }
    for (const auto& b : pf.second_order) {
        parts.push_back(realize(b, pf.domain));
    }
    return parallel(parts);
}

TransferFunction ParallelForm::recombine() const {
    TransferFunction acc = TransferFunction::gain(direct, domain);
    for (const auto& b : first_order) {
        acc = add(acc, b.tf(domain));
    }
    for (const auto& b : second_order) {
        acc = add(acc, b.tf(domain));
    }
    return acc;
}

std::vector<std::string> ParallelForm::block_ids() const {
    std::vector<std::string> ids;
    for (const auto& b : first_order) {
        ids.push_back(b.id);
    }
    for (const auto& b : second_order) {
        ids.push_back(b.id);
    }
    return ids;
}

const FirstOrderBlock* ParallelForm::find_first_order(const std::string& id) const {
    auto it = std::find_if(first_order.begin(), first_order.end(), [&](const auto& b) { return b.id == id; });
    return it == first_order.end() ? nullptr : &*it;
}

const SecondOrderBlock* ParallelForm::find_second_order(const std::string& id) const {
    auto it = std::find_if(second_order.begin(), second_order.end(), [&](const auto& b) { return b.id == id; });
    return it == second_order.end() ? nullptr : &*it;
}

bool ParallelForm::has_block(const std::string& id) const {
    return find_first_order(id) != nullptr || find_second_order(id) != nullptr;
}

namespace {

struct PoleGroup {
    Complex pole;  // representative (upper half-plane for pairs)
    bool pair;
};

std::string block_id(std::size_t first_index, bool pair) {
    if (!pair) {
        return fmt::format("b{}", first_index);
    }
    if (first_index + 1 < 10) {
        return fmt::format("b{}{}", first_index, first_index + 1);
    }
    return fmt::format("b{}_{}", first_index, first_index + 1);
}

}  // namespace

ParallelForm partial_fraction(const TransferFunction& tf, const PartialFractionOptions& opts) {
    if (!tf.is_proper()) {
        throw ValidationError("partial fraction expansion needs a proper transfer function");
    }
    const TransferFunction norm = tf.normalized();
    ParallelForm pf;
    pf.domain = tf.domain();

    Polynomial remainder = norm.num();
    if (!norm.num().is_zero() && norm.num().degree() == norm.den().degree()) {
        auto div = norm.num().divide(norm.den());
        pf.direct = div.quotient.leading();
        remainder = div.remainder;
    }
    if (norm.den().degree() == 0) {
        pf.direct = norm.num().is_zero() ? 0.0 : norm.num()(0.0);
        return pf;
    }

    std::vector<Complex> poles = norm.den().roots();
    for (std::size_t i = 0; i < poles.size(); ++i) {
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (std::abs(poles[i] - poles[j]) < opts.cluster_tol) {
                throw ValidationError(fmt::format("repeated pole near ({:.9g}, {:.9g}); only simple poles are supported",
                                                  poles[i].real(), poles[i].imag()));
            }
        }
    }

    std::vector<PoleGroup> groups;
    for (Complex& p : poles) {
        if (std::abs(p.imag()) <= opts.real_tol * std::max(1.0, std::abs(p))) {
            groups.push_back({Complex{p.real(), 0.0}, false});
        } else if (p.imag() > 0.0) {
            groups.push_back({p, true});
        }
    }
    const std::size_t counted = std::accumulate(groups.begin(), groups.end(), std::size_t{0},
                                                [](std::size_t n, const PoleGroup& g) { return n + (g.pair ? 2 : 1); });
    if (counted != poles.size()) {
        throw NumericalError("complex poles could not be paired into conjugates");
    }

    const bool discrete = pf.domain.is_discrete();
    std::stable_sort(groups.begin(), groups.end(), [discrete](const PoleGroup& a, const PoleGroup& b) {
        const double ma = std::abs(a.pole);
        const double mb = std::abs(b.pole);
        if (ma != mb) {
            return discrete ? ma > mb : ma < mb;
        }
        return a.pole.real() > b.pole.real();
    });

    std::vector<Complex> all_poles;
    for (const auto& g : groups) {
        all_poles.push_back(g.pole);
        if (g.pair) {
            all_poles.push_back(std::conj(g.pole));
        }
    }

    auto residue_at = [&](std::size_t idx) {
        Complex denom{1.0, 0.0};
        for (std::size_t j = 0; j < all_poles.size(); ++j) {
            if (j != idx) {
                denom *= all_poles[idx] - all_poles[j];
            }
        }
        return remainder(all_poles[idx]) / denom;
    };

    std::size_t pole_index = 0;
    std::size_t label = 1;
    for (const auto& g : groups) {
        const Complex r = residue_at(pole_index);
        if (!g.pair) {
            if (std::abs(r.imag()) > opts.imag_residue_tol * std::max(1.0, std::abs(r))) {
                throw NumericalError("residue of a real pole has a non-negligible imaginary part");
            }
            pf.first_order.push_back({block_id(label, false), r.real(), g.pole.real()});
            pole_index += 1;
            label += 1;
        } else {
            const Complex a = g.pole;
            SecondOrderBlock b;
            b.id = block_id(label, true);
            b.num = Polynomial({2.0 * r.real(), -2.0 * (r * std::conj(a)).real()});
            b.den = Polynomial({1.0, -2.0 * a.real(), std::norm(a)});
            pf.second_order.push_back(std::move(b));
            pole_index += 2;
            label += 2;
        }
    }
    return pf;
}

}  // namespace mrc::lti
