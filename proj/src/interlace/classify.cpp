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

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mrc/errors.hpp"
#include "mrc/interlace/interlace.hpp"

namespace mrc::interlace {

namespace {

struct BlockFrequency {
    std::string id;
    double omega;
};

std::vector<BlockFrequency> block_frequencies(const ParallelForm& pf) {
    const double t = pf.domain.period();
    std::vector<BlockFrequency> out;
    for (const auto& b : pf.first_order) {
        out.push_back({b.id, equivalent_frequency({b.pole, 0.0}, t)});
    }
    for (const auto& b : pf.second_order) {
        // Upper-half-plane member of the pair; both have the same |ln z|.
        lti::Complex upper{0.0, 0.0};
        for (const auto& p : b.poles()) {
            if (p.imag() >= upper.imag()) {
                upper = p;
            }
        }
        out.push_back({b.id, equivalent_frequency(upper, t)});
    }
    return out;
}

}  // namespace

double equivalent_frequency(lti::Complex z, double period) {
    if (z == lti::Complex{0.0, 0.0}) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(std::log(z)) / period;
}

PolePartition classify_poles(const ParallelForm& pf, const ClassificationRule& rule) {
    PolePartition out;
    const auto ids = pf.block_ids();

    if (const auto* e = std::get_if<Explicit>(&rule)) {
        for (const auto& id : e->slow) {
            if (!pf.has_block(id)) {
                throw ValidationError(fmt::format("explicit slow block '{}' is not in the controller", id));
            }
        }
        for (const auto& id : ids) {
            (e->slow.contains(id) ? out.slow : out.fast).push_back(id);
        }
        out.rule_used = "explicit";
        return out;
    }

    if (!pf.domain.is_discrete()) {
        throw ValidationError("frequency-based classification needs a discrete controller");
    }
    const auto freqs = block_frequencies(pf);
    double threshold = 0.0;
    if (const auto* nf = std::get_if<NyquistFraction>(&rule)) {
        if (!(nf->k > 0.0)) {
            throw ValidationError("Nyquist fraction k must be positive");
        }
        threshold = (std::numbers::pi / pf.domain.period()) / nf->k;
        out.rule_used = fmt::format("nyquist_fraction(k={:.9g})", nf->k);
    } else {
        const auto& rs = std::get<RelativeSeparation>(rule);
        if (!(rs.ratio > 0.0)) {
            throw ValidationError("relative separation ratio must be positive");
        }
        double fastest = 0.0;
        for (const auto& f : freqs) {
            if (std::isfinite(f.omega)) {
                fastest = std::max(fastest, f.omega);
            }
        }
        threshold = rs.ratio * fastest;
        out.rule_used = fmt::format("relative_separation(ratio={:.9g})", rs.ratio);
    }
    for (const auto& f : freqs) {
        if (!std::isfinite(f.omega)) {
            out.warnings.push_back(fmt::format("block {} has a pole at z = 0 (infinite frequency); classified fast", f.id));
            out.fast.push_back(f.id);
        } else if (f.omega < threshold) {
            out.slow.push_back(f.id);
        } else {
            out.fast.push_back(f.id);
        }
    }
    return out;
}

}  // namespace mrc::interlace
