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

// Shared test helpers: shipped fixtures and seeded random systems.

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mrc/interlace/interlace.hpp"
#include "mrc/io/json.hpp"
#include "mrc/lti/partial_fraction.hpp"
#include "mrc/lti/state_space.hpp"

namespace mrc::test {

using lti::Complex;
using lti::Domain;
using lti::Polynomial;
using lti::TransferFunction;

inline std::filesystem::path data_file(const std::string& name) {
    return std::filesystem::path(MRC_DATA_DIR) / name;
}

inline TransferFunction full_order_controller() { return io::read_tf(data_file("c0.json")); }
inline TransferFunction reduced_controller() { return io::read_tf(data_file("c5.json")); }
inline TransferFunction discrete_controller() { return io::read_tf(data_file("cd.json")); }
inline TransferFunction nominal_plant() { return io::read_tf(data_file("plant_nominal.json")); }

inline constexpr double kPeriod = 0.01;

/// Lane-keeping plan: b1, b2, b3 slow in that order, b45 fast.
inline interlace::InterlacePlan lane_keeping_plan(const lti::ParallelForm& pf,
                                                  interlace::InputStrategy in = interlace::InputStrategy::I1,
                                                  interlace::OutputStrategy out = interlace::OutputStrategy::O1) {
    const auto part = interlace::classify_poles(pf, interlace::Explicit{{"b1", "b2", "b3"}});
    return interlace::make_plan(part, {"b1", "b2", "b3"}, in, out);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Distinct poles, conjugate pairs first then real ones, all strictly stable
/// and at least `gap` apart.
inline std::vector<Complex> random_poles(std::mt19937_64& rng, std::size_t order, const Domain& domain,
                                         double gap = 0.05) {
    std::vector<Complex> poles;
    auto far_enough = [&](Complex p) {
        const bool apart =
            std::all_of(poles.begin(), poles.end(), [&](Complex q) { return std::abs(p - q) > gap; });
        return apart && (p.imag() == 0.0 || std::abs(p.imag()) > gap / 2);
    };
    const std::size_t pairs = std::uniform_int_distribution<std::size_t>(0, order / 2)(rng);
    while (poles.size() < 2 * pairs) {
        Complex p;
        if (domain.is_discrete()) {
            p = std::polar(uniform(rng, 0.3, 0.95), uniform(rng, 0.1, 2.5));
        } else {
            p = {uniform(rng, -5.0, -0.3), uniform(rng, 0.3, 5.0)};
        }
        if (far_enough(p) && far_enough(std::conj(p))) {
            poles.push_back(p);
            poles.push_back(std::conj(p));
        }
    }
    while (poles.size() < order) {
        const Complex p = domain.is_discrete() ? Complex{uniform(rng, -0.9, 0.95), 0.0}
                                               : Complex{uniform(rng, -10.0, -0.2), 0.0};
        if (far_enough(p)) {
            poles.push_back(p);
        }
    }
    return poles;
}

/// Proper (not strictly) stable transfer function with simple poles.
inline TransferFunction random_stable_tf(std::mt19937_64& rng, std::size_t order, const Domain& domain) {
    const auto poles = random_poles(rng, order, domain);
    std::vector<double> num(order + 1);
    for (double& c : num) {
        c = uniform(rng, -1.0, 1.0);
    }
    num.front() = uniform(rng, 0.2, 1.0);
    return {Polynomial(num), Polynomial::from_roots(poles), domain};
}

/// Discrete parallel form with `slow` first-order blocks near z = 1 and a mix
/// of fast first- and second-order blocks.
inline lti::ParallelForm random_parallel_form(std::mt19937_64& rng, int slow, int fast_first, int fast_second,
                                              double period = kPeriod) {
    lti::ParallelForm pf;
    pf.domain = Domain::discrete(period);
    pf.direct = uniform(rng, -2.0, 2.0);
    int id = 1;
    for (int i = 0; i < slow; ++i) {
        pf.first_order.push_back({"b" + std::to_string(id++), uniform(rng, -1.0, 1.0), uniform(rng, 0.9, 1.0)});
    }
    for (int i = 0; i < fast_first; ++i) {
        pf.first_order.push_back({"b" + std::to_string(id++), uniform(rng, -1.0, 1.0), uniform(rng, -0.8, 0.8)});
    }
    for (int i = 0; i < fast_second; ++i) {
        const Complex p = std::polar(uniform(rng, 0.4, 0.9), uniform(rng, 0.2, 2.0));
        const std::string name = "b" + std::to_string(id) + std::to_string(id + 1);
        id += 2;
        pf.second_order.push_back({name, Polynomial({uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}),
                                   Polynomial({1.0, -2.0 * p.real(), std::norm(p)})});
    }
    return pf;
}

inline std::vector<double> random_signal(std::mt19937_64& rng, std::size_t length) {
    std::vector<double> out(length);
    for (double& v : out) {
        v = uniform(rng, -1.0, 1.0);
    }
    return out;
}

inline double db(double magnitude) { return 20.0 * std::log10(magnitude); }

}  // namespace mrc::test
