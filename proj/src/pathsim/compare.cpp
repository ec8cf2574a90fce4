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
#include <future>

#include "mrc/pathsim/pathsim.hpp"

namespace mrc::pathsim {

const Deviation* ComparisonReport::find(const std::string& a, const std::string& b) const {
    for (const auto& d : deviations) {
        if ((d.a == a && d.b == b) || (d.a == b && d.b == a)) {
            return &d;
        }
    }
    return nullptr;
}

ComparisonReport compare(const std::vector<SimResult>& results) {
    if (results.empty()) {
        throw ValidationError("nothing to compare");
    }
    ComparisonReport rep;
    rep.scenario = results.front().scenario;
    for (const auto& r : results) {
        if (r.scenario != rep.scenario || r.t.size() != results.front().t.size()) {
            throw ValidationError("compared results come from different scenarios");
        }
        rep.metrics.emplace_back(r.implementation, r.metrics);
        rep.costs.push_back({r.implementation, r.cost.worst_multiplies, r.cost.mean_multiplies, r.cost.worst_adds,
                             r.cost.mean_adds});
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            const auto& a = results[i];
            const auto& b = results[j];
            Deviation d{a.implementation, b.implementation, {}, 0.0, 0.0};
            d.distance.reserve(a.t.size());
            double acc = 0.0;
            for (std::size_t k = 0; k < a.t.size(); ++k) {
                const double dist = std::hypot(a.x[k] - b.x[k], a.y[k] - b.y[k]);
                d.distance.push_back(dist);
                acc += dist * dist;
                d.max = std::max(d.max, dist);
            }
            d.rms = a.t.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(a.t.size()));
            rep.deviations.push_back(std::move(d));
        }
    }
    return rep;
}

std::vector<SimResult> simulate_all(const Scenario& scenario,
                                    const std::vector<interlace::ControllerVariant>& controllers) {
    std::vector<std::future<SimResult>> jobs;
    jobs.reserve(controllers.size());
    for (const auto& c : controllers) {
        jobs.push_back(std::async(std::launch::async, [&scenario, &c] { return simulate(scenario, c); }));
    }
    std::vector<SimResult> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) {
        out.push_back(j.get());
    }
    return out;
}

}  // namespace mrc::pathsim
