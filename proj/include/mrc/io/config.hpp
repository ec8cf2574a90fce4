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

// Run configuration, read from TOML (by extension .toml) or JSON. Relative
// file names resolve against the directory of the configuration file.
//
//   seed = 1
//   output_dir = "out"
//   [vehicle]      m, lf, lr, c_alpha_f, c_alpha_r, iz,
//                  cornering_stiffness_unit = "kN/rad" | "N/rad"
//   [speed]        min, max, nominal
//   [plant]        source = "fixture" | "formula", file
//   [controller]   file, continuous_file, period, method = "mpz" | "zoh",
//                  snap_tol, target_order, slow_pole_threshold, drop_fast_pole
//   [interlace]    N, rule = "explicit" | "nyquist" | "relative", k, ratio,
//                  slow = [...], order = [...], input, output, phase
//   [scenario]     path, duration, lookahead, corridor, substeps, speed,
//                  integration = "rk4" | "exact_zoh", steering_limit

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mrc/interlace/interlace.hpp"
#include "mrc/io/json.hpp"
#include "mrc/lti/discretize.hpp"
#include "mrc/lti/reduction.hpp"
#include "mrc/pathsim/pathsim.hpp"
#include "mrc/vehicle/vehicle.hpp"

namespace mrc::io {

namespace fs = std::filesystem;

struct RunConfig {
    std::uint64_t seed = 1;
    fs::path output_dir = "out";

    vehicle::VehicleParams vehicle = vehicle::VehicleParams::test_bed();
    vehicle::SpeedRange speed;

    std::string plant_source = "fixture";
    std::optional<fs::path> plant_file;

    std::optional<fs::path> controller_file;             // discrete controller
    std::optional<fs::path> continuous_controller_file;  // for reduce / discretize
    double period = 0.01;
    lti::DiscretizationMethod method = lti::DiscretizationMethod::MatchedPoleZero;
    double snap_tol = lti::kDefaultSnapTolerance;
    lti::ReductionOptions reduction;

    interlace::ClassificationRule rule = interlace::Explicit{};
    /// Expected metaperiod factor; checked against the slow-block count.
    std::optional<int> n;
    std::vector<std::string> slot_order;
    interlace::InputStrategy input = interlace::InputStrategy::I1;
    interlace::OutputStrategy output = interlace::OutputStrategy::O1;
    int phase = 0;

    std::optional<fs::path> path_file;
    double duration = 14.0;
    double lookahead = pathsim::kDefaultLookahead;
    double corridor = pathsim::kDefaultCorridor;
    int substeps = 10;
    std::optional<double> constant_speed;
    pathsim::PlantIntegration integration = pathsim::PlantIntegration::Rk4;
    std::optional<double> steering_limit;

    /// Every referenced file exists and the numeric fields are in range.
    void validate() const;
};

RunConfig config_from_json(const Json& j, const fs::path& base_dir);
RunConfig load_config(const fs::path& file);

}  // namespace mrc::io
