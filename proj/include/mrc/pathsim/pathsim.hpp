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

// Closed-loop lane keeping: pure pursuit turns the path into a yaw-rate
// reference, the controller acts on the yaw-rate error at period T, and the
// continuous plant plus pose kinematics are integrated with the steering held
// between controller updates.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mrc/interlace/interlace.hpp"
#include "mrc/pathsim/path.hpp"
#include "mrc/vehicle/vehicle.hpp"

namespace mrc::pathsim {

struct PursuitCommand {
    double yaw_rate_ref = 0.0;
    double curvature = 0.0;
    Point goal;
    Path::Projection projection;
};

inline constexpr double kDefaultLookahead = 6.0;  // m
inline constexpr double kDefaultCorridor = 10.0;  // m

/// Goal point at arclength s_proj + L (held at the path end),
/// κ = 2 sin(α) / L with α the bearing of the goal relative to the heading,
/// and ψ̇_ref = Vx κ. Throws PathLostError beyond the corridor.
PursuitCommand pure_pursuit_ref(const vehicle::Pose& pose, const Path& path, double lookahead, double vx,
                                double corridor = kDefaultCorridor);

/// Plant built from the bicycle parameters at the current speed.
struct FormulaPlant {
    vehicle::VehicleParams params;
};
/// Fixed yaw-rate / steering transfer function; sideslip taken as zero.
struct FixturePlant {
    lti::TransferFunction tf;
};
using PlantSource = std::variant<FormulaPlant, FixturePlant>;

struct PursuitReference {
    double lookahead = kDefaultLookahead;
    double corridor = kDefaultCorridor;
};
/// Constant yaw-rate reference, for step-response runs.
struct ConstantYawRate {
    double value = 0.0;
};
using ReferenceMode = std::variant<PursuitReference, ConstantYawRate>;

enum class PlantIntegration {
    Rk4,      // RK4 on plant and pose at period / substeps
    ExactZoh  // plant sampled exactly at period / substeps; pose by RK4
};

struct Scenario {
    explicit Scenario(Path p) : path(std::move(p)) {}

    Path path;
    double period = 0.01;  // s
    int n = 3;             // metaperiod factor
    double duration = 10.0;
    ReferenceMode reference = PursuitReference{};
    /// Constant speed; when empty the path's per-waypoint speeds are used.
    std::optional<double> speed;
    /// Speed used for linear analysis (lifted closed loop).
    double nominal_speed = 6.0;
    PlantSource plant = FixturePlant{lti::TransferFunction::gain(0.0)};
    int substeps = 10;
    PlantIntegration integration = PlantIntegration::Rk4;
    std::optional<double> steering_limit;  // rad
    std::string label = "scenario";

    void validate() const;
    /// Plant model at speed vx, continuous, output yaw rate.
    lti::StateSpace plant_model(double vx) const;
    /// Stable textual identity used to check that results are comparable.
    std::string fingerprint() const;
};

struct Metrics {
    double rms_cross_track = 0.0;
    double max_cross_track = 0.0;
    double rms_yaw_rate_error = 0.0;
};

struct SimResult {
    std::string implementation;
    std::string scenario;  // fingerprint
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> psi;
    std::vector<double> delta;
    std::vector<double> yaw_rate;
    std::vector<double> yaw_rate_ref;
    std::vector<double> cross_track;
    /// Controller input, ψ̇_ref - ψ̇, as fed at each instant.
    std::vector<double> error;
    Metrics metrics;
    interlace::VariantCost cost;
    std::vector<std::string> warnings;

    void write_csv(const std::filesystem::path& file) const;
};

Metrics compute_metrics(const SimResult& r);

/// Label of a controller variant: "single_rate_fast", "single_rate_slow", "interlaced".
std::string variant_name(const interlace::ControllerVariant& v);

/// Deterministic closed-loop run. Throws PathLostError, or NumericalError
/// when any state exceeds 1e6 in magnitude.
SimResult simulate(const Scenario& scenario, const interlace::ControllerVariant& controller);

struct FeasibilityVerdict {
    bool stable = false;
    double spectral_radius = 0.0;
    double performance_ratio = 0.0;  // rms cross-track, slow / fast
    std::optional<std::string> failure;
};

/// Runs the whole controller at N T with a held output and checks the lifted
/// closed loop at the nominal speed.
FeasibilityVerdict feasibility_pretest(const Scenario& scenario, const interlace::ParallelForm& controller);

struct Deviation {
    std::string a;
    std::string b;
    std::vector<double> distance;  // pointwise Euclidean, per fast instant
    double rms = 0.0;
    double max = 0.0;
};

struct CostSummary {
    std::string implementation;
    int worst_multiplies = 0;
    double mean_multiplies = 0.0;
    int worst_adds = 0;
    double mean_adds = 0.0;
};

struct ComparisonReport {
    std::string scenario;
    std::vector<std::pair<std::string, Metrics>> metrics;
    std::vector<Deviation> deviations;  // every pair i < j
    std::vector<CostSummary> costs;

    const Deviation* find(const std::string& a, const std::string& b) const;
};

/// Throws ValidationError when the results come from different scenarios.
ComparisonReport compare(const std::vector<SimResult>& results);

/// Runs the variants concurrently, one worker per variant; results keep the
/// input order.
std::vector<SimResult> simulate_all(const Scenario& scenario,
                                    const std::vector<interlace::ControllerVariant>& controllers);

}  // namespace mrc::pathsim
