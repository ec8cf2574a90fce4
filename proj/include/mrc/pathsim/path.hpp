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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "mrc/errors.hpp"
#include "mrc/vehicle/vehicle.hpp"

namespace mrc::pathsim {

/// The vehicle left the tracking corridor around the path.
class PathLostError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct Waypoint {
    double x = 0.0;
    double y = 0.0;
    std::optional<double> v;  // m/s
    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Polyline through waypoints, parametrised by arclength.
class Path {
public:
    /// Needs at least two waypoints, consecutive points more than 1e-6 m apart,
    /// and either all or none of the speeds.
    explicit Path(std::vector<Waypoint> waypoints);

    const std::vector<Waypoint>& waypoints() const noexcept { return waypoints_; }
    /// Cumulative arclength at each waypoint; front() == 0.
    const std::vector<double>& arclength() const noexcept { return s_; }
    double length() const noexcept { return s_.back(); }
    bool has_speeds() const noexcept { return waypoints_.front().v.has_value(); }

    struct Projection {
        double s = 0.0;
        Point foot;
        /// Signed distance, positive when the point lies left of the path.
        double offset = 0.0;
        double distance() const noexcept { return offset < 0 ? -offset : offset; }
    };
    /// Closest point of the polyline; ties resolve to the smallest arclength.
    Projection project(double x, double y) const;

    /// Point at arclength s, clamped to [0, length].
    Point point_at(double s) const;
    /// Direction of the segment containing s.
    double heading_at(double s) const;
    /// Linearly interpolated speed. Throws ValidationError without speeds.
    double speed_at(double s) const;

    static Path read_csv(const std::filesystem::path& file);
    void write_csv(const std::filesystem::path& file) const;

    friend bool operator==(const Path& a, const Path& b) { return a.waypoints_ == b.waypoints_; }

private:
    std::size_t segment_of(double s) const;

    std::vector<Waypoint> waypoints_;
    std::vector<double> s_;
};

struct UTurnGeometry {
    double entry_length = 30.0;  // m, straight along +X from the origin
    double radius = 8.0;         // m, left half-circle
    double exit_length = 40.0;   // m, straight back along -X
    double spacing = 0.5;        // m, waypoint spacing
    double v_low = 4.0;          // m/s at both ends
    double v_high = 6.0;         // m/s from the end of the entry straight to the start of the exit straight
};

/// Two parallel straights joined by a half-circle, with the speed ramped
/// from v_low up over the entry straight and back down over the exit.
Path synthetic_uturn(const UTurnGeometry& g = {});

}  // namespace mrc::pathsim
