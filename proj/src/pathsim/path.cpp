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

#include "mrc/pathsim/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mrc/io/csv.hpp"

namespace mrc::pathsim {

namespace {

constexpr double kMinSpacing = 1e-6;

}  // namespace

Path::Path(std::vector<Waypoint> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2) {
        throw ValidationError("a path needs at least two waypoints");
    }
    const bool speeds = waypoints_.front().v.has_value();
    s_.reserve(waypoints_.size());
    s_.push_back(0.0);
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
        const auto& w = waypoints_[i];
        if (!std::isfinite(w.x) || !std::isfinite(w.y)) {
            throw ValidationError(fmt::format("waypoint {} is not finite", i));
        }
        if (w.v.has_value() != speeds) {
            throw ValidationError("either every waypoint or none carries a speed");
        }
        if (speeds && !(*w.v > 0.0)) {
            throw ValidationError(fmt::format("waypoint {} speed must be positive", i));
        }
        if (i > 0) {
            const double d = std::hypot(w.x - waypoints_[i - 1].x, w.y - waypoints_[i - 1].y);
            if (!(d > kMinSpacing)) {
                throw ValidationError(fmt::format("waypoints {} and {} coincide", i - 1, i));
            }
            s_.push_back(s_.back() + d);
        }
    }
}

std::size_t Path::segment_of(double s) const {
    // Segment i spans [s_i, s_{i+1}].
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - s_.begin() - 1, 0));
    return std::min(idx, waypoints_.size() - 2);
}

Path::Projection Path::project(double x, double y) const {
    Projection best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < waypoints_.size(); ++i) {
        const auto& a = waypoints_[i];
        const auto& b = waypoints_[i + 1];
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        const double u = std::clamp(((x - a.x) * dx + (y - a.y) * dy) / len2, 0.0, 1.0);
        const double fx = a.x + u * dx;
        const double fy = a.y + u * dy;
        const double d2 = (x - fx) * (x - fx) + (y - fy) * (y - fy);
        if (d2 < best_d2) {
            best_d2 = d2;
            best.s = s_[i] + u * std::sqrt(len2);
            best.foot = {fx, fy};
            const double cross = dx * (y - a.y) - dy * (x - a.x);
            best.offset = cross >= 0.0 ? std::sqrt(d2) : -std::sqrt(d2);
        }
    }
    return best;
}

Point Path::point_at(double s) const {
    s = std::clamp(s, 0.0, length());
    const std::size_t i = segment_of(s);
    const auto& a = waypoints_[i];
    const auto& b = waypoints_[i + 1];
    const double u = (s - s_[i]) / (s_[i + 1] - s_[i]);
    return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

double Path::heading_at(double s) const {
    const std::size_t i = segment_of(std::clamp(s, 0.0, length()));
    return std::atan2(waypoints_[i + 1].y - waypoints_[i].y, waypoints_[i + 1].x - waypoints_[i].x);
}

double Path::speed_at(double s) const {
    if (!has_speeds()) {
        throw ValidationError("path carries no speeds");
    }
    s = std::clamp(s, 0.0, length());
    const std::size_t i = segment_of(s);
    const double u = (s - s_[i]) / (s_[i + 1] - s_[i]);
    return *waypoints_[i].v + u * (*waypoints_[i + 1].v - *waypoints_[i].v);
}

Path Path::read_csv(const std::filesystem::path& file) {
    const auto table = io::read_numeric_csv(file);
    const int cx = table.column("x");
    const int cy = table.column("y");
    const int cv = table.column("v");
    if (cx < 0 || cy < 0) {
        throw ValidationError(fmt::format("{}: path CSV needs x and y columns", file.string()));
    }
    std::vector<Waypoint> w;
    for (const auto& row : table.rows) {
        Waypoint p{row[static_cast<std::size_t>(cx)], row[static_cast<std::size_t>(cy)], std::nullopt};
        if (cv >= 0) {
            p.v = row[static_cast<std::size_t>(cv)];
        }
        w.push_back(p);
    }
    return Path(std::move(w));
}

void Path::write_csv(const std::filesystem::path& file) const {
    io::NumericTable table;
    table.header = has_speeds() ? std::vector<std::string>{"x", "y", "v"} : std::vector<std::string>{"x", "y"};
    for (const auto& w : waypoints_) {
        if (has_speeds()) {
            table.rows.push_back({w.x, w.y, *w.v});
        } else {
            table.rows.push_back({w.x, w.y});
        }
    }
    io::write_numeric_csv(file, table);
}

Path synthetic_uturn(const UTurnGeometry& g) {
    if (!(g.entry_length > 0 && g.radius > 0 && g.exit_length > 0 && g.spacing > 0 && g.v_low > 0 &&
          g.v_high > 0)) {
        throw ValidationError("U-turn geometry needs positive dimensions and speeds");
    }
    const double arc = std::numbers::pi * g.radius;
    const double total = g.entry_length + arc + g.exit_length;
    auto speed = [&](double s) {
        if (s <= g.entry_length) {
            return g.v_low + (g.v_high - g.v_low) * s / g.entry_length;
        }
        if (s <= g.entry_length + arc) {
            return g.v_high;
        }
        return g.v_high + (g.v_low - g.v_high) * (s - g.entry_length - arc) / g.exit_length;
    };
    auto point = [&](double s) -> Point {
        if (s <= g.entry_length) {
            return {s, 0.0};
        }
        if (s <= g.entry_length + arc) {
            const double th = (s - g.entry_length) / g.radius - std::numbers::pi / 2;
            return {g.entry_length + g.radius * std::cos(th), g.radius + g.radius * std::sin(th)};
        }
        return {g.entry_length - (s - g.entry_length - arc), 2 * g.radius};
    };
    const auto count = static_cast<std::size_t>(std::ceil(total / g.spacing));
    std::vector<Waypoint> w;
    for (std::size_t i = 0; i <= count; ++i) {
        const double s = std::min(total, static_cast<double>(i) * total / static_cast<double>(count));
        const Point p = point(s);
        w.push_back({p.x, p.y, speed(s)});
    }
    return Path(std::move(w));
}

}  // namespace mrc::pathsim
