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

#include "mrc/io/config.hpp"

#include <sstream>

#include <fmt/format.h>
#include <toml.hpp>

#include "mrc/errors.hpp"

namespace mrc::io {

namespace {

const Json* section(const Json& j, const char* name) {
    if (!j.contains(name)) {
        return nullptr;
    }
    const auto& s = j.at(name);
    if (!s.is_object()) {
        throw ValidationError(fmt::format("config section [{}] must be a table", name));
    }
    return &s;
}

template <typename T>
void read(const Json* s, const char* key, T& out) {
    if (s == nullptr || !s->contains(key)) {
        return;
    }
    try {
        out = s->at(key).get<T>();
    } catch (const Json::exception&) {
        throw ValidationError(fmt::format("config key '{}' has the wrong type", key));
    }
}

template <typename T>
void read(const Json* s, const char* key, std::optional<T>& out) {
    if (s == nullptr || !s->contains(key)) {
        return;
    }
    T v{};
    read(s, key, v);
    out = v;
}

void read_path(const Json* s, const char* key, const fs::path& base, std::optional<fs::path>& out) {
    std::optional<std::string> raw;
    read(s, key, raw);
    if (raw) {
        const fs::path p(*raw);
        out = p.is_absolute() ? p : base / p;
    }
}

void require_file(const std::optional<fs::path>& p, const char* what) {
    if (p && !fs::is_regular_file(*p)) {
        throw ValidationError(fmt::format("{} '{}' does not exist", what, p->string()));
    }
}

}  // namespace

void RunConfig::validate() const {
    vehicle.validate();
    speed.validate();
    if (plant_source != "fixture" && plant_source != "formula") {
        throw ValidationError(fmt::format("plant source must be 'fixture' or 'formula', got '{}'", plant_source));
    }
    require_file(plant_file, "plant file");
    require_file(controller_file, "controller file");
    require_file(continuous_controller_file, "continuous controller file");
    require_file(path_file, "path file");
    if (!(period > 0.0) || !(duration > 0.0) || !(lookahead > 0.0) || !(corridor > 0.0) || substeps < 1) {
        throw ValidationError("period, duration, lookahead, corridor and substeps must be positive");
    }
    if (n && *n < 1) {
        throw ValidationError("N must be at least 1");
    }
    if (constant_speed && !(*constant_speed > 0.0)) {
        throw ValidationError("scenario speed must be positive");
    }
}

RunConfig config_from_json(const Json& j, const fs::path& base) {
    if (!j.is_object()) {
        throw ValidationError("configuration must be a table");
    }
    RunConfig c;
    read(&j, "seed", c.seed);
    std::optional<std::string> out_dir;
    read(&j, "output_dir", out_dir);
    if (out_dir) {
        const fs::path p(*out_dir);
        c.output_dir = p.is_absolute() ? p : base / p;
    } else {
        c.output_dir = base / c.output_dir;
    }

    if (const Json* s = section(j, "vehicle")) {
        read(s, "m", c.vehicle.m);
        read(s, "lf", c.vehicle.lf);
        read(s, "lr", c.vehicle.lr);
        double cf = c.vehicle.c_alpha_f / 1000.0;
        double cr = c.vehicle.c_alpha_r / 1000.0;
        std::string unit = "kN/rad";
        read(s, "cornering_stiffness_unit", unit);
        double scale = 1000.0;
        if (unit == "N/rad") {
            scale = 1.0;
            cf *= 1000.0;
            cr *= 1000.0;
        } else if (unit != "kN/rad") {
            throw ValidationError(fmt::format("unknown cornering stiffness unit '{}'", unit));
        }
        read(s, "c_alpha_f", cf);
        read(s, "c_alpha_r", cr);
        c.vehicle.c_alpha_f = cf * scale;
        c.vehicle.c_alpha_r = cr * scale;
        read(s, "iz", c.vehicle.iz);
    }
    if (const Json* s = section(j, "speed")) {
        read(s, "min", c.speed.v_min);
        read(s, "max", c.speed.v_max);
        read(s, "nominal", c.speed.v_nominal);
    }
    if (const Json* s = section(j, "plant")) {
        read(s, "source", c.plant_source);
        read_path(s, "file", base, c.plant_file);
    }
    if (const Json* s = section(j, "controller")) {
        read_path(s, "file", base, c.controller_file);
        read_path(s, "continuous_file", base, c.continuous_controller_file);
        read(s, "period", c.period);
        std::string method = "mpz";
        read(s, "method", method);
        if (method == "mpz") {
            c.method = lti::DiscretizationMethod::MatchedPoleZero;
        } else if (method == "zoh") {
            c.method = lti::DiscretizationMethod::ZeroOrderHold;
        } else {
            throw ValidationError(fmt::format("unknown discretization method '{}'", method));
        }
        read(s, "snap_tol", c.snap_tol);
        read(s, "target_order", c.reduction.target_order);
        read(s, "slow_pole_threshold", c.reduction.slow_pole_threshold);
        read(s, "drop_fast_pole", c.reduction.drop_fast_pole);
    }
    if (const Json* s = section(j, "interlace")) {
        read(s, "N", c.n);
        std::string rule = "explicit";
        read(s, "rule", rule);
        if (rule == "explicit") {
            std::vector<std::string> slow;
            read(s, "slow", slow);
            c.rule = interlace::Explicit{{slow.begin(), slow.end()}};
        } else if (rule == "nyquist") {
            interlace::NyquistFraction r;
            read(s, "k", r.k);
            c.rule = r;
        } else if (rule == "relative") {
            interlace::RelativeSeparation r;
            read(s, "ratio", r.ratio);
            c.rule = r;
        } else {
            throw ValidationError(fmt::format("unknown classification rule '{}'", rule));
        }
        read(s, "order", c.slot_order);
        std::string input = "I1";
        std::string output = "O1";
        read(s, "input", input);
        read(s, "output", output);
        c.input = interlace::parse_input_strategy(input);
        c.output = interlace::parse_output_strategy(output);
        read(s, "phase", c.phase);
    }
    if (const Json* s = section(j, "scenario")) {
        read_path(s, "path", base, c.path_file);
        read(s, "duration", c.duration);
        read(s, "lookahead", c.lookahead);
        read(s, "corridor", c.corridor);
        read(s, "substeps", c.substeps);
        read(s, "speed", c.constant_speed);
        read(s, "steering_limit", c.steering_limit);
        std::string integration = "rk4";
        read(s, "integration", integration);
        if (integration == "rk4") {
            c.integration = pathsim::PlantIntegration::Rk4;
        } else if (integration == "exact_zoh") {
            c.integration = pathsim::PlantIntegration::ExactZoh;
        } else {
            throw ValidationError(fmt::format("unknown plant integration '{}'", integration));
        }
    }
    c.validate();
    return c;
}

RunConfig load_config(const fs::path& file) {
    if (!fs::is_regular_file(file)) {
        throw ValidationError(fmt::format("config file '{}' does not exist", file.string()));
    }
    const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
    if (file.extension() == ".toml") {
        try {
            const toml::table t = toml::parse_file(file.string());
            std::ostringstream js;
            js << toml::json_formatter{t};
            return config_from_json(Json::parse(js.str()), base);
        } catch (const toml::parse_error& e) {
            throw ValidationError(fmt::format("{}: {}", file.string(), e.description()));
        }
    }
    return config_from_json(read_json(file), base);
}

}  // namespace mrc::io
