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

#include "mrc/io/json.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "mrc/errors.hpp"

namespace mrc::io {

namespace {

using lti::Matrix;
using lti::Polynomial;

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(fmt::format("JSON object lacks '{}'", key));
    }
    return j.at(key);
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) {
        throw ValidationError(fmt::format("'{}' must be a number", what));
    }
    return j.get<double>();
}

std::string text(const Json& j, const char* what) {
    if (!j.is_string()) {
        throw ValidationError(fmt::format("'{}' must be a string", what));
    }
    return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw ValidationError(fmt::format("'{}' must be an array of numbers", what));
    }
    std::vector<double> out;
    for (const auto& v : j) {
        out.push_back(number(v, what));
    }
    return out;
}

Json array(std::span<const double> v) {
    Json out = Json::array();
    for (double x : v) {
        out.push_back(round9(x));
    }
    return out;
}

Json array(const Polynomial& p) { return array(p.coeffs()); }

Polynomial polynomial_from_json(const Json& j, const char* what) {
    if (j.is_array()) {
        auto c = numbers(j, what);
        if (c.empty()) {
            throw ValidationError(fmt::format("'{}' has no coefficients", what));
        }
        return Polynomial(std::move(c));
    }
    if (j.is_object()) {
        Polynomial p = Polynomial::constant(j.contains("gain") ? number(j.at("gain"), "gain") : 1.0);
        if (j.contains("factors")) {
            const auto& f = j.at("factors");
            if (!f.is_array()) {
                throw ValidationError(fmt::format("'{}.factors' must be an array", what));
            }
            for (const auto& factor : f) {
                p = p * Polynomial(numbers(factor, what));
            }
        }
        return p;
    }
    throw ValidationError(fmt::format("'{}' must be a coefficient array or a factored object", what));
}

lti::Domain domain_from_json(const Json& j) {
    const std::string d = text(field(j, "domain"), "domain");
    if (d == "continuous") {
        return lti::Domain::continuous();
    }
    if (d == "discrete") {
        return lti::Domain::discrete(number(field(j, "period"), "period"));
    }
    throw ValidationError(fmt::format("unknown domain '{}'", d));
}

void put_domain(Json& j, const lti::Domain& d) {
    j["domain"] = d.is_discrete() ? "discrete" : "continuous";
    if (d.is_discrete()) {
        j["period"] = round9(d.period());
    }
}

Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(round9(m(i, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
        throw ValidationError(fmt::format("'{}' must have {} rows", what, rows));
    }
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto row = numbers(j[static_cast<std::size_t>(i)], what);
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw ValidationError(fmt::format("'{}' must have {} columns", what, cols));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = row[static_cast<std::size_t>(c)];
        }
    }
    return m;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(round9(v)) : Json(nullptr); }

}  // namespace

double round9(double v) {
    if (!std::isfinite(v) || v == 0.0) {
        return v == 0.0 ? 0.0 : v;
    }
    return std::stod(fmt::format("{:.9g}", v));
}

Json to_json(const lti::TransferFunction& tf) {
    Json j;
    put_domain(j, tf.domain());
    j["num"] = array(tf.num());
    j["den"] = array(tf.den());
    return j;
}

lti::TransferFunction tf_from_json(const Json& j) {
    return {polynomial_from_json(field(j, "num"), "num"), polynomial_from_json(field(j, "den"), "den"),
            domain_from_json(j)};
}

Json to_json(const lti::ParallelForm& pf) {
    Json j;
    put_domain(j, pf.domain);
    j["direct"] = round9(pf.direct);
    j["first_order"] = Json::array();
    for (const auto& b : pf.first_order) {
        j["first_order"].push_back({{"id", b.id}, {"residue", round9(b.residue)}, {"pole", round9(b.pole)}});
    }
    j["second_order"] = Json::array();
    for (const auto& b : pf.second_order) {
        j["second_order"].push_back({{"id", b.id}, {"num", array(b.num)}, {"den", array(b.den)}});
    }
    return j;
}

lti::ParallelForm parallel_form_from_json(const Json& j) {
    lti::ParallelForm pf;
    pf.domain = domain_from_json(j);
    pf.direct = number(field(j, "direct"), "direct");
    for (const auto& b : field(j, "first_order")) {
        pf.first_order.push_back(
            {text(field(b, "id"), "id"), number(field(b, "residue"), "residue"), number(field(b, "pole"), "pole")});
    }
    for (const auto& b : field(j, "second_order")) {
        lti::SecondOrderBlock s{text(field(b, "id"), "id"), polynomial_from_json(field(b, "num"), "num"),
                                polynomial_from_json(field(b, "den"), "den")};
        if (s.den.degree() != 2 || s.num.degree() > 1) {
            throw ValidationError(fmt::format("second-order block {} needs a degree-2 denominator", s.id));
        }
        pf.second_order.push_back(std::move(s));
    }
    return pf;
}

Json to_json(const interlace::InterlacePlan& plan) {
    Json j;
    j["N"] = plan.n;
    j["slots"] = plan.slots;
    j["input"] = interlace::to_string(plan.input);
    j["output"] = interlace::to_string(plan.output);
    j["phase"] = plan.phase;
    if (!plan.warnings.empty()) {
        j["warnings"] = plan.warnings;
    }
    return j;
}

interlace::InterlacePlan plan_from_json(const Json& j) {
    interlace::InterlacePlan p;
    const auto& n = field(j, "N");
    if (!n.is_number_integer()) {
        throw ValidationError("'N' must be an integer");
    }
    p.n = n.get<int>();
    for (const auto& s : field(j, "slots")) {
        p.slots.push_back(text(s, "slots"));
    }
    p.input = interlace::parse_input_strategy(text(field(j, "input"), "input"));
    p.output = interlace::parse_output_strategy(text(field(j, "output"), "output"));
    p.phase = j.contains("phase") ? j.at("phase").get<int>() : 0;
    if (j.contains("warnings")) {
        p.warnings = j.at("warnings").get<std::vector<std::string>>();
    }
    if (p.n < 1 || static_cast<std::size_t>(p.n) != p.slots.size() || p.phase < 0 || p.phase >= p.n) {
        throw ValidationError("plan N, slots and phase are inconsistent");
    }
    return p;
}

Json to_json(const interlace::PolePartition& p) {
    Json j;
    j["rule"] = p.rule_used;
    j["slow"] = p.slow;
    j["fast"] = p.fast;
    if (!p.warnings.empty()) {
        j["warnings"] = p.warnings;
    }
    return j;
}

Json to_json(const interlace::ResampledSlowBlock& b) {
    Json j;
    j["id"] = b.source.id;
    j["source"] = {{"residue", round9(b.source.residue)}, {"pole", round9(b.source.pole)}};
    j["N"] = b.n;
    j["w_polynomial"] = array(b.w_poly);
    j["resampled"] = to_json(b.tf_slow);
    return j;
}

Json to_json(const interlace::VariantCost& c) {
    Json j;
    j["variant"] = c.variant;
    j["per_instant"] = Json::array();
    for (const auto& i : c.per_instant) {
        j["per_instant"].push_back({{"multiplies", i.multiplies}, {"adds", i.adds}});
    }
    j["worst_multiplies"] = c.worst_multiplies;
    j["worst_adds"] = c.worst_adds;
    j["mean_multiplies"] = round9(c.mean_multiplies);
    j["mean_adds"] = round9(c.mean_adds);
    return j;
}

Json to_json(const interlace::CostReport& c) {
    Json j;
    j["convention"] = c.convention;
    j["single_rate_fast"] = to_json(c.single_rate_fast);
    j["single_rate_slow"] = to_json(c.single_rate_slow);
    j["interlaced"] = to_json(c.interlaced);
    j["savings_ratio"] = round9(c.savings_ratio);
    return j;
}

Json to_json(const lifting::LiftedQuadruple& q) {
    Json j;
    j["N"] = q.n;
    j["period"] = round9(q.period);
    j["states"] = q.states();
    j["A"] = matrix_json(q.A);
    j["B"] = matrix_json(q.B);
    j["C"] = matrix_json(q.C);
    j["D"] = matrix_json(q.D);
    return j;
}

lifting::LiftedQuadruple lifted_from_json(const Json& j) {
    lifting::LiftedQuadruple q;
    q.n = field(j, "N").get<int>();
    q.period = number(field(j, "period"), "period");
    const auto k = field(j, "states").get<Eigen::Index>();
    if (q.n < 1 || k < 0) {
        throw ValidationError("lifted quadruple needs N >= 1 and a non-negative state count");
    }
    q.A = matrix_from_json(field(j, "A"), k, k, "A");
    q.B = matrix_from_json(field(j, "B"), k, q.n, "B");
    q.C = matrix_from_json(field(j, "C"), q.n, k, "C");
    q.D = matrix_from_json(field(j, "D"), q.n, q.n, "D");
    return q;
}

Json to_json(const lifting::EquivalenceReport& r) {
    Json j;
    j["equivalent"] = r.equivalent();
    j["max_abs_error"] = finite_or_null(r.max_abs_error);
    j["first_divergence"] = r.first_divergence ? Json(*r.first_divergence) : Json(nullptr);
    j["samples"] = r.samples;
    j["tolerance"] = round9(r.tolerance);
    return j;
}

Json to_json(const lti::ReductionReport& r) {
    Json j;
    j["reduced"] = to_json(r.reduced);
    j["order"] = r.reduced.order();
    j["hankel_values"] = array(r.hankel_values);
    j["error_bound"] = round9(r.error_bound);
    j["split_poles"] = array(r.split_poles);
    j["dropped_pole"] = r.dropped_pole ? Json(round9(*r.dropped_pole)) : Json(nullptr);
    return j;
}

Json to_json(const pathsim::Metrics& m) {
    return {{"rms_cross_track", round9(m.rms_cross_track)},
            {"max_cross_track", round9(m.max_cross_track)},
            {"rms_yaw_rate_error", round9(m.rms_yaw_rate_error)}};
}

Json to_json(const pathsim::FeasibilityVerdict& v) {
    Json j;
    j["stable"] = v.stable;
    j["spectral_radius"] = round9(v.spectral_radius);
    j["performance_ratio"] = finite_or_null(v.performance_ratio);
    j["failure"] = v.failure ? Json(*v.failure) : Json(nullptr);
    return j;
}

Json to_json(const pathsim::ComparisonReport& r, bool with_series) {
    Json j;
    j["scenario"] = r.scenario;
    j["metrics"] = Json::object();
    for (const auto& [name, m] : r.metrics) {
        j["metrics"][name] = to_json(m);
    }
    j["deviations"] = Json::array();
    for (const auto& d : r.deviations) {
        Json dj{{"a", d.a}, {"b", d.b}, {"rms", round9(d.rms)}, {"max", round9(d.max)}};
        if (with_series) {
            dj["distance"] = array(d.distance);
        }
        j["deviations"].push_back(std::move(dj));
    }
    j["costs"] = Json::array();
    for (const auto& c : r.costs) {
        j["costs"].push_back({{"implementation", c.implementation},
                              {"worst_multiplies", c.worst_multiplies},
                              {"mean_multiplies", round9(c.mean_multiplies)},
                              {"worst_adds", c.worst_adds},
                              {"mean_adds", round9(c.mean_adds)}});
    }
    return j;
}

Json read_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ValidationError(fmt::format("cannot open {}", file.string()));
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(fmt::format("{}: {}", file.string(), e.what()));
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& file, const Json& j) {
    std::ofstream out(file);
    if (!out) {
        throw ValidationError(fmt::format("cannot write {}", file.string()));
    }
    out << dump(j);
}

lti::TransferFunction read_tf(const std::filesystem::path& file) {
    try {
        return tf_from_json(read_json(file));
    } catch (const Json::exception& e) {
        throw ValidationError(fmt::format("{}: {}", file.string(), e.what()));
    }
}

}  // namespace mrc::io
