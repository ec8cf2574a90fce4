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

// JSON forms of the toolkit's values. Every number written is first rounded
// to 9 significant digits, so a written artifact reloads to a value that
// writes back identically.

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "mrc/interlace/interlace.hpp"
#include "mrc/lifting/lifting.hpp"
#include "mrc/lti/reduction.hpp"
#include "mrc/pathsim/pathsim.hpp"

namespace mrc::io {

using Json = nlohmann::ordered_json;

double round9(double v);

/// {domain: "continuous"|"discrete", period?, num, den}. On input, num and
/// den may also be given factored as {gain?, factors: [[...], ...]}.
Json to_json(const lti::TransferFunction& tf);
lti::TransferFunction tf_from_json(const Json& j);

Json to_json(const lti::ParallelForm& pf);
lti::ParallelForm parallel_form_from_json(const Json& j);

/// {N, slots, input, output, phase}
Json to_json(const interlace::InterlacePlan& plan);
interlace::InterlacePlan plan_from_json(const Json& j);

Json to_json(const interlace::PolePartition& p);
Json to_json(const interlace::ResampledSlowBlock& b);
Json to_json(const interlace::VariantCost& c);
Json to_json(const interlace::CostReport& c);

Json to_json(const lifting::LiftedQuadruple& q);
lifting::LiftedQuadruple lifted_from_json(const Json& j);
Json to_json(const lifting::EquivalenceReport& r);

Json to_json(const lti::ReductionReport& r);

Json to_json(const pathsim::Metrics& m);
Json to_json(const pathsim::FeasibilityVerdict& v);
/// Deviation series are included only on request.
Json to_json(const pathsim::ComparisonReport& r, bool with_series = false);

Json read_json(const std::filesystem::path& file);
std::string dump(const Json& j);
void write_json(const std::filesystem::path& file, const Json& j);

lti::TransferFunction read_tf(const std::filesystem::path& file);

}  // namespace mrc::io
