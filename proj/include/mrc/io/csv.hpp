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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mrc::io {

/// Header row plus numeric rows of a comma-separated file.
struct NumericTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a column; -1 when absent.
    int column(const std::string& name) const;
};

/// Blank lines are skipped; every row must have as many fields as the header.
NumericTable read_numeric_csv(std::istream& in, const std::string& source = "<stream>");
NumericTable read_numeric_csv(const std::filesystem::path& file);

/// Values printed with 9 significant digits.
void write_numeric_csv(std::ostream& out, const NumericTable& table);
void write_numeric_csv(const std::filesystem::path& file, const NumericTable& table);

}  // namespace mrc::io
