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

#include "mrc/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mrc/errors.hpp"

namespace mrc::io {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

int NumericTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

NumericTable read_numeric_csv(std::istream& in, const std::string& source) {
    NumericTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split(line);
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ValidationError(fmt::format("{}:{}: expected {} fields, found {}", source, lineno, t.header.size(),
                                              fields.size()));
        }
        std::vector<double> row;
        for (const auto& f : fields) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size()) {
                throw ValidationError(fmt::format("{}:{}: '{}' is not a number", source, lineno, f));
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) {
        throw ValidationError(fmt::format("{}: missing header row", source));
    }
    return t;
}

NumericTable read_numeric_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ValidationError(fmt::format("cannot open {}", file.string()));
    }
    return read_numeric_csv(in, file.string());
}

void write_numeric_csv(std::ostream& out, const NumericTable& table) {
    fmt::print(out, "{}\n", fmt::join(table.header, ","));
    for (const auto& row : table.rows) {
        fmt::print(out, "{:.9g}\n", fmt::join(row, ","));
    }
}

void write_numeric_csv(const std::filesystem::path& file, const NumericTable& table) {
    std::ofstream out(file);
    if (!out) {
        throw ValidationError(fmt::format("cannot write {}", file.string()));
    }
    write_numeric_csv(out, table);
}

}  // namespace mrc::io
