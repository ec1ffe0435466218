// Copyright 2026 The qdconv Authors
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

// table.hpp: sweep tables and their CSV / JSON encodings.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qdconv {

using Json = nlohmann::ordered_json;

struct Column {
    std::string name;
    std::string unit;  // empty for dimensionless
};

/// monostate marks an absent value.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct SweepTable {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    Json provenance = Json::object();

    /// Throws std::invalid_argument when the row width does not match.
    void add_row(std::vector<Cell> row);
    std::size_t column_index(const std::string& name) const;
    double number(std::size_t row, const std::string& column) const;
    std::string text(std::size_t row, const std::string& column) const;
};

enum class TableFormat { Csv, Json };

/// 17 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double v);

/// RFC 4180: CRLF records, fields quoted when they contain a comma, quote,
/// CR or LF. Absent values are empty fields.
std::string to_csv(const SweepTable& table);

/// {"name", "columns": [{name, unit}], "rows": [{column: value}], "provenance"}.
/// Absent and NaN values are null; infinities are the strings "inf"/"-inf".
Json to_json(const SweepTable& table);

/// Writes the table; CSV output also gets a `<path>.meta.json` sidecar with
/// columns and provenance. A "timestamp" is added to the provenance at write
/// time. Refuses to overwrite existing files unless `force`.
void write_table(const SweepTable& table, const std::filesystem::path& path, TableFormat format,
                 bool force);

}  // namespace qdconv
