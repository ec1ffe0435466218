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

#include "qdconv/table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdconv {

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return {};
}

Json cell_json(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isnan(*d)) return nullptr;
        if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content, bool force)
{
    if (!force && std::filesystem::exists(path)) {
        throw std::runtime_error("refusing to overwrite " + path.string() + " (use --force)");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Json columns_json(const SweepTable& table)
{
    Json cols = Json::array();
    for (const auto& c : table.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    return cols;
}

}  // namespace

void SweepTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw std::invalid_argument("SweepTable::add_row: expected " + std::to_string(columns.size()) +
                                    " cells, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t SweepTable::column_index(const std::string& column) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == column) return i;
    }
    throw std::out_of_range("SweepTable: no column " + column);
}

double SweepTable::number(std::size_t row, const std::string& column) const
{
    const Cell& c = rows.at(row).at(column_index(column));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    return std::nan("");
}

std::string SweepTable::text(std::size_t row, const std::string& column) const
{
    return cell_text(rows.at(row).at(column_index(column)));
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const SweepTable& table)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << csv_field(table.columns[i].name);
    }
    os << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << "\r\n";
    }
    return os.str();
}

Json to_json(const SweepTable& table)
{
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i].name] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    return Json{{"name", table.name},
                {"columns", columns_json(table)},
                {"rows", std::move(rows)},
                {"provenance", table.provenance}};
}

void write_table(const SweepTable& table, const std::filesystem::path& path, TableFormat format,
                 bool force)
{
    Json provenance = table.provenance;
    provenance["timestamp"] = utc_timestamp();

    if (format == TableFormat::Json) {
        Json doc = to_json(table);
        doc["provenance"] = std::move(provenance);
        write_file(path, doc.dump(2) + "\n", force);
        return;
    }

    std::filesystem::path meta = path;
    meta += ".meta.json";
    if (!force && std::filesystem::exists(meta)) {
        throw std::runtime_error("refusing to overwrite " + meta.string() + " (use --force)");
    }
    write_file(path, to_csv(table), force);
    const Json sidecar{{"name", table.name}, {"columns", columns_json(table)}, {"provenance", provenance}};
    write_file(meta, sidecar.dump(2) + "\n", force);
}

}  // namespace qdconv
