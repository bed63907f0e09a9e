// Copyright 2026 The cvqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvqec/table.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace cvqec {

void Table::add(nlohmann::json row) {
    if (!row.is_object()) {
        throw std::invalid_argument("table rows must be JSON objects");
    }
    for (const auto &[key, value] : row.items()) {
        if (std::find(columns.begin(), columns.end(), key) == columns.end()) {
            throw std::invalid_argument("row has a cell for unknown column '" + key + "'");
        }
    }
    rows.push_back(std::move(row));
}

std::string csv_escape(const std::string &field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const nlohmann::json &cell) {
    if (cell.is_null()) {
        return "";
    }
    if (cell.is_string()) {
        return csv_escape(cell.get<std::string>());
    }
    if (cell.is_boolean()) {
        return cell.get<bool>() ? "true" : "false";
    }
    if (cell.is_number_integer() || cell.is_number_unsigned()) {
        return cell.dump();
    }
    if (cell.is_number_float()) {
        return fmt::format("{:.12g}", cell.get<double>());
    }
    return csv_escape(cell.dump());
}

void write_csv(std::ostream &out, const Table &table) {
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << "\r\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < table.columns.size(); i++) {
            auto it = row.find(table.columns[i]);
            out << (i ? "," : "") << (it == row.end() ? std::string() : csv_cell(*it));
        }
        out << "\r\n";
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::vector<std::filesystem::path> write_table(const std::filesystem::path &dir, const std::string &stem,
                                               const Table &table, const nlohmann::json &meta) {
    std::filesystem::create_directories(dir);
    std::ostringstream csv;
    write_csv(csv, table);
    auto csv_path = dir / (stem + ".csv");
    write_text_file(csv_path, csv.str());

    nlohmann::json report = {{"name", stem}, {"columns", table.columns}, {"rows", table.rows}, {"meta", meta}};
    auto json_path = dir / (stem + ".json");
    write_text_file(json_path, report.dump(2) + "\n");
    return {csv_path, json_path};
}

}  // namespace cvqec
