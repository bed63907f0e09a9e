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

#ifndef CVQEC_TABLE_H
#define CVQEC_TABLE_H

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace cvqec {

/// Column-ordered table of scalar JSON cells, written as RFC-4180 CSV or as a JSON report.
struct Table {
    std::vector<std::string> columns;
    std::vector<nlohmann::json> rows;  // objects keyed by column name

    void add(nlohmann::json row);
};

/// Quotes a field when it contains a comma, a double quote, CR or LF.
std::string csv_escape(const std::string &field);
/// Numbers use %.12g and strings are written raw. Null and missing cells are empty.
std::string csv_cell(const nlohmann::json &cell);
void write_csv(std::ostream &out, const Table &table);

/// Writes <stem>.csv and <stem>.json into dir and returns both paths. The JSON report holds
/// {"name", "columns", "rows", "meta"}.
std::vector<std::filesystem::path> write_table(const std::filesystem::path &dir, const std::string &stem,
                                               const Table &table, const nlohmann::json &meta = nlohmann::json::object());

void write_text_file(const std::filesystem::path &path, const std::string &contents);

}  // namespace cvqec

#endif
