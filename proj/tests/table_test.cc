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

#include <gtest/gtest.h>

#include "cvqec/parallel.h"

using namespace cvqec;

TEST(table, csv_escape) {
    ASSERT_EQ(csv_escape("plain"), "plain");
    ASSERT_EQ(csv_escape("a,b"), "\"a,b\"");
    ASSERT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    ASSERT_EQ(csv_escape("two\nlines"), "\"two\nlines\"");
    ASSERT_EQ(csv_escape(""), "");
}

TEST(table, csv_cell) {
    ASSERT_EQ(csv_cell(nullptr), "");
    ASSERT_EQ(csv_cell(0.5), "0.5");
    ASSERT_EQ(csv_cell(1.0 / 3), "0.333333333333");
    ASSERT_EQ(csv_cell(42), "42");
    ASSERT_EQ(csv_cell(true), "true");
    ASSERT_EQ(csv_cell("x,y"), "\"x,y\"");
}

TEST(table, write_csv_uses_crlf_and_column_order) {
    Table t;
    t.columns = {"b", "a"};
    t.add({{"a", 1}, {"b", "two"}});
    t.add({{"a", nullptr}});
    std::ostringstream out;
    write_csv(out, t);
    ASSERT_EQ(out.str(), "b,a\r\ntwo,1\r\n,\r\n");
}

TEST(table, write_table_files) {
    Table t;
    t.columns = {"k"};
    t.add({{"k", 3}});
    auto dir = std::filesystem::temp_directory_path() / "cvqec_table_test";
    std::filesystem::remove_all(dir);
    auto files = write_table(dir / "nested", "demo", t, {{"note", "x"}});
    ASSERT_EQ(files.size(), 2u);
    std::ifstream in(files[1]);
    nlohmann::json doc = nlohmann::json::parse(in);
    ASSERT_EQ(doc["name"], "demo");
    ASSERT_EQ(doc["rows"][0]["k"], 3);
    ASSERT_EQ(doc["meta"]["note"], "x");
    std::filesystem::remove_all(dir);
}

TEST(parallel, results_in_index_order) {
    auto squares = parallel_map(1000, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < squares.size(); i++) {
        ASSERT_EQ(squares[i], i * i);
    }
    ASSERT_TRUE(parallel_map(0, [](std::size_t i) { return i; }).empty());
}

TEST(parallel, rethrows) {
    ASSERT_THROW(parallel_map(50,
                              [](std::size_t i) {
                                  if (i == 17) {
                                      throw std::runtime_error("boom");
                                  }
                                  return i;
                              }),
                 std::runtime_error);
}

TEST(parallel, thread_count_from_environment) {
    ::setenv("CVQEC_THREADS", "3", 1);
    ASSERT_EQ(thread_count(), 3u);
    ::setenv("CVQEC_THREADS", "junk", 1);
    ASSERT_GE(thread_count(), 1u);
    ::unsetenv("CVQEC_THREADS");
    ASSERT_GE(thread_count(), 1u);
}
