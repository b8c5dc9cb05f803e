// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dhg {

/// Null, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// A rectangular result table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// RFC 4180: header row, CRLF-free "\n" line ends, fields quoted only when
/// they contain a comma, quote, CR or LF. Nulls are empty fields.
void write_csv(const Table& table, std::ostream& out);
std::string csv_escape(std::string_view field);
std::string format_cell(const Cell& cell);

/// JSON array of row objects keyed by column name.
void write_json(const Table& table, std::ostream& out);

/// Parses one RFC 4180 document into rows of raw strings (header included).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace dhg
