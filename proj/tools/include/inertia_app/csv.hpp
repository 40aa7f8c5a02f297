// Copyright 2026 The Inertia Authors
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

// RFC-4180 CSV writing and reading. Numbers are written in shortest
// round-trip form so output is byte-stable for identical inputs.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace inertia::app {

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_number(double value);

/// Quotes a field when it contains a comma, quote, CR or LF.
[[nodiscard]] std::string escape_field(std::string_view field);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  void row(const std::vector<double>& values);

  [[nodiscard]] std::size_t columns() const { return columns_; }
  [[nodiscard]] std::size_t rows_written() const { return rows_; }

 private:
  void write_line(const std::vector<std::string>& fields);

  std::ostream& out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws std::out_of_range naming the column.
  [[nodiscard]] std::size_t column(std::string_view name) const;
  [[nodiscard]] std::vector<double> numeric_column(std::string_view name) const;
};

/// Parses RFC-4180 text (quoted fields, embedded separators and line breaks).
/// Throws std::runtime_error on ragged rows or an unterminated quote.
[[nodiscard]] CsvTable parse_csv(std::string_view text);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

}  // namespace inertia::app
