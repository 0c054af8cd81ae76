// Copyright 2026 The tvadmm Authors
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

#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tvadmm::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

CsvError::CsvError(const std::string& source, std::size_t line,
                   std::size_t column, const std::string& message)
    : InvalidInputError(source + ":" + std::to_string(line) + ":" +
                        std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    std::size_t column = 0;
    for (;;) {
      ++column;
      const std::size_t comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      if (field.empty()) throw CsvError(source, line_no, column, "empty field");
      const char* first = field.data();
      const char* last = field.data() + field.size();
      if (*first == '+') ++first;
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw CsvError(source, line_no, column,
                       "cannot parse '" + std::string(field) + "' as a number");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw CsvError(source, line_no, row.size(),
                     "expected " + std::to_string(rows.front().size()) +
                         " fields, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError(source, line_no + 1, 1, "no data rows");
  return rows;
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

BlockVector read_blocks(const std::filesystem::path& path) {
  return BlockVector::from_blocks(read_csv(path));
}

SymMatrix read_matrix(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.size() != rows.front().size()) {
    throw InvalidInputError(path.string() + ": expected a square matrix, got " +
                            std::to_string(rows.size()) + "x" +
                            std::to_string(rows.front().size()));
  }
  return SymMatrix::from_rows(rows);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_rows(const std::filesystem::path& path,
                const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
  if (!out) throw InvalidInputError("error writing " + path.string());
}

void write_blocks(const std::filesystem::path& path, const BlockVector& blocks) {
  write_rows(path, blocks.to_blocks());
}

}  // namespace tvadmm::cli
