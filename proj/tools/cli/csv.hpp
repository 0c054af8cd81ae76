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

#ifndef TVADMM_TOOLS_CLI_CSV_HPP_
#define TVADMM_TOOLS_CLI_CSV_HPP_

// Plain numeric CSV: comma separated, period decimal, one row per line, no
// header. Blank lines are skipped.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tvadmm/block_vector.hpp"
#include "tvadmm/error.hpp"
#include "tvadmm/linalg.hpp"

namespace tvadmm::cli {

class CsvError : public InvalidInputError {
 public:
  CsvError(const std::string& source, std::size_t line, std::size_t column,
           const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Every row must have the same number of fields. Lines and columns in
// diagnostics are 1-based; the column is the field index.
std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           const std::string& source = "<input>");
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

BlockVector read_blocks(const std::filesystem::path& path);
SymMatrix read_matrix(const std::filesystem::path& path);

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

void write_rows(const std::filesystem::path& path,
                const std::vector<std::vector<double>>& rows);
void write_blocks(const std::filesystem::path& path, const BlockVector& blocks);

}  // namespace tvadmm::cli

#endif  // TVADMM_TOOLS_CLI_CSV_HPP_
