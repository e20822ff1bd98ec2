// SPDX-License-Identifier: Apache-2.0
//
// covquant - spatial covariance quantization for massive MIMO cascaded precoding
// Copyright (C) 2026 The covquant authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COVQUANT_CSV_H
#define COVQUANT_CSV_H

#include <string>
#include <variant>
#include <vector>

namespace covquant
{

// Comma-separated table with a header row. Numeric cells are rendered with 12
// significant digits; NaN cells are rejected at append time so emitted files
// never carry them.
class CsvTable
{
  public:
    using Cell = std::variant<std::string, double, long long>;

    explicit CsvTable(std::vector<std::string> header);

    void append_row(std::vector<Cell> row);
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string> &header() const { return header_; }
    const std::vector<std::vector<Cell>> &rows() const { return rows_; }

    std::string to_string() const;
    void write(const std::string &filename) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double value); // %.12g

struct CsvData
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string &name) const; // throws if absent
};

CsvData read_csv(const std::string &filename);

} // namespace covquant

#endif
