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

#include "covquant/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covquant
{

std::string format_double(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header))
{
    if (header_.empty())
        throw std::invalid_argument("CsvTable: header must be nonempty.");
}

void CsvTable::append_row(std::vector<Cell> row)
{
    if (row.size() != header_.size())
        throw std::invalid_argument("CsvTable: row width does not match header.");
    for (const Cell &c : row)
        if (const double *d = std::get_if<double>(&c); d && std::isnan(*d))
            throw std::invalid_argument("CsvTable: NaN cell rejected.");
    rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const
{
    std::ostringstream out;
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << (i ? "," : "") << header_[i];
    out << "\n";
    for (const auto &row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                out << ",";
            if (const auto *s = std::get_if<std::string>(&row[i]))
                out << *s;
            else if (const auto *d = std::get_if<double>(&row[i]))
                out << format_double(*d);
            else
                out << std::get<long long>(row[i]);
        }
        out << "\n";
    }
    return out.str();
}

void CsvTable::write(const std::string &filename) const
{
    std::ofstream f(filename, std::ios::binary);
    if (!f)
        throw std::runtime_error("Cannot open for writing: " + filename);
    f << to_string();
    if (!f)
        throw std::runtime_error("Write failed: " + filename);
}

std::size_t CsvData::column(const std::string &name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw std::runtime_error("CSV column not found: " + name);
}

CsvData read_csv(const std::string &filename)
{
    std::ifstream f(filename);
    if (!f)
        throw std::runtime_error("Cannot open: " + filename);
    CsvData data;
    std::string line;
    bool first = true;
    while (std::getline(f, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (line.back() == ',')
            cells.push_back("");
        if (first)
        {
            data.header = std::move(cells);
            first = false;
        }
        else
        {
            if (cells.size() != data.header.size())
                throw std::runtime_error("CSV row width mismatch in " + filename);
            data.rows.push_back(std::move(cells));
        }
    }
    if (first)
        throw std::runtime_error("CSV file has no header: " + filename);
    return data;
}

} // namespace covquant
