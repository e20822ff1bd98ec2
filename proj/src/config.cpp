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

#include "covquant/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace covquant
{

namespace
{

std::string trim(const std::string &s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

ConfigMap ConfigMap::parse_string(const std::string &text)
{
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw std::invalid_argument("Config line " + std::to_string(lineno) + ": unterminated section header.");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw std::invalid_argument("Config line " + std::to_string(lineno) + ": empty section name.");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("Config line " + std::to_string(lineno) + ": expected key = value.");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("Config line " + std::to_string(lineno) + ": empty key.");
        const std::string full = section.empty() ? key : section + "." + key;
        cfg.values_[full] = value;
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string &filename)
{
    std::ifstream f(filename);
    if (!f)
        throw std::invalid_argument("Cannot open config file: " + filename);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_string(buf.str());
}

bool ConfigMap::has(const std::string &key) const
{
    return values_.count(key) != 0;
}

std::string ConfigMap::get_string(const std::string &key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw std::invalid_argument("Missing required config field: " + key);
    return it->second;
}

std::string ConfigMap::get_string(const std::string &key, const std::string &fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string &key) const
{
    const std::string s = get_string(key);
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("Config field " + key + " is not a number: '" + s + "'");
    }
}

double ConfigMap::get_double(const std::string &key, double fallback) const
{
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t ConfigMap::get_u64(const std::string &key) const
{
    const std::string s = get_string(key);
    try
    {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("Config field " + key + " is not a nonnegative integer: '" + s + "'");
    }
}

std::uint64_t ConfigMap::get_u64(const std::string &key, std::uint64_t fallback) const
{
    return has(key) ? get_u64(key) : fallback;
}

std::vector<double> ConfigMap::get_double_list(const std::string &key) const
{
    std::istringstream in(get_string(key));
    std::vector<double> out;
    std::string tok;
    while (in >> tok)
    {
        try
        {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("Config field " + key + " has a non-numeric entry: '" + tok + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument("Config field " + key + " is empty.");
    return out;
}

std::vector<std::uint64_t> ConfigMap::get_u64_list(const std::string &key) const
{
    std::istringstream in(get_string(key));
    std::vector<std::uint64_t> out;
    std::string tok;
    while (in >> tok)
    {
        try
        {
            std::size_t pos = 0;
            out.push_back(std::stoull(tok, &pos));
            if (pos != tok.size())
                throw std::invalid_argument(tok);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("Config field " + key + " has a non-integer entry: '" + tok + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument("Config field " + key + " is empty.");
    return out;
}

} // namespace covquant
