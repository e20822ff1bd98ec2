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

#ifndef COVQUANT_CONFIG_H
#define COVQUANT_CONFIG_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace covquant
{

// INI-style experiment configuration: [section] headers, key = value lines,
// '#' or ';' comments. Keys are addressed as "section.key". Missing required
// keys raise std::invalid_argument naming the key.
class ConfigMap
{
  public:
    static ConfigMap parse_string(const std::string &text);
    static ConfigMap parse_file(const std::string &filename);

    bool has(const std::string &key) const;

    std::string get_string(const std::string &key) const;
    std::string get_string(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key) const;
    double get_double(const std::string &key, double fallback) const;
    std::uint64_t get_u64(const std::string &key) const;
    std::uint64_t get_u64(const std::string &key, std::uint64_t fallback) const;
    std::vector<double> get_double_list(const std::string &key) const;
    std::vector<std::uint64_t> get_u64_list(const std::string &key) const;

    const std::map<std::string, std::string> &values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

} // namespace covquant

#endif
