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

#ifndef COVQUANT_EXPERIMENTS_H
#define COVQUANT_EXPERIMENTS_H

#include <string>
#include <vector>

#include "covquant/config.hpp"

namespace covquant
{

struct ExperimentCheck
{
    std::string description;
    bool passed = false;
};

struct ExperimentResult
{
    std::string name;
    std::vector<std::string> csv_files;      // paths written, in emission order
    std::vector<std::string> summary_lines;  // human-readable notes
    std::vector<ExperimentCheck> checks;     // trend assertions for `covquant check`

    bool all_passed() const;
};

// Output directory precedence: [experiment] output_dir, then the
// COVQUANT_OUTDIR environment variable, then the current directory.
std::string resolve_output_dir(const ConfigMap &cfg);

// Dispatches on [experiment] name. Known experiments: leakage-spectrum,
// mse-vs-Q, snr-loss, multiuser-capacity, upa-capacity, codebook-dump.
// Deterministic for a fixed (config, seed) regardless of the worker count.
ExperimentResult run_experiment(const ConfigMap &cfg, const std::string &output_dir, std::size_t jobs);

} // namespace covquant

#endif
