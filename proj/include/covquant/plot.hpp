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

#ifndef COVQUANT_PLOT_H
#define COVQUANT_PLOT_H

#include <string>

namespace covquant
{

struct PlotSpec
{
    std::string title;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

// Line plot of a CSV: first column is the x axis, every further numeric column
// becomes one polyline with a legend entry. Throws on empty data or
// non-numeric cells; nothing is written in that case.
void render_plot(const std::string &csv_path, const std::string &svg_path, const PlotSpec &spec = {});

} // namespace covquant

#endif
