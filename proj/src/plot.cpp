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

#include "covquant/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "covquant/csv.hpp"

namespace covquant
{

namespace
{

double parse_number(const std::string &s)
{
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::runtime_error("Non-numeric plot cell: " + s);
    return v;
}

const char *SERIES_COLORS[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

} // namespace

void render_plot(const std::string &csv_path, const std::string &svg_path, const PlotSpec &spec)
{
    const CsvData data = read_csv(csv_path);
    if (data.rows.empty())
        throw std::runtime_error("render_plot: CSV has no data rows.");
    if (data.header.size() < 2)
        throw std::runtime_error("render_plot: need an x column and at least one series.");

    const std::size_t n = data.rows.size();
    const std::size_t series = data.header.size() - 1;
    std::vector<double> x(n);
    std::vector<std::vector<double>> y(series, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r)
    {
        x[r] = parse_number(data.rows[r][0]);
        for (std::size_t s = 0; s < series; ++s)
        {
            double v = parse_number(data.rows[r][s + 1]);
            if (spec.log_y)
                v = std::log10(std::max(v, 1e-300));
            y[s][r] = v;
        }
    }

    double xmin = x[0], xmax = x[0], ymin = y[0][0], ymax = y[0][0];
    for (double v : x)
    {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto &ys : y)
        for (double v : ys)
        {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax == xmin)
        xmax = xmin + 1.0;
    if (ymax == ymin)
        ymax = ymin + 1.0;

    const double margin = 56.0;
    const double pw = spec.width - 2 * margin, ph = spec.height - 2 * margin;
    auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return spec.height - margin - (v - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << spec.width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"15\">"
            << spec.title << "</text>\n";

    // axis end labels
    svg << "<text x=\"" << margin << "\" y=\"" << spec.height - margin + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(xmin) << "</text>\n";
    svg << "<text x=\"" << margin + pw << "\" y=\"" << spec.height - margin + 18
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(xmax)
        << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << spec.height - margin
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(spec.log_y ? std::pow(10.0, ymin) : ymin) << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(spec.log_y ? std::pow(10.0, ymax) : ymax) << "</text>\n";
    svg << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << data.header[0]
        << "</text>\n";

    for (std::size_t s = 0; s < series; ++s)
    {
        const char *color = SERIES_COLORS[s % (sizeof(SERIES_COLORS) / sizeof(SERIES_COLORS[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t r = 0; r < n; ++r)
            svg << px(x[r]) << "," << py(y[s][r]) << " ";
        svg << "\"/>\n";
        // legend
        const double ly = margin + 16.0 + 16.0 * static_cast<double>(s);
        svg << "<line x1=\"" << margin + pw - 120 << "\" y1=\"" << ly << "\" x2=\"" << margin + pw - 96 << "\" y2=\""
            << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << margin + pw - 90 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << data.header[s + 1] << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream f(svg_path, std::ios::binary);
    if (!f)
        throw std::runtime_error("Cannot open for writing: " + svg_path);
    f << svg.str();
}

} // namespace covquant
