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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "covquant/config.hpp"
#include "covquant/experiments.hpp"
#include "covquant/plot.hpp"

namespace
{

int run_config(const std::string &config_path, const std::string &outdir_flag, std::size_t jobs, bool check)
{
    const covquant::ConfigMap cfg = covquant::ConfigMap::parse_file(config_path);
    std::string outdir = outdir_flag.empty() ? covquant::resolve_output_dir(cfg) : outdir_flag;
    if (jobs == 0)
        jobs = cfg.get_u64("experiment.jobs", 1);

    const covquant::ExperimentResult res = covquant::run_experiment(cfg, outdir, jobs);
    for (const std::string &line : res.summary_lines)
        std::printf("%s\n", line.c_str());
    for (const std::string &f : res.csv_files)
        std::printf("wrote %s\n", f.c_str());
    if (!check)
        return 0;

    bool all = true;
    for (const covquant::ExperimentCheck &c : res.checks)
    {
        std::printf("[%s] %s\n", c.passed ? "PASS" : "FAIL", c.description.c_str());
        all = all && c.passed;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"covquant - covariance-codebook precoding experiments"};
    app.require_subcommand(1);

    std::string config_path, outdir_flag, csv_path, svg_path, title;
    std::size_t jobs = 0;
    bool log_y = false;

    CLI::App *run = app.add_subcommand("run", "Run an experiment config and write its CSV outputs");
    run->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("--outdir", outdir_flag, "Output directory (overrides config and COVQUANT_OUTDIR)");
    run->add_option("--jobs", jobs, "Worker threads for trial loops");

    CLI::App *check = app.add_subcommand("check", "Run an experiment and assert its acceptance trends");
    check->add_option("config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
    check->add_option("--outdir", outdir_flag, "Output directory (overrides config and COVQUANT_OUTDIR)");
    check->add_option("--jobs", jobs, "Worker threads for trial loops");

    CLI::App *plot = app.add_subcommand("plot", "Render a CSV as an SVG line plot");
    plot->add_option("csv", csv_path, "Input CSV (first column is the x axis)")
        ->required()
        ->check(CLI::ExistingFile);
    plot->add_option("--out", svg_path, "Output SVG path (default: input with .svg)");
    plot->add_option("--title", title, "Plot title");
    plot->add_flag("--log-y", log_y, "Log-scale y axis");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
            return run_config(config_path, outdir_flag, jobs, false);
        if (check->parsed())
            return run_config(config_path, outdir_flag, jobs, true);
        if (plot->parsed())
        {
            if (svg_path.empty())
            {
                svg_path = csv_path;
                const auto dot = svg_path.find_last_of('.');
                if (dot != std::string::npos)
                    svg_path.resize(dot);
                svg_path += ".svg";
            }
            covquant::PlotSpec spec;
            spec.title = title;
            spec.log_y = log_y;
            covquant::render_plot(csv_path, svg_path, spec);
            std::printf("wrote %s\n", svg_path.c_str());
            return 0;
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
