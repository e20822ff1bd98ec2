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

#include "covquant/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "covquant/channel.hpp"
#include "covquant/codebook.hpp"
#include "covquant/csv.hpp"
#include "covquant/linalg.hpp"
#include "covquant/metrics.hpp"
#include "covquant/multiuser.hpp"
#include "covquant/parallel.hpp"
#include "covquant/rng.hpp"
#include "covquant/training.hpp"

namespace covquant
{

bool ExperimentResult::all_passed() const
{
    for (const ExperimentCheck &c : checks)
        if (!c.passed)
            return false;
    return true;
}

std::string resolve_output_dir(const ConfigMap &cfg)
{
    if (cfg.has("experiment.output_dir"))
        return cfg.get_string("experiment.output_dir");
    if (const char *env = std::getenv("COVQUANT_OUTDIR"); env && *env)
        return env;
    return ".";
}

namespace
{

std::string join_path(const std::string &dir, const std::string &file)
{
    return (std::filesystem::path(dir) / file).string();
}

ClusterConfig cluster_from_config(const ConfigMap &cfg, const std::string &section)
{
    ClusterConfig c;
    c.clusters = cfg.get_u64(section + ".clusters", c.clusters);
    c.subpaths_per_cluster = cfg.get_u64(section + ".subpaths", c.subpaths_per_cluster);
    c.aod_center_deg = cfg.get_double(section + ".aod_center_deg", c.aod_center_deg);
    c.aod_halfwidth_deg = cfg.get_double(section + ".aod_halfwidth_deg", c.aod_halfwidth_deg);
    c.subpath_spread_deg = cfg.get_double(section + ".subpath_spread_deg", c.subpath_spread_deg);
    c.delay_spread_s = cfg.get_double(section + ".delay_spread_s", c.delay_spread_s);
    c.power_decay_s = cfg.get_double(section + ".power_decay_s", c.power_decay_s);
    c.antenna_spacing = cfg.get_double(section + ".antenna_spacing", c.antenna_spacing);
    return c;
}

double mean(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

// ---- leakage-spectrum -------------------------------------------------------

ExperimentResult run_leakage_spectrum(const ConfigMap &cfg, const std::string &dir, std::size_t /*jobs*/)
{
    const std::size_t m = cfg.get_u64("array.antennas", 64);
    const std::size_t q_count = cfg.get_u64("array.codebook_size", 8);
    const std::size_t dim = cfg.get_u64("array.dimension", 6);
    const std::uint64_t seed = cfg.get_u64("experiment.seed");
    const std::size_t n_paths = cfg.get_u64("leakage.paths", 400);
    const double v_lo = cfg.get_double("leakage.wavenumber_lo", 0.0);
    const double v_hi = cfg.get_double("leakage.wavenumber_hi", 1.0 / static_cast<double>(q_count));
    const std::size_t grid = cfg.get_u64("leakage.grid", 4096);
    const std::size_t outer_draws = cfg.get_u64("leakage.outer_draws", 200);

    RngStream root(seed);
    RngStream path_rng = root.substream(0);
    PathSet paths;
    paths.paths.resize(n_paths);
    for (std::size_t l = 0; l < n_paths; ++l)
    {
        paths.paths[l].power = 1.0 / static_cast<double>(n_paths);
        paths.paths[l].wavenumber = wrap_wavenumber(path_rng.uniform(v_lo, v_hi));
    }

    const SpatialCovariance cov = analytic_covariance(paths, m);

    // Selection over the D-column codebook
    const Codebook cb = build_codebook(m, q_count, dim);
    const std::size_t q_sel = cfg.has("leakage.band") ? cfg.get_u64("leakage.band")
                                                      : select_codeword(cb, cov, SelectionCriterion::average_snr);
    if (q_sel >= q_count)
        throw std::invalid_argument("leakage.band out of range.");
    const Band band = codeword_band(q_sel, q_count);

    const CodewordEntry entry_wide = build_codeword_entry(m, q_count, q_sel, dim + 1);
    const Matrix u_d = entry_wide.basis.columns(0, dim);
    const Matrix u_d1 = entry_wide.basis;
    const Matrix f_d = most_concentrated_columns(dft_submatrix(m, q_count, q_sel), band, dim);

    RngStream outer_rng = root.substream(1);
    std::vector<double> out_prop, out_prop_wide, out_dft;
    LeakageReport first_prop{0, 0, {}, {}}, first_dft{0, 0, {}, {}};
    for (std::size_t i = 0; i < outer_draws; ++i)
    {
        const std::vector<cplx> outer = random_outer_precoder(dim, outer_rng);
        const std::vector<cplx> outer_wide = random_outer_precoder(dim + 1, outer_rng);
        const LeakageReport rp = transmit_spectrum(u_d, outer, band, grid);
        const LeakageReport rw = transmit_spectrum(u_d1, outer_wide, band, grid);
        const LeakageReport rf = transmit_spectrum(f_d, outer, band, grid);
        out_prop.push_back(rp.out_of_band);
        out_prop_wide.push_back(rw.out_of_band);
        out_dft.push_back(rf.out_of_band);
        if (i == 0)
        {
            first_prop = rp;
            first_dft = rf;
        }
    }

    ExperimentResult res;
    res.name = "leakage-spectrum";

    CsvTable spectrum({"wavenumber", "psd_proposed", "psd_dft"});
    for (std::size_t i = 0; i < grid; ++i)
        spectrum.append_row({first_prop.grid[i], std::norm(first_prop.spectrum[i]), std::norm(first_dft.spectrum[i])});
    const std::string spectrum_path = join_path(dir, "leakage_spectrum.csv");
    spectrum.write(spectrum_path);
    res.csv_files.push_back(spectrum_path);

    const double mean_prop = mean(out_prop), mean_wide = mean(out_prop_wide), mean_dft = mean(out_dft);
    CsvTable summary({"precoder", "dimension", "band", "mean_in_band", "mean_out_of_band"});
    summary.append_row({std::string("proposed"), static_cast<long long>(dim), static_cast<long long>(q_sel),
                        1.0 - mean_prop, mean_prop});
    summary.append_row({std::string("proposed"), static_cast<long long>(dim + 1), static_cast<long long>(q_sel),
                        1.0 - mean_wide, mean_wide});
    summary.append_row({std::string("dft"), static_cast<long long>(dim), static_cast<long long>(q_sel),
                        1.0 - mean_dft, mean_dft});
    const std::string summary_path = join_path(dir, "leakage_summary.csv");
    summary.write(summary_path);
    res.csv_files.push_back(summary_path);

    std::ostringstream note;
    note << "selected band q=" << q_sel << "; mean out-of-band: proposed(D=" << dim << ") " << mean_prop
         << ", proposed(D=" << dim + 1 << ") " << mean_wide << ", dft(D=" << dim << ") " << mean_dft;
    res.summary_lines.push_back(note.str());
    res.checks.push_back({"proposed precoder leaks less than the DFT submatrix", mean_prop < mean_dft});
    res.checks.push_back({"D=" + std::to_string(dim) + " leaks less than D=" + std::to_string(dim + 1),
                          mean_prop < mean_wide});
    return res;
}

// ---- mse-vs-Q ---------------------------------------------------------------

ExperimentResult run_mse_vs_q(const ConfigMap &cfg, const std::string &dir, std::size_t jobs)
{
    const std::size_t m = cfg.get_u64("array.antennas", 64);
    const std::size_t dim = cfg.get_u64("array.dimension", 6);
    const std::uint64_t seed = cfg.get_u64("experiment.seed");
    const std::size_t subcarriers = cfg.get_u64("training.subcarriers", 4096);
    const double snr_db = cfg.get_double("training.snr_db", 10.0);
    const std::size_t trials = cfg.get_u64("training.trials", 1000);
    std::vector<std::uint64_t> q_values{4, 8, 16};
    if (cfg.has("training.codebook_sizes"))
        q_values = cfg.get_u64_list("training.codebook_sizes");

    ExperimentResult res;
    res.name = "mse-vs-Q";
    CsvTable table({"Q", "K", "snr_db", "mse"});
    std::vector<double> mses;
    for (std::uint64_t q : q_values)
    {
        EstimationScenario sc;
        sc.antennas = m;
        sc.subcarriers = subcarriers;
        sc.codebook_size = q;
        sc.dimension = dim;
        sc.snr_db = snr_db;
        sc.mode = ChannelMode::per_subcarrier_independent;
        sc.cluster = cluster_from_config(cfg, "channel");
        if (!cfg.has("channel.clusters"))
            sc.cluster.clusters = 1; // single-cluster default matches the codebook's design premise
        sc.seed = seed;
        const double mse = estimator_mse(sc, trials, jobs);
        mses.push_back(mse);
        table.append_row({static_cast<long long>(q), static_cast<long long>(subcarriers), snr_db, mse});
    }
    const std::string path = join_path(dir, "mse_vs_q.csv");
    table.write(path);
    res.csv_files.push_back(path);

    bool monotone = true;
    for (std::size_t i = 0; i + 1 < mses.size(); ++i)
        monotone = monotone && mses[i] < mses[i + 1];
    res.checks.push_back({"estimation MSE grows with Q (fewer samples per codeword)", monotone});
    std::ostringstream note;
    note << "MSE:";
    for (std::size_t i = 0; i < q_values.size(); ++i)
        note << " Q=" << q_values[i] << " -> " << mses[i];
    res.summary_lines.push_back(note.str());
    return res;
}

// ---- snr-loss ---------------------------------------------------------------

ExperimentResult run_snr_loss(const ConfigMap &cfg, const std::string &dir, std::size_t jobs)
{
    const std::size_t m = cfg.get_u64("array.antennas", 64);
    const std::uint64_t seed = cfg.get_u64("experiment.seed");
    const std::size_t drops = cfg.get_u64("loss.drops", 200);
    const std::size_t dim_total = cfg.get_u64("loss.total_dimension", 6);
    const std::size_t q_single = cfg.get_u64("loss.single_codebook_size", 8);
    const std::size_t q_multi = cfg.get_u64("loss.multi_codebook_size", 16);
    const std::size_t feedback = cfg.get_u64("loss.feedback_count", 2);
    if (dim_total % feedback != 0)
        throw std::invalid_argument("loss.total_dimension must be divisible by loss.feedback_count.");

    const Codebook cb_single = build_codebook(m, q_single, dim_total);
    const Codebook cb_multi = build_codebook(m, q_multi, dim_total / feedback);
    ClusterConfig cluster = cluster_from_config(cfg, "channel");

    const RngStream root(seed);
    std::vector<std::vector<double>> loss_single(drops);
    std::vector<double> loss_multi(drops);
    parallel_for_indexed(drops, jobs, [&](std::size_t d) {
        RngStream rng = root.substream(d);
        const PathSet paths = draw_path_set(cluster, rng);
        const SpatialCovariance cov = analytic_covariance(paths, m);

        const SnrLossSeries series = relative_snr_loss(cov, cb_single, dim_total);
        loss_single[d] = series.loss;

        // multi-codeword feedback: top-J codewords by true per-codeword SNR
        SnrEstimate true_snr{{}, {}};
        true_snr.snr.resize(q_multi);
        true_snr.samples.assign(q_multi, 1);
        for (std::size_t q = 0; q < q_multi; ++q)
            true_snr.snr[q] = average_snr(cb_multi.entries[q].basis, cov.matrix);
        const std::vector<std::size_t> picks = feedback_decision(true_snr, feedback);
        const Matrix w = multi_codeword_precoder(cb_multi, picks, dim_total);
        loss_multi[d] = series.ideal.back() - average_snr(w, cov.matrix);
    });

    ExperimentResult res;
    res.name = "snr-loss";
    CsvTable table({"scheme", "codebook_size", "D", "mean_loss"});
    std::vector<double> mean_single(dim_total, 0.0);
    for (std::size_t d = 0; d < drops; ++d)
        for (std::size_t i = 0; i < dim_total; ++i)
            mean_single[i] += loss_single[d][i];
    for (double &v : mean_single)
        v /= static_cast<double>(drops);
    for (std::size_t i = 0; i < dim_total; ++i)
        table.append_row({std::string("single"), static_cast<long long>(q_single), static_cast<long long>(i + 1),
                          mean_single[i]});
    const double mean_multi = mean(loss_multi);
    table.append_row({std::string("multi"), static_cast<long long>(q_multi), static_cast<long long>(dim_total),
                      mean_multi});
    const std::string path = join_path(dir, "snr_loss.csv");
    table.write(path);
    res.csv_files.push_back(path);

    res.checks.push_back({"wider codeword spectrum (small Q) loses more than multi-codeword feedback",
                          mean_single.back() >= mean_multi});
    std::ostringstream note;
    note << "mean L: single Q=" << q_single << " D=" << dim_total << " -> " << mean_single.back() << "; multi Q="
         << q_multi << " " << feedback << "x" << dim_total / feedback << " -> " << mean_multi;
    res.summary_lines.push_back(note.str());
    return res;
}

// ---- multiuser-capacity -----------------------------------------------------

ExperimentResult run_multiuser_capacity(const ConfigMap &cfg, const std::string &dir, std::size_t jobs)
{
    const std::size_t m = cfg.get_u64("array.antennas", 64);
    const std::size_t q_count = cfg.get_u64("array.codebook_size", 8);
    const std::size_t dim = cfg.get_u64("array.dimension", 6);
    const std::uint64_t seed = cfg.get_u64("experiment.seed");
    const std::size_t drops = cfg.get_u64("multiuser.drops", 100);
    std::vector<std::uint64_t> users{1, 16};
    if (cfg.has("multiuser.users"))
        users = cfg.get_u64_list("multiuser.users");
    std::vector<double> snrs{0.0, 10.0, 20.0};
    if (cfg.has("multiuser.snr_db"))
        snrs = cfg.get_double_list("multiuser.snr_db");

    CapacityConfig cc;
    cc.eval_subcarriers = cfg.get_u64("multiuser.eval_subcarriers", cc.eval_subcarriers);
    cc.realizations = cfg.get_u64("multiuser.realizations", cc.realizations);

    const Codebook cb = build_codebook(m, q_count, dim);
    DropConfig dc;
    dc.cluster = cluster_from_config(cfg, "channel");
    dc.cluster_scatter_deg = cfg.get_double("multiuser.cluster_scatter_deg", 10.0);

    ExperimentResult res;
    res.name = "multiuser-capacity";
    CsvTable table({"mode", "n_users", "snr_db", "capacity_bps_hz", "igi_power"});

    const RngStream root(seed);
    double cap_prop_max_users = 0.0, cap_dft_max_users = 0.0;
    for (std::size_t ui = 0; ui < users.size(); ++ui)
    {
        const std::size_t n_users = users[ui];
        std::vector<UserDrop> drops_store(drops, UserDrop{});
        parallel_for_indexed(drops, jobs, [&](std::size_t d) {
            RngStream drop_rng = root.substream(ui * 1000003 + d).substream(0);
            drops_store[d] = drop_users(n_users, dc, cb, drop_rng);
        });
        for (std::size_t si = 0; si < snrs.size(); ++si)
        {
            std::vector<double> cap_p(drops), cap_f(drops), igi_p(drops), igi_f(drops);
            parallel_for_indexed(drops, jobs, [&](std::size_t d) {
                // One stream per (drop, snr); both modes replay identical fading.
                const RngStream chan = root.substream(ui * 1000003 + d).substream(1 + si);
                RngStream rng_p = chan, rng_f = chan;
                const CapacityResult rp =
                    evaluate_capacity(drops_store[d], cb, snrs[si], PrecoderMode::proposed, cc, rng_p);
                const CapacityResult rf =
                    evaluate_capacity(drops_store[d], cb, snrs[si], PrecoderMode::dft_baseline, cc, rng_f);
                cap_p[d] = rp.capacity_bps_hz;
                cap_f[d] = rf.capacity_bps_hz;
                igi_p[d] = rp.igi_power;
                igi_f[d] = rf.igi_power;
            });
            table.append_row({std::string("proposed"), static_cast<long long>(n_users), snrs[si], mean(cap_p),
                              mean(igi_p)});
            table.append_row({std::string("dft"), static_cast<long long>(n_users), snrs[si], mean(cap_f),
                              mean(igi_f)});
            if (ui + 1 == users.size())
            {
                cap_prop_max_users = mean(cap_p);
                cap_dft_max_users = mean(cap_f);
            }
        }
    }
    const std::string path = join_path(dir, "capacity.csv");
    table.write(path);
    res.csv_files.push_back(path);
    res.checks.push_back({"proposed beats the DFT baseline at the largest user count",
                          cap_prop_max_users > cap_dft_max_users});
    std::ostringstream note;
    note << "largest drop: proposed " << cap_prop_max_users << " bps/Hz vs dft " << cap_dft_max_users << " bps/Hz";
    res.summary_lines.push_back(note.str());
    return res;
}

// ---- upa-capacity -----------------------------------------------------------

struct UpaPrecoders
{
    Matrix proposed;
    Matrix dft;
};

UpaPrecoders upa_precoders_for(const Codebook2D &cb, const HermitianMatrix &r)
{
    // Select the (p, q) zone by average SNR
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < cb.entries.size(); ++i)
    {
        const double score = average_snr(cb.entries[i].basis, r);
        if (i == 0 || score > best_score)
        {
            best = i;
            best_score = score;
        }
    }
    const Codeword2D &e = cb.entries[best];

    // 2-D DFT baseline: Kronecker pairs of in-band steering columns, ranked by
    // the product of their 1-D band concentrations.
    const Matrix fv = dft_submatrix(cb.rows_v, cb.bands_v, e.p);
    const Matrix fh = dft_submatrix(cb.cols_h, cb.bands_h, e.q);
    const Band bv = codeword_band(e.p, cb.bands_v);
    const Band bh = codeword_band(e.q, cb.bands_h);
    std::vector<double> cv(fv.cols()), ch(fh.cols());
    for (std::size_t i = 0; i < fv.cols(); ++i)
        cv[i] = power_concentration(fv.column(i), bv);
    for (std::size_t j = 0; j < fh.cols(); ++j)
        ch[j] = power_concentration(fh.column(j), bh);
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> ranked;
    for (std::size_t i = 0; i < fv.cols(); ++i)
        for (std::size_t j = 0; j < fh.cols(); ++j)
            ranked.push_back({cv[i] * ch[j], {i, j}});
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) { return a.first > b.first; });

    const std::size_t d = std::min<std::size_t>(cb.dimension, ranked.size());
    Matrix fd(cb.rows_v * cb.cols_h, d);
    for (std::size_t k = 0; k < d; ++k)
    {
        const auto [i, j] = ranked[k].second;
        for (std::size_t mv = 0; mv < cb.rows_v; ++mv)
            for (std::size_t nh = 0; nh < cb.cols_h; ++nh)
                fd(mv * cb.cols_h + nh, k) = fv(mv, i) * fh(nh, j);
    }
    return UpaPrecoders{e.basis, std::move(fd)};
}

ExperimentResult run_upa_capacity(const ConfigMap &cfg, const std::string &dir, std::size_t jobs)
{
    const std::size_t rows_v = cfg.get_u64("upa.rows", 8);
    const std::size_t cols_h = cfg.get_u64("upa.cols", 8);
    const std::size_t bands_v = cfg.get_u64("upa.bands_v", 4);
    const std::size_t bands_h = cfg.get_u64("upa.bands_h", 2);
    const std::size_t dim = cfg.get_u64("upa.dimension", (rows_v / bands_v) * (cols_h / bands_h));
    const std::uint64_t seed = cfg.get_u64("experiment.seed");
    const std::size_t drops = cfg.get_u64("upa.drops", 100);
    const double snr_db = cfg.get_double("upa.snr_db", 10.0);

    Cluster2DConfig cluster;
    cluster.clusters = cfg.get_u64("upa.clusters", cluster.clusters);
    cluster.subpaths_per_cluster = cfg.get_u64("upa.subpaths", cluster.subpaths_per_cluster);

    CapacityConfig cc;
    cc.eval_subcarriers = cfg.get_u64("upa.eval_subcarriers", 4);
    cc.realizations = cfg.get_u64("upa.realizations", 25);

    const Codebook2D cb = build_upa_codebook(rows_v, cols_h, bands_v, bands_h, dim);
    const double n0 = std::pow(10.0, -snr_db / 10.0);
    const std::size_t m = rows_v * cols_h;

    const RngStream root(seed);
    std::vector<double> cap_p(drops), cap_f(drops);
    parallel_for_indexed(drops, jobs, [&](std::size_t d) {
        RngStream rng = root.substream(d);
        RngStream draw = rng.substream(0);
        const PathSet2D paths = draw_path_set_2d(cluster, draw);
        const HermitianMatrix r = analytic_covariance_2d(paths, rows_v, cols_h);
        const UpaPrecoders pre = upa_precoders_for(cb, r);

        UserChannelModel model;
        const std::size_t L = paths.paths.size();
        model.steering = Matrix(m, L);
        model.power.resize(L);
        model.delay.resize(L);
        for (std::size_t l = 0; l < L; ++l)
        {
            const Path2D &p = paths.paths[l];
            const std::vector<cplx> s = steering_vector_2d(rows_v, cols_h, p.wavenumber_v, p.wavenumber_h);
            for (std::size_t a = 0; a < m; ++a)
                model.steering(a, l) = s[a];
            model.power[l] = p.power;
            model.delay[l] = p.delay;
        }
        const std::vector<UserChannelModel> users{model};

        const RngStream chan = rng.substream(1);
        RngStream rng_p = chan, rng_f = chan;
        cap_p[d] = simulate_downlink(users, {ServedGroup{pre.proposed, {0}}}, n0, cc, rng_p).capacity_bps_hz;
        cap_f[d] = simulate_downlink(users, {ServedGroup{pre.dft, {0}}}, n0, cc, rng_f).capacity_bps_hz;
    });

    ExperimentResult res;
    res.name = "upa-capacity";
    CsvTable table({"mode", "rows_v", "cols_h", "snr_db", "capacity_bps_hz"});
    table.append_row({std::string("proposed"), static_cast<long long>(rows_v), static_cast<long long>(cols_h),
                      snr_db, mean(cap_p)});
    table.append_row({std::string("dft"), static_cast<long long>(rows_v), static_cast<long long>(cols_h), snr_db,
                      mean(cap_f)});
    const std::string path = join_path(dir, "upa_capacity.csv");
    table.write(path);
    res.csv_files.push_back(path);
    res.checks.push_back({"2-D proposed codebook at least matches the 2-D DFT baseline", mean(cap_p) >= mean(cap_f)});
    std::ostringstream note;
    note << "UPA capacity: proposed " << mean(cap_p) << " bps/Hz vs dft " << mean(cap_f) << " bps/Hz";
    res.summary_lines.push_back(note.str());
    return res;
}

// ---- codebook-dump ----------------------------------------------------------

ExperimentResult run_codebook_dump(const ConfigMap &cfg, const std::string &dir, std::size_t /*jobs*/)
{
    const std::size_t m = cfg.get_u64("array.antennas", 64);
    const std::size_t q_count = cfg.get_u64("array.codebook_size", 8);
    const std::size_t dim = cfg.get_u64("array.dimension", 6);
    cfg.get_u64("experiment.seed"); // seed is mandatory for every experiment

    const Codebook cb = build_codebook(m, q_count, dim);
    export_codebook(cb, dir);

    ExperimentResult res;
    res.name = "codebook-dump";
    res.csv_files.push_back(join_path(dir, "codebook_eigenvalues.csv"));
    for (const CodewordEntry &e : cb.entries)
        res.csv_files.push_back(join_path(dir, "u_basis_q" + std::to_string(e.q) + ".txt"));

    const double expected_trace = static_cast<double>(m) / std::sqrt(static_cast<double>(q_count));
    bool traces_ok = true;
    for (const CodewordEntry &e : cb.entries)
        traces_ok = traces_ok && std::abs(e.matrix.trace() - expected_trace) < 1e-9;
    res.checks.push_back({"every codeword matrix has trace M/sqrt(Q)", traces_ok});
    res.summary_lines.push_back("exported " + std::to_string(cb.entries.size()) + " codewords");
    return res;
}

} // namespace

ExperimentResult run_experiment(const ConfigMap &cfg, const std::string &output_dir, std::size_t jobs)
{
    const std::string name = cfg.get_string("experiment.name");
    std::filesystem::create_directories(output_dir);
    if (jobs == 0)
        jobs = 1;

    if (name == "leakage-spectrum")
        return run_leakage_spectrum(cfg, output_dir, jobs);
    if (name == "mse-vs-Q" || name == "mse-vs-q")
        return run_mse_vs_q(cfg, output_dir, jobs);
    if (name == "snr-loss")
        return run_snr_loss(cfg, output_dir, jobs);
    if (name == "multiuser-capacity")
        return run_multiuser_capacity(cfg, output_dir, jobs);
    if (name == "upa-capacity")
        return run_upa_capacity(cfg, output_dir, jobs);
    if (name == "codebook-dump")
        return run_codebook_dump(cfg, output_dir, jobs);
    throw std::invalid_argument("Unknown experiment.name: '" + name + "'");
}

} // namespace covquant
