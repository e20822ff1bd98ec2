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

#include "covquant/channel.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace covquant
{

double wrap_wavenumber(double v)
{
    double w = v - std::floor(v + 0.5);
    if (w >= 0.5) // guard the floor rounding edge
        w -= 1.0;
    return w;
}

double PathSet::total_power() const
{
    double s = 0.0;
    for (const Path &p : paths)
        s += p.power;
    return s;
}

namespace
{

constexpr double DEG = M_PI / 180.0;

void normalize_powers(std::vector<double> &powers)
{
    double total = 0.0;
    for (double p : powers)
        total += p;
    if (total <= 0.0)
        throw std::runtime_error("Path powers sum to zero.");
    for (double &p : powers)
        p /= total;
}

} // namespace

PathSet draw_path_set(const ClusterConfig &cfg, RngStream &rng)
{
    if (cfg.clusters == 0 || cfg.subpaths_per_cluster == 0)
        throw std::invalid_argument("ClusterConfig: cluster and subpath counts must be >= 1.");
    if (cfg.aod_halfwidth_deg < 0.0 || cfg.subpath_spread_deg < 0.0)
        throw std::invalid_argument("ClusterConfig: angular spreads must be nonnegative.");

    const std::size_t total = cfg.clusters * cfg.subpaths_per_cluster;
    std::vector<double> angles(total), delays(total), powers(total);

    std::size_t idx = 0;
    for (std::size_t c = 0; c < cfg.clusters; ++c)
    {
        const double center =
            rng.uniform(cfg.aod_center_deg - cfg.aod_halfwidth_deg, cfg.aod_center_deg + cfg.aod_halfwidth_deg);
        const double tau = rng.exponential(cfg.delay_spread_s);
        const double weight =
            (cfg.power_decay_s > 0.0) ? std::exp(-tau / cfg.power_decay_s) : 1.0;
        // Equal power split across subpaths inside a cluster (configurable split
        // is out of scope; the subpath count itself is the knob).
        const double share = weight / static_cast<double>(cfg.subpaths_per_cluster);
        for (std::size_t s = 0; s < cfg.subpaths_per_cluster; ++s, ++idx)
        {
            angles[idx] = center + rng.uniform(-cfg.subpath_spread_deg, cfg.subpath_spread_deg);
            delays[idx] = tau;
            powers[idx] = share;
        }
    }
    normalize_powers(powers);

    PathSet out;
    out.paths.resize(total);
    for (std::size_t i = 0; i < total; ++i)
    {
        out.paths[i].power = powers[i];
        out.paths[i].delay = delays[i];
        out.paths[i].wavenumber = wrap_wavenumber(cfg.antenna_spacing * std::sin(angles[i] * DEG));
    }
    return out;
}

Matrix channel_matrix_from_alphas(const PathSet &paths, std::size_t antennas, std::size_t subcarriers,
                                  double symbol_duration, const std::vector<cplx> &alphas)
{
    if (antennas == 0 || subcarriers == 0)
        throw std::invalid_argument("channel matrix dimensions must be >= 1.");
    if (symbol_duration <= 0.0)
        throw std::invalid_argument("symbol duration must be positive.");
    if (alphas.size() != paths.size())
        throw std::invalid_argument("gain count does not match path count.");

    const std::size_t L = paths.size();
    // h = S G with S the steering matrix and G(l, k) = alpha_l e^{-j 2 pi k tau_l / T}
    Matrix steering(antennas, L);
    for (std::size_t l = 0; l < L; ++l)
    {
        const double w = 2.0 * M_PI * paths.paths[l].wavenumber;
        for (std::size_t m = 0; m < antennas; ++m)
            steering(m, l) = std::polar(1.0, w * static_cast<double>(m));
    }
    Matrix gains(L, subcarriers);
    for (std::size_t l = 0; l < L; ++l)
    {
        const double w = -2.0 * M_PI * paths.paths[l].delay / symbol_duration;
        for (std::size_t k = 0; k < subcarriers; ++k)
            gains(l, k) = alphas[l] * std::polar(1.0, w * static_cast<double>(k));
    }
    return steering * gains;
}

ChannelRealization channel_realization(const PathSet &paths, std::size_t antennas, std::size_t subcarriers,
                                       double symbol_duration, RngStream &rng)
{
    if (paths.size() == 0)
        throw std::invalid_argument("channel_realization: empty path set.");
    ChannelRealization out;
    out.antennas = antennas;
    out.subcarriers = subcarriers;
    out.symbol_duration = symbol_duration;
    out.alphas.resize(paths.size());
    for (std::size_t l = 0; l < paths.size(); ++l)
        out.alphas[l] = std::sqrt(paths.paths[l].power) * rng.complex_normal();
    out.h = channel_matrix_from_alphas(paths, antennas, subcarriers, symbol_duration, out.alphas);
    return out;
}

SpatialCovariance analytic_covariance(const PathSet &paths, std::size_t antennas)
{
    if (paths.size() == 0)
        throw std::invalid_argument("analytic_covariance: empty path set.");
    std::vector<cplx> r(antennas, cplx(0.0));
    for (const Path &p : paths.paths)
    {
        const double w = 2.0 * M_PI * p.wavenumber;
        for (std::size_t m = 0; m < antennas; ++m)
            r[m] += p.power * std::polar(1.0, w * static_cast<double>(m));
    }
    r[0] = cplx(r[0].real(), 0.0);
    HermitianMatrix m = toeplitz_from_correlation(r);
    return SpatialCovariance{std::move(r), std::move(m)};
}

HermitianMatrix sample_covariance(const std::vector<ChannelRealization> &realizations)
{
    if (realizations.empty())
        throw std::invalid_argument("sample_covariance: no realizations.");
    const std::size_t m = realizations.front().antennas;
    Matrix acc(m, m);
    std::size_t count = 0;
    for (const ChannelRealization &cr : realizations)
    {
        if (cr.antennas != m)
            throw std::invalid_argument("sample_covariance: antenna count mismatch.");
        for (std::size_t k = 0; k < cr.subcarriers; ++k)
        {
            for (std::size_t i = 0; i < m; ++i)
            {
                const cplx hi = cr.h(i, k);
                for (std::size_t j = 0; j < m; ++j)
                    acc(i, j) += hi * std::conj(cr.h(j, k));
            }
            ++count;
        }
    }
    acc *= cplx(1.0 / static_cast<double>(count), 0.0);
    // Accumulation is Hermitian up to rounding; symmetrize exactly.
    return HermitianMatrix::from_matrix(acc, 1e-9);
}

std::vector<double> spatial_spectrum_on_grid(const PathSet &paths, std::size_t gridsize)
{
    if (gridsize < 2)
        throw std::invalid_argument("spatial_spectrum_on_grid: gridsize must be >= 2.");
    std::vector<double> bins(gridsize, 0.0);
    for (const Path &p : paths.paths)
    {
        const double v = wrap_wavenumber(p.wavenumber);
        auto idx = static_cast<std::size_t>((v + 0.5) * static_cast<double>(gridsize));
        if (idx >= gridsize)
            idx = gridsize - 1;
        bins[idx] += p.power;
    }
    return bins;
}

void save_path_set(const PathSet &paths, std::ostream &out)
{
    out << "covquant-pathset v1\n" << paths.size() << "\n";
    out << std::setprecision(17);
    for (const Path &p : paths.paths)
        out << p.power << " " << p.delay << " " << p.wavenumber << "\n";
}

void save_path_set(const PathSet &paths, const std::string &filename)
{
    std::ofstream f(filename);
    if (!f)
        throw std::runtime_error("Cannot open for writing: " + filename);
    save_path_set(paths, f);
}

PathSet load_path_set(std::istream &in)
{
    std::string tag, version;
    in >> tag >> version;
    if (tag != "covquant-pathset" || version != "v1")
        throw std::runtime_error("Unrecognized path set header.");
    std::size_t n = 0;
    in >> n;
    PathSet out;
    out.paths.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(in >> out.paths[i].power >> out.paths[i].delay >> out.paths[i].wavenumber))
            throw std::runtime_error("Truncated path set file.");
        if (out.paths[i].delay < 0.0)
            throw std::runtime_error("Path set file contains a negative delay.");
    }
    return out;
}

PathSet load_path_set(const std::string &filename)
{
    std::ifstream f(filename);
    if (!f)
        throw std::runtime_error("Cannot open: " + filename);
    return load_path_set(f);
}

// ---- UPA ------------------------------------------------------------------

double PathSet2D::total_power() const
{
    double s = 0.0;
    for (const Path2D &p : paths)
        s += p.power;
    return s;
}

PathSet2D draw_path_set_2d(const Cluster2DConfig &cfg, RngStream &rng)
{
    if (cfg.clusters == 0 || cfg.subpaths_per_cluster == 0)
        throw std::invalid_argument("Cluster2DConfig: cluster and subpath counts must be >= 1.");

    const double az_center = rng.uniform(-cfg.azimuth_span_deg, cfg.azimuth_span_deg);
    const double zen_center = rng.uniform(0.0, 180.0);
    const double az_spread = rng.uniform(0.0, cfg.max_spread_deg);
    const double zen_spread = rng.uniform(0.0, cfg.max_spread_deg);

    const std::size_t total = cfg.clusters * cfg.subpaths_per_cluster;
    PathSet2D out;
    out.paths.resize(total);
    std::vector<double> powers(total);

    std::size_t idx = 0;
    for (std::size_t c = 0; c < cfg.clusters; ++c)
    {
        const double caz = az_center + rng.uniform(-az_spread, az_spread);
        const double czen = zen_center + rng.uniform(-zen_spread, zen_spread);
        const double tau = rng.exponential(cfg.delay_spread_s);
        const double weight = (cfg.power_decay_s > 0.0) ? std::exp(-tau / cfg.power_decay_s) : 1.0;
        const double share = weight / static_cast<double>(cfg.subpaths_per_cluster);
        for (std::size_t s = 0; s < cfg.subpaths_per_cluster; ++s, ++idx)
        {
            const double az = (caz + rng.uniform(-cfg.subpath_spread_deg, cfg.subpath_spread_deg)) * DEG;
            const double zen = (czen + rng.uniform(-cfg.subpath_spread_deg, cfg.subpath_spread_deg)) * DEG;
            out.paths[idx].delay = tau;
            out.paths[idx].wavenumber_v = wrap_wavenumber(cfg.antenna_spacing * std::cos(zen));
            out.paths[idx].wavenumber_h = wrap_wavenumber(cfg.antenna_spacing * std::sin(zen) * std::cos(az));
            powers[idx] = share;
        }
    }
    normalize_powers(powers);
    for (std::size_t i = 0; i < total; ++i)
        out.paths[i].power = powers[i];
    return out;
}

std::vector<cplx> steering_vector_2d(std::size_t rows_v, std::size_t cols_h, double wavenumber_v,
                                     double wavenumber_h)
{
    std::vector<cplx> s(rows_v * cols_h);
    for (std::size_t m = 0; m < rows_v; ++m)
    {
        const cplx pv = std::polar(1.0, 2.0 * M_PI * wavenumber_v * static_cast<double>(m));
        for (std::size_t n = 0; n < cols_h; ++n)
            s[m * cols_h + n] = pv * std::polar(1.0, 2.0 * M_PI * wavenumber_h * static_cast<double>(n));
    }
    return s;
}

HermitianMatrix analytic_covariance_2d(const PathSet2D &paths, std::size_t rows_v, std::size_t cols_h)
{
    if (paths.paths.empty())
        throw std::invalid_argument("analytic_covariance_2d: empty path set.");
    const std::size_t m = rows_v * cols_h;
    Matrix acc(m, m);
    for (const Path2D &p : paths.paths)
    {
        const std::vector<cplx> s = steering_vector_2d(rows_v, cols_h, p.wavenumber_v, p.wavenumber_h);
        for (std::size_t i = 0; i < m; ++i)
        {
            const cplx si = p.power * s[i];
            for (std::size_t j = 0; j < m; ++j)
                acc(i, j) += si * std::conj(s[j]);
        }
    }
    return HermitianMatrix::from_matrix(acc, 1e-9);
}

} // namespace covquant
