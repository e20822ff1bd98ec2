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

#ifndef COVQUANT_CHANNEL_H
#define COVQUANT_CHANNEL_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "covquant/linalg.hpp"
#include "covquant/rng.hpp"

namespace covquant
{

// Wrap a normalized wavenumber into [-1/2, 1/2).
double wrap_wavenumber(double v);

struct Path
{
    double power = 0.0;      // sigma_l^2, fraction of total
    double delay = 0.0;      // tau_l, seconds
    double wavenumber = 0.0; // v_l = (d/lambda) sin(theta_l), wrapped into [-1/2, 1/2)
};

struct PathSet
{
    std::vector<Path> paths;

    std::size_t size() const { return paths.size(); }
    double total_power() const;
};

// Simplified clustered multipath generator: cluster centers drawn uniformly in
// an AoD window, per-cluster delays exponential, cluster powers decaying as
// exp(-tau/power_decay_s), equal power split across subpaths, subpath AoD
// offsets uniform within +-subpath_spread_deg. Powers normalized to sum 1.
struct ClusterConfig
{
    std::size_t clusters = 20;
    std::size_t subpaths_per_cluster = 20;
    double aod_center_deg = 0.0;
    double aod_halfwidth_deg = 85.0;  // cluster centers ~ U(center - halfwidth, center + halfwidth)
    double subpath_spread_deg = 2.0;  // subpath offsets ~ U(-spread, +spread)
    double delay_spread_s = 0.5e-6;   // cluster delays ~ Exp(delay_spread_s)
    double power_decay_s = 0.5e-6;    // cluster power ~ exp(-tau / power_decay_s)
    double antenna_spacing = 0.5;     // d / lambda
    std::uint64_t seed = 0;           // carried for experiment bookkeeping
};

PathSet draw_path_set(const ClusterConfig &cfg, RngStream &rng);

struct ChannelRealization
{
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    double symbol_duration = 0.0;
    Matrix h;                 // antennas x subcarriers, h(m, k)
    std::vector<cplx> alphas; // drawn per-path complex gains
};

// h(m, k) = sum_l alpha_l exp(-j 2 pi k tau_l / T) exp(j 2 pi m v_l) for given gains.
Matrix channel_matrix_from_alphas(const PathSet &paths, std::size_t antennas, std::size_t subcarriers,
                                  double symbol_duration, const std::vector<cplx> &alphas);

// Draws alpha_l = sigma_l * CN(0, 1) (Rayleigh fading) and assembles the matrix.
ChannelRealization channel_realization(const PathSet &paths, std::size_t antennas, std::size_t subcarriers,
                                       double symbol_duration, RngStream &rng);

struct SpatialCovariance
{
    std::vector<cplx> correlation; // r[m], m = 0 .. M-1
    HermitianMatrix matrix;        // Toeplitz {r[m - n]}
};

// r[m] = sum_l sigma_l^2 exp(j 2 pi m v_l); r[0] = 1 for a normalized path set.
SpatialCovariance analytic_covariance(const PathSet &paths, std::size_t antennas);

// Average of h(:,k) h(:,k)^H over all realizations and subcarriers.
HermitianMatrix sample_covariance(const std::vector<ChannelRealization> &realizations);

// Path powers binned over a uniform wavenumber grid on [-1/2, 1/2).
std::vector<double> spatial_spectrum_on_grid(const PathSet &paths, std::size_t gridsize);

// Structured-text fixtures: "covquant-pathset v1" header, one
// "sigma2 tau wavenumber" line per path.
void save_path_set(const PathSet &paths, std::ostream &out);
void save_path_set(const PathSet &paths, const std::string &filename);
PathSet load_path_set(std::istream &in);
PathSet load_path_set(const std::string &filename);

// ---- Uniform planar array -----------------------------------------------

struct Path2D
{
    double power = 0.0;
    double delay = 0.0;
    double wavenumber_v = 0.0; // vertical axis
    double wavenumber_h = 0.0; // horizontal axis
};

struct PathSet2D
{
    std::vector<Path2D> paths;
    double total_power() const;
};

// Per-drop azimuth/zenith windows with random central angle and random spread;
// wavenumbers v_V = spacing cos(zenith), v_H = spacing sin(zenith) cos(azimuth).
struct Cluster2DConfig
{
    std::size_t clusters = 20;
    std::size_t subpaths_per_cluster = 20;
    double azimuth_span_deg = 180.0;    // central azimuth ~ U(-span, +span)
    double max_spread_deg = 45.0;       // per-drop angular spread ~ U(0, max_spread)
    double subpath_spread_deg = 2.0;
    double delay_spread_s = 0.5e-6;
    double power_decay_s = 0.5e-6;
    double antenna_spacing = 0.5;
};

PathSet2D draw_path_set_2d(const Cluster2DConfig &cfg, RngStream &rng);

// Kronecker steering: element (m * cols_h + n) = exp(j 2 pi (m v_V + n v_H)).
std::vector<cplx> steering_vector_2d(std::size_t rows_v, std::size_t cols_h, double wavenumber_v,
                                     double wavenumber_h);

// Dense (rows_v * cols_h) covariance sum_l sigma_l^2 s_l s_l^H.
HermitianMatrix analytic_covariance_2d(const PathSet2D &paths, std::size_t rows_v, std::size_t cols_h);

} // namespace covquant

#endif
