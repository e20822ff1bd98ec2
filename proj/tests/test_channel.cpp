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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "covquant/channel.hpp"
#include "covquant/linalg.hpp"
#include "covquant/rng.hpp"

using namespace covquant;

namespace
{

PathSet make_paths(std::initializer_list<Path> list)
{
    PathSet ps;
    ps.paths.assign(list);
    return ps;
}

} // namespace

TEST_SUITE_BEGIN("channel");

TEST_CASE("single cluster, single subpath, zero spread, fixed broadside LOS")
{
    ClusterConfig cfg;
    cfg.clusters = 1;
    cfg.subpaths_per_cluster = 1;
    cfg.aod_center_deg = 0.0;
    cfg.aod_halfwidth_deg = 0.0;
    cfg.subpath_spread_deg = 0.0;
    RngStream rng(1);
    const PathSet ps = draw_path_set(cfg, rng);
    REQUIRE(ps.size() == 1);
    CHECK(ps.paths[0].power == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ps.paths[0].wavenumber == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("20 x 20 clustered draw: 400 paths, unit power, wrapped wavenumbers")
{
    ClusterConfig cfg; // defaults are the 20x20 layout
    RngStream rng(7);
    const PathSet ps = draw_path_set(cfg, rng);
    CHECK(ps.size() == 400);
    CHECK(std::abs(ps.total_power() - 1.0) <= 1e-12);
    for (const Path &p : ps.paths)
    {
        CHECK(p.wavenumber >= -0.5);
        CHECK(p.wavenumber < 0.5);
        CHECK(p.delay >= 0.0);
    }
}

TEST_CASE("identical seeds reproduce the path set bit for bit")
{
    ClusterConfig cfg;
    RngStream r1(99), r2(99);
    const PathSet a = draw_path_set(cfg, r1);
    const PathSet b = draw_path_set(cfg, r2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a.paths[i].power == b.paths[i].power);
        CHECK(a.paths[i].delay == b.paths[i].delay);
        CHECK(a.paths[i].wavenumber == b.paths[i].wavenumber);
    }
}

TEST_CASE("empty config rejected")
{
    ClusterConfig cfg;
    cfg.clusters = 0;
    RngStream rng(1);
    CHECK_THROWS_AS(draw_path_set(cfg, rng), std::invalid_argument);
}

TEST_CASE("channel matrix closed forms")
{
    SUBCASE("single path, v = 0, tau = 0, unit gain: all-ones matrix")
    {
        const PathSet ps = make_paths({Path{1.0, 0.0, 0.0}});
        const Matrix h = channel_matrix_from_alphas(ps, 3, 4, 1.0, {cplx(1.0)});
        for (std::size_t m = 0; m < 3; ++m)
            for (std::size_t k = 0; k < 4; ++k)
                CHECK(std::abs(h(m, k) - cplx(1.0)) < 1e-14);
    }
    SUBCASE("single path, v = 1/4, M = 4: phases {1, j, -1, -j}")
    {
        const PathSet ps = make_paths({Path{1.0, 0.0, 0.25}});
        const Matrix h = channel_matrix_from_alphas(ps, 4, 1, 1.0, {cplx(1.0)});
        CHECK(std::abs(h(0, 0) - cplx(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(h(1, 0) - cplx(0.0, 1.0)) < 1e-14);
        CHECK(std::abs(h(2, 0) - cplx(-1.0, 0.0)) < 1e-14);
        CHECK(std::abs(h(3, 0) - cplx(0.0, -1.0)) < 1e-14);
    }
    SUBCASE("two equal paths with delays {0, T/2}: sign flip at k = 1")
    {
        const double T = 1.0 / 15000.0;
        const PathSet ps = make_paths({Path{0.5, 0.0, 0.1}, Path{0.5, T / 2.0, -0.2}});
        const std::vector<cplx> alphas{cplx(0.6, 0.3), cplx(-0.2, 0.9)};
        const Matrix h = channel_matrix_from_alphas(ps, 4, 2, T, alphas);
        for (std::size_t m = 0; m < 4; ++m)
        {
            const cplx expect = alphas[0] * std::polar(1.0, 2.0 * M_PI * 0.1 * static_cast<double>(m)) -
                                alphas[1] * std::polar(1.0, 2.0 * M_PI * -0.2 * static_cast<double>(m));
            CHECK(std::abs(h(m, 1) - expect) < 1e-12);
        }
    }
}

TEST_CASE("realization is recomputable from its stored gains")
{
    ClusterConfig cfg;
    cfg.clusters = 3;
    cfg.subpaths_per_cluster = 5;
    RngStream rng(21);
    const PathSet ps = draw_path_set(cfg, rng);
    const ChannelRealization cr = channel_realization(ps, 8, 16, 1.0 / 15000.0, rng);
    const Matrix rebuilt = channel_matrix_from_alphas(ps, 8, 16, 1.0 / 15000.0, cr.alphas);
    CHECK(frobenius_distance(cr.h, rebuilt) <= 1e-12 * rebuilt.frobenius_norm());
}

TEST_CASE("analytic covariance closed forms")
{
    SUBCASE("single path at v = 0: all-ones, rank one, top eigenvalue M")
    {
        const SpatialCovariance cov = analytic_covariance(make_paths({Path{1.0, 0.0, 0.0}}), 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                CHECK(std::abs(cov.matrix(i, j) - cplx(1.0)) < 1e-14);
        const EvdResult evd = hermitian_evd(cov.matrix);
        CHECK(evd.eigenvalues[0] == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(std::abs(evd.eigenvalues[1]) < 1e-10);
    }
    SUBCASE("two symmetric paths: r[m] = cos(pi m / 2)")
    {
        const SpatialCovariance cov =
            analytic_covariance(make_paths({Path{0.5, 0.0, 0.25}, Path{0.5, 0.0, -0.25}}), 5);
        const double expect[5] = {1.0, 0.0, -1.0, 0.0, 1.0};
        for (std::size_t m = 0; m < 5; ++m)
            CHECK(std::abs(cov.correlation[m] - cplx(expect[m])) < 1e-14);
    }
    SUBCASE("r[0] is 1 for a normalized path set")
    {
        RngStream rng(3);
        ClusterConfig cfg;
        const PathSet ps = draw_path_set(cfg, rng);
        const SpatialCovariance cov = analytic_covariance(ps, 4);
        CHECK(cov.correlation[0].real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("wavenumber aliasing: v and v + 1 give the same correlation")
{
    const SpatialCovariance a = analytic_covariance(make_paths({Path{1.0, 0.0, 0.3}}), 8);
    const SpatialCovariance b = analytic_covariance(make_paths({Path{1.0, 0.0, -0.7}}), 8);
    for (std::size_t m = 0; m < 8; ++m)
        CHECK(std::abs(a.correlation[m] - b.correlation[m]) < 1e-12);
}

TEST_CASE("sample covariance")
{
    SUBCASE("single all-ones realization")
    {
        ChannelRealization cr;
        cr.antennas = 3;
        cr.subcarriers = 1;
        cr.symbol_duration = 1.0;
        cr.h = Matrix(3, 1);
        cr.h(0, 0) = cr.h(1, 0) = cr.h(2, 0) = 1.0;
        const HermitianMatrix r = sample_covariance({cr});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(r(i, j) - cplx(1.0)) < 1e-14);
    }
    SUBCASE("empty list rejected")
    {
        CHECK_THROWS_AS(sample_covariance({}), std::invalid_argument);
    }
    SUBCASE("PSD and convergent to the analytic covariance at 1e5 draws")
    {
        // Monte Carlo oracle for the covariance consistency property.
        ClusterConfig cfg;
        RngStream rng(12345);
        const PathSet ps = draw_path_set(cfg, rng);
        const std::size_t m = 64;
        const SpatialCovariance cov = analytic_covariance(ps, m);

        const std::size_t L = ps.size();
        Matrix steering(m, L);
        for (std::size_t l = 0; l < L; ++l)
            for (std::size_t a = 0; a < m; ++a)
                steering(a, l) = std::polar(1.0, 2.0 * M_PI * ps.paths[l].wavenumber * static_cast<double>(a));

        Matrix acc(m, m);
        const std::size_t draws = 100000;
        std::vector<cplx> gains(L), h(m);
        for (std::size_t n = 0; n < draws; ++n)
        {
            for (std::size_t l = 0; l < L; ++l)
                gains[l] = std::sqrt(ps.paths[l].power) * rng.complex_normal();
            h = matvec(steering, gains);
            for (std::size_t i = 0; i < m; ++i)
            {
                const cplx hi = h[i];
                for (std::size_t j = i; j < m; ++j)
                    acc(i, j) += hi * std::conj(h[j]);
            }
        }
        acc *= cplx(1.0 / static_cast<double>(draws), 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < i; ++j)
                acc(i, j) = std::conj(acc(j, i));
        const HermitianMatrix sample = HermitianMatrix::from_matrix(acc, 1e-9);

        const double rel = frobenius_distance(sample, cov.matrix) / cov.matrix.matrix().frobenius_norm();
        CHECK(rel < 0.02);

        const EvdResult evd = hermitian_evd(sample);
        CHECK(evd.eigenvalues.back() >= -1e-10 * evd.eigenvalues.front());
    }
}

TEST_CASE("spatial spectrum on a grid")
{
    SUBCASE("single path lands in its bin")
    {
        const std::vector<double> bins = spatial_spectrum_on_grid(make_paths({Path{1.0, 0.0, 0.1}}), 10);
        CHECK(bins[6] == doctest::Approx(1.0));
        double sum = 0.0;
        for (double b : bins)
            sum += b;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("uniform paths in [0, 1/8) populate exactly one eighth of the bins")
    {
        RngStream rng(4);
        PathSet ps;
        for (int i = 0; i < 400; ++i)
            ps.paths.push_back(Path{1.0 / 400, 0.0, rng.uniform(0.0, 0.125)});
        const std::vector<double> bins = spatial_spectrum_on_grid(ps, 64);
        for (std::size_t i = 0; i < 64; ++i)
        {
            if (i >= 32 && i < 40)
                CHECK(bins[i] > 0.0);
            else
                CHECK(bins[i] == 0.0);
        }
    }
}

TEST_CASE("path set fixtures round-trip")
{
    ClusterConfig cfg;
    cfg.clusters = 2;
    cfg.subpaths_per_cluster = 3;
    RngStream rng(55);
    const PathSet ps = draw_path_set(cfg, rng);
    std::stringstream buf;
    save_path_set(ps, buf);
    const PathSet back = load_path_set(buf);
    REQUIRE(back.size() == ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
    {
        CHECK(back.paths[i].power == ps.paths[i].power);
        CHECK(back.paths[i].delay == ps.paths[i].delay);
        CHECK(back.paths[i].wavenumber == ps.paths[i].wavenumber);
    }

    std::stringstream bad("covquant-pathset v1\n2\n0.5 0 0.1\n");
    CHECK_THROWS_AS(load_path_set(bad), std::runtime_error);
}

TEST_CASE("2-D path sets and covariance")
{
    Cluster2DConfig cfg;
    RngStream rng(17);
    const PathSet2D ps = draw_path_set_2d(cfg, rng);
    CHECK(ps.paths.size() == cfg.clusters * cfg.subpaths_per_cluster);
    CHECK(std::abs(ps.total_power() - 1.0) <= 1e-12);

    const HermitianMatrix r = analytic_covariance_2d(ps, 4, 4);
    CHECK(r.dim() == 16);
    CHECK(r.trace() == doctest::Approx(16.0).epsilon(1e-9)); // M_V M_H r[0,0]

    // single 2-D path: steering outer product
    PathSet2D one;
    one.paths.push_back(Path2D{1.0, 0.0, 0.25, -0.125});
    const HermitianMatrix r1 = analytic_covariance_2d(one, 3, 2);
    const std::vector<cplx> s = steering_vector_2d(3, 2, 0.25, -0.125);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(r1(i, j) - s[i] * std::conj(s[j])) < 1e-12);
}

TEST_SUITE_END();
