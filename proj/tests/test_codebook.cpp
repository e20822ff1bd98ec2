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
#include <complex>

#include "covquant/codebook.hpp"
#include "covquant/linalg.hpp"
#include "covquant/metrics.hpp"

using namespace covquant;

namespace
{

// Composite Simpson quadrature of the flat codeword spectrum integral
// sqrt(Q) * int_band e^{j 2 pi m v} dv.
cplx correlation_by_quadrature(std::size_t q, std::size_t q_count, long m, std::size_t intervals)
{
    const Band band = codeword_band(q, q_count);
    const double h = band.width() / static_cast<double>(intervals);
    auto f = [&](double v) { return std::polar(1.0, 2.0 * M_PI * static_cast<double>(m) * v); };
    cplx acc = f(band.lo) + f(band.hi);
    for (std::size_t i = 1; i < intervals; ++i)
        acc += f(band.lo + h * static_cast<double>(i)) * ((i % 2) ? 4.0 : 2.0);
    return std::sqrt(static_cast<double>(q_count)) * acc * (h / 3.0);
}

double orthonormality_error(const Matrix &u)
{
    const Matrix g = u.adjoint() * u;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - ((i == j) ? cplx(1.0) : cplx(0.0))));
    return worst;
}

} // namespace

TEST_SUITE_BEGIN("codebook");

TEST_CASE("band bookkeeping")
{
    const Band b4 = codeword_band(4, 8);
    CHECK(b4.lo == doctest::Approx(0.0));
    CHECK(b4.hi == doctest::Approx(0.125));
    CHECK(band_index(0.0, 8) == 4);
    CHECK(band_index(0.125, 8) == 5);   // lower edge of band 5
    CHECK(band_index(-0.5, 8) == 0);
    CHECK(band_index(0.3, 4) == 3);
    CHECK(band_index(1.3, 4) == 3);     // wrapped
}

TEST_CASE("codeword correlation closed form")
{
    CHECK(std::abs(codeword_correlation(3, 8, 0) - cplx(1.0 / std::sqrt(8.0))) < 1e-15);
    CHECK(std::abs(codeword_correlation(4, 8, 1) - cplx(0.318311, 0.131854)) < 1e-5);
    CHECK(std::abs(codeword_correlation(2, 8, 8)) < 1e-15); // sinc(pi) = 0
    // conjugate symmetry in m
    const cplx pos = codeword_correlation(5, 8, 3);
    const cplx neg = codeword_correlation(5, 8, -3);
    CHECK(std::abs(neg - std::conj(pos)) < 1e-15);
}

TEST_CASE("closed form matches Simpson quadrature of the flat spectrum")
{
    for (std::size_t q : {0u, 3u, 7u})
        for (long m : {0L, 1L, 5L, 16L, 31L})
        {
            const cplx closed = codeword_correlation(q, 8, m);
            const cplx quad = correlation_by_quadrature(q, 8, m, 4096);
            CHECK(std::abs(closed - quad) < 1e-9);
        }
}

TEST_CASE("codebook construction, M=64 Q=8 D=6")
{
    const Codebook cb = build_codebook(64, 8, 6);
    REQUIRE(cb.entries.size() == 8);
    const double expected_trace = 64.0 / std::sqrt(8.0);
    for (const CodewordEntry &e : cb.entries)
    {
        CHECK(std::abs(e.matrix.trace() - expected_trace) < 1e-9);
        CHECK(orthonormality_error(e.basis) < 1e-10);
        CHECK(e.lambda_min > 0.0);
        CHECK(e.lambda_max >= e.lambda_min);

        // Slepian dimension heuristic: about M/Q eigenvalues above half peak
        std::size_t above = 0;
        for (double lam : e.eigenvalues)
            above += (lam > 0.5 * e.eigenvalues.front());
        CHECK(above == 8);
    }

    // modulation is a unitary diagonal similarity: spectra agree across q
    for (std::size_t q = 1; q < 8; ++q)
        for (std::size_t d = 0; d < 64; ++d)
            CHECK(std::abs(cb.entries[q].eigenvalues[d] - cb.entries[0].eigenvalues[d]) < 1e-9);
}

TEST_CASE("full-band codebook of size one is the identity")
{
    const Codebook cb = build_codebook(8, 1, 8);
    REQUIRE(cb.entries.size() == 1);
    CHECK(frobenius_distance(cb.entries[0].matrix.matrix(), Matrix::identity(8)) < 1e-12);
    CHECK(orthonormality_error(cb.entries[0].basis) < 1e-10);
}

TEST_CASE("retention floor rejects oversized D with the count reported")
{
    CHECK_THROWS_WITH_AS(build_codeword_entry(16, 4, 1, 16), doctest::Contains("positive eigenvalues"),
                         std::invalid_argument);
}

TEST_CASE("standard DPSS basis")
{
    SUBCASE("full-band kernel is the identity: any orthonormal pair")
    {
        const Matrix u = standard_dpss_basis(2, 1, 2);
        CHECK(orthonormality_error(u) < 1e-12);
    }
    SUBCASE("kernel is symmetric positive definite at M=16 Q=4")
    {
        Matrix k(16, 16);
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j)
            {
                const double x = M_PI * (static_cast<double>(i) - static_cast<double>(j)) / 4.0;
                k(i, j) = (i == j) ? 1.0 : std::sin(x) / x;
            }
        const EvdResult evd = hermitian_evd(HermitianMatrix::from_matrix(k));
        CHECK(evd.eigenvalues.back() > 0.0);
    }
    SUBCASE("entries are real after phase fixing and concentration is ordered")
    {
        const Matrix u = standard_dpss_basis(32, 4, 4);
        for (std::size_t r = 0; r < u.rows(); ++r)
            for (std::size_t c = 0; c < u.cols(); ++c)
                CHECK(std::abs(u(r, c).imag()) < 1e-12);
        // symmetric band around zero for the unmodulated kernel
        const Band sym{-1.0 / 8.0, 1.0 / 8.0};
        CHECK(power_concentration(u.column(0), sym) >= power_concentration(u.column(1), sym));
        CHECK(power_concentration(u.column(1), sym) >= power_concentration(u.column(2), sym));
    }
}

TEST_CASE("modulated-DPSS identity at desk scale, M=32 Q=4")
{
    const std::size_t m = 32, q_count = 4, dim = 8;
    const Matrix dpss = standard_dpss_basis(m, q_count, dim);
    for (std::size_t q = 0; q < q_count; ++q)
    {
        const CodewordEntry e = build_codeword_entry(m, q_count, q, dim);
        const double center = -0.5 + (static_cast<double>(q) + 0.5) / static_cast<double>(q_count);
        for (std::size_t d = 0; d < dim; ++d)
        {
            const double gap_left = (d == 0) ? 1.0 : e.eigenvalues[d - 1] - e.eigenvalues[d];
            const double gap_right = e.eigenvalues[d] - e.eigenvalues[d + 1];
            if (gap_left <= 1e-8 || gap_right <= 1e-8)
                continue;
            std::vector<cplx> demod = e.basis.column(d);
            for (std::size_t row = 0; row < m; ++row)
                demod[row] *= std::polar(1.0, -2.0 * M_PI * center * static_cast<double>(row));
            CHECK(std::abs(inner(dpss.column(d), demod)) > 1.0 - 1e-8);
        }
    }
}

TEST_CASE("DFT submatrix")
{
    SUBCASE("column count and orthonormality, M=4 Q=2 q=1")
    {
        const Matrix f = dft_submatrix(4, 2, 1);
        CHECK(f.cols() == 2);
        CHECK(orthonormality_error(f) < 1e-12);
    }
    SUBCASE("orthonormality at M=64 Q=8 for every band")
    {
        for (std::size_t q = 0; q < 8; ++q)
        {
            const Matrix f = dft_submatrix(64, 8, q);
            CHECK(f.cols() == 8);
            CHECK(orthonormality_error(f) < 1e-12);
        }
    }
    SUBCASE("steering-aligned columns: matched path gives average SNR M")
    {
        const std::size_t m = 8;
        const Matrix f = dft_submatrix(m, 4, 2);
        const std::vector<std::size_t> cols = dft_band_columns(m, 4, 2);
        const std::vector<cplx> s = steering_vector(m, static_cast<double>(cols[0]) / static_cast<double>(m));
        Matrix outer(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                outer(i, j) = s[i] * std::conj(s[j]);
        const HermitianMatrix r = HermitianMatrix::from_matrix(outer, 1e-9);
        Matrix col(m, 1);
        col.set_column(0, f.column(0));
        CHECK(average_snr(col, r) == doctest::Approx(8.0).epsilon(1e-12));
    }
    SUBCASE("main lobes stay inside the band, M=64 Q=8 q=4")
    {
        const Matrix f = dft_submatrix(64, 8, 4);
        const Band band = codeword_band(4, 8);
        for (std::size_t c = 0; c < f.cols(); ++c)
        {
            Matrix w(64, 1);
            w.set_column(0, f.column(c));
            std::vector<cplx> outer{cplx(1.0)};
            const LeakageReport rep = transmit_spectrum(w, outer, band, 4096);
            double best = -1.0;
            double best_v = 0.0;
            for (std::size_t i = 0; i < rep.grid.size(); ++i)
                if (std::norm(rep.spectrum[i]) > best)
                {
                    best = std::norm(rep.spectrum[i]);
                    best_v = rep.grid[i];
                }
            CHECK(band.contains(best_v));
        }
    }
    SUBCASE("Q must divide M")
    {
        CHECK_THROWS_AS(dft_submatrix(10, 4, 0), std::invalid_argument);
    }
}

TEST_CASE("dirichlet window")
{
    CHECK(dirichlet_window(0.0, 8) == doctest::Approx(64.0));
    CHECK(dirichlet_window(1.0, 8) == doctest::Approx(64.0));
    CHECK(std::abs(dirichlet_window(1.0 / 8.0, 8)) < 1e-12);
    CHECK(std::abs(dirichlet_window(3.0 / 8.0, 8)) < 1e-12);

    // integral over one period is M: periodic rectangle rule is exact for
    // trigonometric polynomials below the grid's Nyquist order
    const std::size_t grid = 4096, m = 8;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid; ++i)
        acc += dirichlet_window(-0.5 + static_cast<double>(i) / grid, m);
    CHECK(acc / grid == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("subspace limit matrix converges to sqrt(Q) R_q")
{
    const std::size_t m = 16, q_count = 4, q = 2;
    std::vector<cplx> r(m);
    for (std::size_t k = 0; k < m; ++k)
        r[k] = std::sqrt(static_cast<double>(q_count)) * codeword_correlation(q, q_count, static_cast<long>(k));
    const HermitianMatrix target = toeplitz_from_correlation(r);

    double prev = 1e9;
    for (std::size_t n : {64u, 256u, 1024u})
    {
        const Matrix g = subspace_limit_matrix(m, q_count, q, n);
        const double err = frobenius_distance(g, target.matrix());
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("UPA codebook")
{
    const Codebook2D cb = build_upa_codebook(4, 4, 2, 2, 4);
    REQUIRE(cb.entries.size() == 4);

    SUBCASE("zero-lag correlation is 1/sqrt(PQ) via the trace")
    {
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q)
            {
                const HermitianMatrix r = upa_codeword_matrix(cb, p, q);
                CHECK(r.trace() == doctest::Approx(16.0 / std::sqrt(4.0)).epsilon(1e-9));
            }
    }
    SUBCASE("Kronecker spectral identity against the dense eigensolver")
    {
        const HermitianMatrix r = upa_codeword_matrix(cb, 0, 1);
        const EvdResult evd = hermitian_evd(r);
        const Codeword2D &e = cb.entries[0 * 2 + 1];
        for (std::size_t d = 0; d < e.eigenvalues.size(); ++d)
            CHECK(evd.eigenvalues[d] == doctest::Approx(e.eigenvalues[d]).epsilon(1e-9));
        // top-D subspaces agree (projector distance, robust to clustered pairs)
        CHECK(subspace_distance(e.basis, evd.eigenvectors.columns(0, e.basis.cols())) < 1e-6);
    }
    SUBCASE("basis columns are orthonormal Kronecker products")
    {
        for (const Codeword2D &e : cb.entries)
            CHECK(orthonormality_error(e.basis) < 1e-10);
    }
}

TEST_SUITE_END();
