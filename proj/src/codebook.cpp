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

#include "covquant/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "covquant/channel.hpp"

namespace covquant
{

namespace
{

double sinc(double x)
{
    if (std::abs(x) < 1e-8)
        return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// Count of eigenvalues above the retention floor 1e-12 * lambda_max.
std::size_t positive_count(const std::vector<double> &eig)
{
    if (eig.empty())
        return 0;
    const double floor = 1e-12 * eig.front();
    std::size_t n = 0;
    while (n < eig.size() && eig[n] > floor)
        ++n;
    return n;
}

} // namespace

Band codeword_band(std::size_t q, std::size_t bands)
{
    if (bands == 0 || q >= bands)
        throw std::invalid_argument("codeword_band: require 0 <= q < Q.");
    const double qd = static_cast<double>(q), qq = static_cast<double>(bands);
    return Band{-0.5 + qd / qq, -0.5 + (qd + 1.0) / qq};
}

std::size_t band_index(double v, std::size_t bands)
{
    if (bands == 0)
        throw std::invalid_argument("band_index: Q must be positive.");
    const double w = wrap_wavenumber(v);
    auto idx = static_cast<long>(std::floor((w + 0.5) * static_cast<double>(bands)));
    if (idx < 0)
        idx = 0;
    if (idx >= static_cast<long>(bands))
        idx = static_cast<long>(bands) - 1;
    return static_cast<std::size_t>(idx);
}

std::vector<cplx> steering_vector(std::size_t antennas, double v)
{
    std::vector<cplx> s(antennas);
    for (std::size_t m = 0; m < antennas; ++m)
        s[m] = std::polar(1.0, 2.0 * M_PI * v * static_cast<double>(m));
    return s;
}

Matrix steering_band_integral(std::size_t antennas, const Band &band)
{
    const double width = band.width();
    if (width <= 0.0)
        throw std::invalid_argument("steering_band_integral: band width must be positive.");
    Matrix t(antennas, antennas);
    for (std::size_t n = 0; n < antennas; ++n)
    {
        for (std::size_t m = 0; m < antennas; ++m)
        {
            const double k = static_cast<double>(n) - static_cast<double>(m);
            t(n, m) = width * sinc(M_PI * k * width) * std::polar(1.0, M_PI * k * (band.lo + band.hi));
        }
    }
    return t;
}

cplx codeword_correlation(std::size_t q, std::size_t bands, long m)
{
    if (bands == 0 || q >= bands)
        throw std::invalid_argument("codeword_correlation: require 0 <= q < Q.");
    const double qq = static_cast<double>(bands);
    const double md = static_cast<double>(m);
    const double center = -0.5 + (static_cast<double>(q) + 0.5) / qq;
    return (1.0 / std::sqrt(qq)) * sinc(M_PI * md / qq) * std::polar(1.0, 2.0 * M_PI * md * center);
}

double dirichlet_window(double v, std::size_t antennas)
{
    const double md = static_cast<double>(antennas);
    if (std::abs(v - std::round(v)) < 1e-9)
        return md * md;
    const double num = std::sin(M_PI * md * v);
    const double den = std::sin(M_PI * v);
    return (num * num) / (den * den);
}

namespace
{

// Entry carrying every numerically positive eigenvector.
CodewordEntry build_full_entry(std::size_t antennas, std::size_t bands, std::size_t q)
{
    if (antennas == 0 || bands == 0)
        throw std::invalid_argument("build_codeword_entry: M and Q must be >= 1.");

    std::vector<cplx> r(antennas);
    for (std::size_t m = 0; m < antennas; ++m)
        r[m] = codeword_correlation(q, bands, static_cast<long>(m));

    HermitianMatrix rq = toeplitz_from_correlation(r);
    EvdResult evd = hermitian_evd(rq);

    CodewordEntry e;
    e.q = q;
    e.bands = bands;
    e.band = codeword_band(q, bands);
    e.correlation = std::move(r);
    e.matrix = std::move(rq);
    const std::size_t retained = positive_count(evd.eigenvalues);
    e.basis = evd.eigenvectors.columns(0, retained);
    e.eigenvalues = std::move(evd.eigenvalues);
    e.lambda_max = e.eigenvalues.front();
    e.lambda_min = e.eigenvalues[retained - 1];
    return e;
}

} // namespace

CodewordEntry build_codeword_entry(std::size_t antennas, std::size_t bands, std::size_t q, std::size_t dimension)
{
    if (dimension == 0 || dimension > antennas)
        throw std::invalid_argument("build_codeword_entry: require 1 <= D <= M.");

    CodewordEntry e = build_full_entry(antennas, bands, q);
    const std::size_t retained_limit = e.basis.cols();
    if (dimension > retained_limit)
    {
        std::ostringstream msg;
        msg << "Codeword dimension D = " << dimension << " exceeds the " << retained_limit
            << " numerically positive eigenvalues of R_" << q << ".";
        throw std::invalid_argument(msg.str());
    }
    e.basis = e.basis.columns(0, dimension);
    e.lambda_min = e.eigenvalues[dimension - 1];
    return e;
}

Codebook build_codebook(std::size_t antennas, std::size_t bands, std::size_t dimension)
{
    Codebook cb;
    cb.antennas = antennas;
    cb.size = bands;
    cb.dimension = dimension;
    cb.entries.reserve(bands);
    for (std::size_t q = 0; q < bands; ++q)
        cb.entries.push_back(build_codeword_entry(antennas, bands, q, dimension));
    return cb;
}

Matrix standard_dpss_basis(std::size_t antennas, std::size_t bands, std::size_t dimension)
{
    if (antennas == 0 || bands == 0)
        throw std::invalid_argument("standard_dpss_basis: M and Q must be >= 1.");
    if (dimension == 0 || dimension > antennas)
        throw std::invalid_argument("standard_dpss_basis: require 1 <= D <= M.");
    Matrix kernel(antennas, antennas);
    for (std::size_t i = 0; i < antennas; ++i)
        for (std::size_t j = 0; j < antennas; ++j)
            kernel(i, j) = sinc(M_PI * (static_cast<double>(i) - static_cast<double>(j)) / static_cast<double>(bands));
    EvdResult evd = hermitian_evd(HermitianMatrix::trusted(std::move(kernel)));
    const std::size_t retained_limit = positive_count(evd.eigenvalues);
    if (dimension > retained_limit)
    {
        std::ostringstream msg;
        msg << "DPSS dimension D = " << dimension << " exceeds the " << retained_limit
            << " numerically positive kernel eigenvalues.";
        throw std::invalid_argument(msg.str());
    }
    return evd.eigenvectors.columns(0, dimension);
}

std::vector<std::size_t> dft_band_columns(std::size_t antennas, std::size_t bands, std::size_t q)
{
    if (bands == 0 || antennas % bands != 0)
        throw std::invalid_argument("dft_band_columns: Q must divide M.");
    if (q >= bands)
        throw std::invalid_argument("dft_band_columns: require q < Q.");
    const Band band = codeword_band(q, bands);
    std::vector<std::size_t> cols;
    for (std::size_t n = 0; n < antennas; ++n)
    {
        const double v = wrap_wavenumber(static_cast<double>(n) / static_cast<double>(antennas));
        if (band.contains(v))
            cols.push_back(n);
    }
    return cols;
}

Matrix dft_submatrix(std::size_t antennas, std::size_t bands, std::size_t q)
{
    const std::vector<std::size_t> cols = dft_band_columns(antennas, bands, q);
    Matrix f(antennas, cols.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
    for (std::size_t c = 0; c < cols.size(); ++c)
    {
        const double v = static_cast<double>(cols[c]) / static_cast<double>(antennas);
        for (std::size_t m = 0; m < antennas; ++m)
            f(m, c) = scale * std::polar(1.0, 2.0 * M_PI * v * static_cast<double>(m));
    }
    return f;
}

Matrix subspace_limit_matrix(std::size_t antennas, std::size_t bands, std::size_t q, std::size_t samples)
{
    if (samples == 0)
        throw std::invalid_argument("subspace_limit_matrix: need at least one sample.");
    const Band band = codeword_band(q, bands);
    const double step = 1.0 / (static_cast<double>(bands) * static_cast<double>(samples));
    Matrix acc(antennas, antennas);
    for (std::size_t n = 0; n < samples; ++n)
    {
        const double v = band.lo + (static_cast<double>(n) + 0.5) * step;
        const std::vector<cplx> s = steering_vector(antennas, v);
        for (std::size_t i = 0; i < antennas; ++i)
        {
            const cplx si = s[i];
            for (std::size_t j = 0; j < antennas; ++j)
                acc(i, j) += si * std::conj(s[j]);
        }
    }
    acc *= cplx(1.0 / static_cast<double>(samples), 0.0);
    return acc;
}

Matrix kron(const Matrix &a, const Matrix &b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac)
        {
            const cplx av = a(ar, ac);
            if (av == cplx(0.0))
                continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
        }
    return out;
}

Codebook2D build_upa_codebook(std::size_t rows_v, std::size_t cols_h, std::size_t bands_v, std::size_t bands_h,
                              std::size_t dimension)
{
    if (rows_v == 0 || cols_h == 0 || bands_v == 0 || bands_h == 0 || dimension == 0)
        throw std::invalid_argument("build_upa_codebook: all dimensions must be >= 1.");

    Codebook2D cb;
    cb.rows_v = rows_v;
    cb.cols_h = cols_h;
    cb.bands_v = bands_v;
    cb.bands_h = bands_h;
    cb.dimension = dimension;
    for (std::size_t p = 0; p < bands_v; ++p)
        cb.vertical.push_back(build_full_entry(rows_v, bands_v, p));
    for (std::size_t q = 0; q < bands_h; ++q)
        cb.horizontal.push_back(build_full_entry(cols_h, bands_h, q));

    for (std::size_t p = 0; p < bands_v; ++p)
    {
        const CodewordEntry &ev = cb.vertical[p];
        for (std::size_t q = 0; q < bands_h; ++q)
        {
            const CodewordEntry &eh = cb.horizontal[q];

            // Products over retained pairs; anything involving a dropped 1-D
            // eigenvalue is below the product floor anyway.
            std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> prods;
            prods.reserve(ev.basis.cols() * eh.basis.cols());
            for (std::size_t i = 0; i < ev.basis.cols(); ++i)
                for (std::size_t j = 0; j < eh.basis.cols(); ++j)
                    prods.push_back({ev.eigenvalues[i] * eh.eigenvalues[j], {i, j}});
            std::stable_sort(prods.begin(), prods.end(),
                             [](const auto &a, const auto &b) { return a.first > b.first; });

            const double floor = 1e-12 * prods.front().first;
            std::size_t usable = 0;
            while (usable < prods.size() && prods[usable].first > floor)
                ++usable;
            if (dimension > usable)
            {
                std::ostringstream msg;
                msg << "UPA codeword dimension D = " << dimension << " exceeds the " << usable
                    << " numerically positive eigenvalue products of R_{" << p << "," << q << "}.";
                throw std::invalid_argument(msg.str());
            }

            Codeword2D cw;
            cw.p = p;
            cw.q = q;
            cw.basis = Matrix(rows_v * cols_h, dimension);
            for (std::size_t d = 0; d < dimension; ++d)
            {
                cw.eigenvalues.push_back(prods[d].first);
                cw.component_indices.push_back(prods[d].second);
                const auto [iv, jh] = prods[d].second;
                for (std::size_t m = 0; m < rows_v; ++m)
                    for (std::size_t n = 0; n < cols_h; ++n)
                        cw.basis(m * cols_h + n, d) = ev.basis(m, iv) * eh.basis(n, jh);
            }
            cb.entries.push_back(std::move(cw));
        }
    }
    return cb;
}

HermitianMatrix upa_codeword_matrix(const Codebook2D &cb, std::size_t p, std::size_t q)
{
    if (p >= cb.bands_v || q >= cb.bands_h)
        throw std::invalid_argument("upa_codeword_matrix: band index out of range.");
    const Matrix full = kron(cb.vertical[p].matrix.matrix(), cb.horizontal[q].matrix.matrix());
    return HermitianMatrix::trusted(full);
}

void export_codebook(const Codebook &cb, const std::string &directory)
{
    {
        std::ofstream f(directory + "/codebook_eigenvalues.csv");
        if (!f)
            throw std::runtime_error("Cannot write codebook eigenvalue CSV in " + directory);
        f << "q,index,eigenvalue\n";
        f << std::setprecision(12);
        for (const CodewordEntry &e : cb.entries)
            for (std::size_t d = 0; d < e.eigenvalues.size(); ++d)
                f << e.q << "," << d << "," << e.eigenvalues[d] << "\n";
    }
    for (const CodewordEntry &e : cb.entries)
    {
        std::ostringstream name;
        name << directory << "/u_basis_q" << e.q << ".txt";
        std::ofstream f(name.str());
        if (!f)
            throw std::runtime_error("Cannot write basis fixture " + name.str());
        f << "covquant-basis v1\n" << cb.antennas << " " << cb.dimension << "\n";
        f << std::setprecision(12);
        for (std::size_t m = 0; m < cb.antennas; ++m)
        {
            for (std::size_t d = 0; d < cb.dimension; ++d)
            {
                if (d)
                    f << " ";
                f << e.basis(m, d).real() << " " << e.basis(m, d).imag();
            }
            f << "\n";
        }
    }
}

} // namespace covquant
