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

#include "covquant/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace covquant
{

namespace
{

void require_orthonormal(const Matrix &w, double tol)
{
    const Matrix g = w.adjoint() * w;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
        {
            const cplx expect = (i == j) ? cplx(1.0) : cplx(0.0);
            if (std::abs(g(i, j) - expect) > tol)
                throw std::invalid_argument("Inner precoder columns are not orthonormal.");
        }
}

} // namespace

double average_snr(const Matrix &w, const HermitianMatrix &r)
{
    if (w.rows() != r.dim())
        throw std::invalid_argument("average_snr: precoder rows must match covariance dimension.");
    require_orthonormal(w, 1e-8);
    double snr = 0.0;
    for (std::size_t d = 0; d < w.cols(); ++d)
        snr += quadratic_form(r.matrix(), w.column(d)).real();
    return snr;
}

SelectionCriterion selection_criterion_from_string(const std::string &name)
{
    if (name == "avg-snr")
        return SelectionCriterion::average_snr;
    if (name == "trace-bound")
        return SelectionCriterion::trace_bound;
    if (name == "frobenius")
        return SelectionCriterion::frobenius;
    if (name == "spectral-chordal")
        return SelectionCriterion::spectral_chordal;
    throw std::invalid_argument("Unknown selection criterion: " + name);
}

namespace
{

// Spectrum overlap integral of the flat codeword spectrum with the channel
// spectrum, band-limited to the array aperture:
//   sum_{|m| < M} r[m] conj(r_q[m]).
// Larger overlap = smaller chordal distance.
double spectrum_overlap(const CodewordEntry &entry, const std::vector<cplx> &r)
{
    cplx acc = r[0] * std::conj(entry.correlation[0]);
    for (std::size_t m = 1; m < r.size(); ++m)
        acc += 2.0 * (r[m] * std::conj(entry.correlation[m])).real();
    return acc.real();
}

} // namespace

std::size_t select_codeword(const Codebook &cb, const SpatialCovariance &cov, SelectionCriterion criterion)
{
    if (cb.entries.empty())
        throw std::invalid_argument("select_codeword: empty codebook.");
    if (cb.antennas != cov.matrix.dim())
        throw std::invalid_argument("select_codeword: dimension mismatch.");

    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t q = 0; q < cb.entries.size(); ++q)
    {
        const CodewordEntry &e = cb.entries[q];
        double score = 0.0;
        switch (criterion)
        {
        case SelectionCriterion::average_snr:
            score = average_snr(e.basis, cov.matrix);
            break;
        case SelectionCriterion::trace_bound:
            score = trace_product(e.matrix, cov.matrix);
            break;
        case SelectionCriterion::frobenius:
            score = -frobenius_distance(e.matrix, cov.matrix);
            break;
        case SelectionCriterion::spectral_chordal:
            score = spectrum_overlap(e, cov.correlation);
            break;
        }
        if (q == 0 || score > best_score)
        {
            best = q;
            best_score = score;
        }
    }
    return best;
}

BoundCheck eigenvalue_sandwich_check(const HermitianMatrix &r, const CodewordEntry &entry)
{
    const std::size_t d = entry.basis.cols();
    if (entry.lambda_min <= 0.0)
        throw std::invalid_argument("eigenvalue_sandwich_check: retained eigenvalues must be positive.");
    if (entry.matrix.dim() != r.dim())
        throw std::invalid_argument("eigenvalue_sandwich_check: dimension mismatch.");

    double mid = 0.0;
    double weighted = 0.0; // Tr(R~_q R) = sum_d lambda_d u_d^H R u_d
    for (std::size_t k = 0; k < d; ++k)
    {
        const double m_k = quadratic_form(r.matrix(), entry.basis.column(k)).real();
        mid += m_k;
        weighted += entry.eigenvalues[k] * m_k;
    }

    BoundCheck out;
    out.mid = mid;
    out.lower = weighted / entry.lambda_max;
    out.upper = weighted / entry.lambda_min;
    const double full = trace_product(entry.matrix, r);
    out.lower_full_rank = full / entry.lambda_max;
    out.upper_full_rank = full / entry.lambda_min;

    if (out.lower > out.mid + 1e-9 || out.mid > out.upper + 1e-9)
        throw std::runtime_error("eigenvalue_sandwich_check: eigenvalue sandwich violated.");
    return out;
}

LeakageReport transmit_spectrum(const Matrix &w, const std::vector<cplx> &outer, const Band &band,
                                std::size_t gridsize)
{
    if (outer.size() != w.cols())
        throw std::invalid_argument("transmit_spectrum: outer precoder length mismatch.");
    const double onorm = norm2(outer);
    if (std::abs(onorm - 1.0) > 1e-8)
        throw std::invalid_argument("transmit_spectrum: outer precoder must be unit norm.");
    if (gridsize < 2)
        throw std::invalid_argument("transmit_spectrum: gridsize must be >= 2.");

    const std::size_t m = w.rows();
    const std::vector<cplx> c = matvec(w, outer); // antenna-domain weights

    LeakageReport rep;
    rep.grid.resize(gridsize);
    rep.spectrum.resize(gridsize);
    for (std::size_t i = 0; i < gridsize; ++i)
    {
        const double v = -0.5 + static_cast<double>(i) / static_cast<double>(gridsize);
        rep.grid[i] = v;
        cplx acc(0.0);
        for (std::size_t k = 0; k < m; ++k)
            acc += std::conj(std::polar(1.0, 2.0 * M_PI * v * static_cast<double>(k))) * c[k];
        rep.spectrum[i] = acc / static_cast<double>(m);
    }

    // Closed-form band fraction; the full-band steering integral is identity.
    const Matrix t = steering_band_integral(m, band);
    const double band_power = quadratic_form(t, c).real();
    const double total_power = norm2(c) * norm2(c);
    rep.in_band = band_power / total_power;
    rep.out_of_band = 1.0 - rep.in_band;
    return rep;
}

double power_concentration(const std::vector<cplx> &w, const Band &band)
{
    const double n = norm2(w);
    if (n == 0.0)
        throw std::invalid_argument("power_concentration: zero vector.");
    const Matrix t = steering_band_integral(w.size(), band);
    return quadratic_form(t, w).real() / (n * n);
}

Matrix most_concentrated_columns(const Matrix &w, const Band &band, std::size_t count)
{
    if (count > w.cols())
        throw std::invalid_argument("most_concentrated_columns: count exceeds column count.");
    std::vector<std::size_t> order(w.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> conc(w.cols());
    const Matrix t = steering_band_integral(w.rows(), band);
    for (std::size_t c = 0; c < w.cols(); ++c)
    {
        const std::vector<cplx> col = w.column(c);
        conc[c] = quadratic_form(t, col).real() / (norm2(col) * norm2(col));
    }
    std::stable_sort(order.begin(), order.end(), [&conc](std::size_t a, std::size_t b) { return conc[a] > conc[b]; });
    order.resize(count);
    std::sort(order.begin(), order.end());
    Matrix out(w.rows(), count);
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t r = 0; r < w.rows(); ++r)
            out(r, c) = w(r, order[c]);
    return out;
}

double circular_case_snr(const PathSet &paths, std::size_t q, std::size_t antennas, std::size_t bands)
{
    if (bands == 0 || antennas % bands != 0)
        throw std::invalid_argument("circular_case_snr: Q must divide M.");
    if (q >= bands)
        throw std::invalid_argument("circular_case_snr: require q < Q.");
    const double md = static_cast<double>(antennas);
    double captured = 0.0;
    for (const Path &p : paths.paths)
    {
        const double grid_pos = p.wavenumber * md;
        if (std::abs(grid_pos - std::round(grid_pos)) > 1e-9)
        {
            std::ostringstream msg;
            msg << "circular_case_snr: wavenumber " << p.wavenumber << " is not an integer multiple of 1/M.";
            throw std::invalid_argument(msg.str());
        }
        if (band_index(p.wavenumber, bands) == q)
            captured += p.power;
    }
    return md * captured;
}

SnrLossSeries relative_snr_loss(const SpatialCovariance &cov, const Codebook &cb, std::size_t max_dimension)
{
    if (max_dimension == 0 || max_dimension > cb.dimension)
        throw std::invalid_argument("relative_snr_loss: max dimension exceeds the codebook's retained count.");

    const EvdResult evd = hermitian_evd(cov.matrix);
    const std::size_t md = cov.matrix.dim();

    // Select with the column budget actually used at full dimension.
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t q = 0; q < cb.entries.size(); ++q)
    {
        const double score = average_snr(cb.entries[q].basis.columns(0, max_dimension), cov.matrix);
        if (q == 0 || score > best_score)
        {
            best = q;
            best_score = score;
        }
    }
    const CodewordEntry &entry = cb.entries[best];

    SnrLossSeries out;
    out.selected = best;
    double gq = 0.0, go = 0.0;
    for (std::size_t d = 0; d < max_dimension; ++d)
    {
        gq += quadratic_form(cov.matrix.matrix(), entry.basis.column(d)).real();
        go += evd.eigenvalues[d];
        out.dimensions.push_back(d + 1);
        out.quantized.push_back(gq);
        out.ideal.push_back(go);
        out.loss.push_back(go - gq);
    }
    for (std::size_t i = 0; i + 1 < max_dimension; ++i)
    {
        out.delta_quantized.push_back((out.quantized[i + 1] - out.quantized[i]) / static_cast<double>(md));
        out.delta_ideal.push_back((out.ideal[i + 1] - out.ideal[i]) / static_cast<double>(md));
    }
    return out;
}

double spectral_chordal_distance(std::size_t p, std::size_t q, std::size_t bands)
{
    if (p >= bands || q >= bands)
        throw std::invalid_argument("spectral_chordal_distance: band index out of range.");
    // Unit-energy flat spectra on disjoint bands: overlap is 1 or 0.
    const double overlap = (p == q) ? 1.0 : 0.0;
    return std::sqrt(1.0 - overlap * overlap);
}

} // namespace covquant
