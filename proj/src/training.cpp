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

#include "covquant/training.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "covquant/metrics.hpp"
#include "covquant/parallel.hpp"

namespace covquant
{

SubcarrierAllocation allocate_subcarriers(std::size_t subcarriers, std::size_t codewords)
{
    if (codewords == 0 || subcarriers % codewords != 0)
        throw std::invalid_argument("allocate_subcarriers: Q must divide K.");
    SubcarrierAllocation out;
    out.subcarriers = subcarriers;
    out.codewords = codewords;
    out.per_codeword.resize(codewords);
    const std::size_t per = subcarriers / codewords;
    for (std::size_t q = 0; q < codewords; ++q)
    {
        out.per_codeword[q].reserve(per);
        for (std::size_t p = 0; p < per; ++p)
            out.per_codeword[q].push_back(p * codewords + q);
    }
    return out;
}

std::vector<cplx> random_outer_precoder(std::size_t dimension, RngStream &rng)
{
    if (dimension == 0)
        throw std::invalid_argument("random_outer_precoder: D must be >= 1.");
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(dimension));
    std::vector<cplx> v(dimension);
    for (std::size_t d = 0; d < dimension; ++d)
    {
        const std::uint64_t bits = rng.next_u64();
        v[d] = cplx((bits & 1) ? scale : -scale, (bits & 2) ? scale : -scale);
    }
    return v;
}

TrainingFrame make_training_frame(std::size_t subcarriers, std::size_t codewords, std::size_t dimension,
                                  double noise_power, RngStream &rng)
{
    if (noise_power < 0.0)
        throw std::invalid_argument("make_training_frame: noise power must be nonnegative.");
    allocate_subcarriers(subcarriers, codewords); // validates divisibility
    TrainingFrame f;
    f.subcarriers = subcarriers;
    f.codewords = codewords;
    f.noise_power = noise_power;
    f.precoders.reserve(subcarriers);
    f.symbols.assign(subcarriers, cplx(1.0, 0.0));
    for (std::size_t k = 0; k < subcarriers; ++k)
        f.precoders.push_back(random_outer_precoder(dimension, rng));
    return f;
}

SnrEstimate estimate_codeword_snrs(const ChannelRealization &chan, const Codebook &cb, const TrainingFrame &frame,
                                   RngStream &rng)
{
    if (frame.subcarriers != chan.subcarriers)
        throw std::invalid_argument("estimate_codeword_snrs: frame/channel subcarrier mismatch.");
    if (cb.antennas != chan.antennas)
        throw std::invalid_argument("estimate_codeword_snrs: codebook/channel antenna mismatch.");
    if (frame.codewords != cb.size)
        throw std::invalid_argument("estimate_codeword_snrs: frame/codebook size mismatch.");

    const double gain = std::sqrt(static_cast<double>(cb.dimension));
    const double noise_scale = std::sqrt(frame.noise_power);

    SnrEstimate est;
    est.snr.assign(cb.size, 0.0);
    est.samples.assign(cb.size, 0);
    for (std::size_t k = 0; k < frame.subcarriers; ++k)
    {
        const std::size_t q = k % cb.size;
        const std::vector<cplx> h = chan.h.column(k);
        const std::vector<cplx> eff = adjoint_matvec(cb.entries[q].basis, h); // U_q^H h
        cplx sig(0.0);
        for (std::size_t d = 0; d < eff.size(); ++d)
            sig += std::conj(eff[d]) * frame.precoders[k][d];
        const cplx y = gain * sig * frame.symbols[k] + noise_scale * rng.complex_normal();
        est.snr[q] += std::norm(std::conj(frame.symbols[k]) * y);
        est.samples[q] += 1;
    }
    for (std::size_t q = 0; q < cb.size; ++q)
        est.snr[q] /= static_cast<double>(est.samples[q]);
    return est;
}

std::vector<Matrix> effective_channel_factors(const Codebook &cb, const HermitianMatrix &r)
{
    if (cb.antennas != r.dim())
        throw std::invalid_argument("effective_channel_factors: dimension mismatch.");
    std::vector<Matrix> factors;
    factors.reserve(cb.size);
    for (const CodewordEntry &e : cb.entries)
    {
        const std::size_t d = e.basis.cols();
        Matrix c(d, d);
        for (std::size_t i = 0; i < d; ++i)
        {
            const std::vector<cplx> ri = matvec(r.matrix(), e.basis.column(i));
            for (std::size_t j = 0; j < d; ++j)
                c(j, i) = inner(e.basis.column(j), ri);
        }
        EvdResult evd = hermitian_evd(HermitianMatrix::from_matrix(c, 1e-8));
        Matrix b = evd.eigenvectors;
        for (std::size_t col = 0; col < d; ++col)
        {
            const double lam = std::max(evd.eigenvalues[col], 0.0);
            const double s = std::sqrt(lam);
            for (std::size_t row = 0; row < d; ++row)
                b(row, col) *= s;
        }
        factors.push_back(std::move(b));
    }
    return factors;
}

SnrEstimate estimate_codeword_snrs_idealized(const std::vector<Matrix> &factors, std::size_t subcarriers,
                                             double noise_power, RngStream &rng)
{
    const std::size_t q_count = factors.size();
    if (q_count == 0 || subcarriers % q_count != 0)
        throw std::invalid_argument("estimate_codeword_snrs_idealized: Q must divide K.");
    const std::size_t dim = factors.front().cols();
    const double gain = std::sqrt(static_cast<double>(dim));
    const double noise_scale = std::sqrt(noise_power);
    const double pscale = 1.0 / std::sqrt(2.0 * static_cast<double>(dim));

    SnrEstimate est;
    est.snr.assign(q_count, 0.0);
    est.samples.assign(q_count, subcarriers / q_count);
    std::vector<cplx> xi(dim), eff(dim);
    for (std::size_t k = 0; k < subcarriers; ++k)
    {
        const std::size_t q = k % q_count;
        const Matrix &b = factors[q];
        for (std::size_t d = 0; d < dim; ++d)
            xi[d] = rng.complex_normal();
        for (std::size_t row = 0; row < dim; ++row)
        {
            cplx acc(0.0);
            const cplx *br = b.row(row);
            for (std::size_t col = 0; col < dim; ++col)
                acc += br[col] * xi[col];
            eff[row] = acc;
        }
        cplx sig(0.0);
        for (std::size_t d = 0; d < dim; ++d)
        {
            const std::uint64_t bits = rng.next_u64();
            const cplx v((bits & 1) ? pscale : -pscale, (bits & 2) ? pscale : -pscale);
            sig += std::conj(eff[d]) * v;
        }
        const cplx y = gain * sig + noise_scale * rng.complex_normal();
        est.snr[q] += std::norm(y);
    }
    for (std::size_t q = 0; q < q_count; ++q)
        est.snr[q] /= static_cast<double>(est.samples[q]);
    return est;
}

void save_training_frame(const TrainingFrame &frame, std::ostream &out)
{
    const std::size_t dim = frame.precoders.empty() ? 0 : frame.precoders.front().size();
    out << "covquant-frame v1\n"
        << frame.subcarriers << " " << frame.codewords << " " << dim << "\n";
    out << std::setprecision(12) << frame.noise_power << "\n";
    for (std::size_t k = 0; k < frame.subcarriers; ++k)
    {
        out << k << " " << (k % frame.codewords);
        out << " " << frame.symbols[k].real() << " " << frame.symbols[k].imag();
        for (const cplx &v : frame.precoders[k])
            out << " " << v.real() << " " << v.imag();
        out << "\n";
    }
}

TrainingFrame load_training_frame(std::istream &in)
{
    std::string tag, version;
    in >> tag >> version;
    if (tag != "covquant-frame" || version != "v1")
        throw std::runtime_error("Unrecognized training frame header.");
    TrainingFrame f;
    std::size_t dim = 0;
    in >> f.subcarriers >> f.codewords >> dim >> f.noise_power;
    f.symbols.resize(f.subcarriers);
    f.precoders.assign(f.subcarriers, std::vector<cplx>(dim));
    for (std::size_t k = 0; k < f.subcarriers; ++k)
    {
        std::size_t idx = 0, q = 0;
        double re = 0.0, im = 0.0;
        if (!(in >> idx >> q >> re >> im))
            throw std::runtime_error("Truncated training frame file.");
        if (idx != k || q != k % f.codewords)
            throw std::runtime_error("Training frame allocation table is inconsistent.");
        f.symbols[k] = cplx(re, im);
        for (std::size_t d = 0; d < dim; ++d)
        {
            if (!(in >> re >> im))
                throw std::runtime_error("Truncated training frame file.");
            f.precoders[k][d] = cplx(re, im);
        }
    }
    return f;
}

std::vector<std::size_t> feedback_decision(const SnrEstimate &estimate, std::size_t count)
{
    const std::size_t q_count = estimate.snr.size();
    if (count == 0 || count > q_count)
        throw std::invalid_argument("feedback_decision: require 1 <= J <= Q.");
    std::vector<std::size_t> order(q_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&estimate](std::size_t a, std::size_t b) { return estimate.snr[a] > estimate.snr[b]; });
    order.resize(count);
    return order;
}

Matrix multi_codeword_precoder(const Codebook &cb, const std::vector<std::size_t> &indices,
                               std::size_t total_dimension)
{
    if (indices.empty())
        throw std::invalid_argument("multi_codeword_precoder: no codewords selected.");
    if (total_dimension % indices.size() != 0)
        throw std::invalid_argument("multi_codeword_precoder: J must divide D_total.");
    const std::size_t per = total_dimension / indices.size();
    if (per > cb.dimension)
        throw std::invalid_argument("multi_codeword_precoder: per-codeword column budget exceeds basis size.");

    Matrix stacked(cb.antennas, total_dimension);
    std::size_t col = 0;
    for (std::size_t idx : indices)
    {
        if (idx >= cb.size)
            throw std::invalid_argument("multi_codeword_precoder: codeword index out of range.");
        for (std::size_t d = 0; d < per; ++d, ++col)
            stacked.set_column(col, cb.entries[idx].basis.column(d));
    }
    return orthonormalize(stacked);
}

double frame_relative_mse(const SnrEstimate &estimate, const std::vector<double> &true_snr, double noise_power)
{
    if (estimate.snr.size() != true_snr.size())
        throw std::invalid_argument("frame_relative_mse: size mismatch.");
    double acc = 0.0;
    for (std::size_t q = 0; q < true_snr.size(); ++q)
    {
        const double ref = true_snr[q] + noise_power;
        const double err = estimate.snr[q] - ref;
        acc += (err * err) / (ref * ref);
    }
    return acc / static_cast<double>(true_snr.size());
}

double estimator_mse(const EstimationScenario &sc, std::size_t trials, std::size_t jobs)
{
    if (trials == 0)
        throw std::invalid_argument("estimator_mse: need at least one trial.");
    const Codebook cb = build_codebook(sc.antennas, sc.codebook_size, sc.dimension);
    const double n0 = std::pow(10.0, -sc.snr_db / 10.0);
    const RngStream root(sc.seed);

    std::vector<double> per_trial(trials, 0.0);
    parallel_for_indexed(trials, jobs, [&](std::size_t t) {
        RngStream trial = root.substream(t);
        RngStream draw = trial.substream(0);
        RngStream frame_rng = trial.substream(1);

        const PathSet paths = draw_path_set(sc.cluster, draw);
        const SpatialCovariance cov = analytic_covariance(paths, sc.antennas);

        std::vector<double> gamma(cb.size);
        for (std::size_t q = 0; q < cb.size; ++q)
            gamma[q] = average_snr(cb.entries[q].basis, cov.matrix);

        SnrEstimate est{{}, {}};
        if (sc.mode == ChannelMode::per_subcarrier_independent)
        {
            const std::vector<Matrix> factors = effective_channel_factors(cb, cov.matrix);
            est = estimate_codeword_snrs_idealized(factors, sc.subcarriers, n0, frame_rng);
        }
        else
        {
            RngStream chan_rng = trial.substream(2);
            const ChannelRealization chan =
                channel_realization(paths, sc.antennas, sc.subcarriers, sc.symbol_duration, chan_rng);
            const TrainingFrame frame =
                make_training_frame(sc.subcarriers, sc.codebook_size, sc.dimension, n0, frame_rng);
            est = estimate_codeword_snrs(chan, cb, frame, frame_rng);
        }
        per_trial[t] = frame_relative_mse(est, gamma, n0);
    });

    double acc = 0.0;
    for (double v : per_trial)
        acc += v;
    return acc / static_cast<double>(trials);
}

} // namespace covquant
