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

#ifndef COVQUANT_TRAINING_H
#define COVQUANT_TRAINING_H

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "covquant/channel.hpp"
#include "covquant/codebook.hpp"
#include "covquant/linalg.hpp"
#include "covquant/rng.hpp"

namespace covquant
{

struct SubcarrierAllocation
{
    std::size_t subcarriers = 0;
    std::size_t codewords = 0;
    std::vector<std::vector<std::size_t>> per_codeword; // codeword q owns {p Q + q}

    std::size_t codeword_of(std::size_t k) const { return k % codewords; }
};

// Interleaved allocation: codeword q gets subcarriers {q, q+Q, q+2Q, ...}.
SubcarrierAllocation allocate_subcarriers(std::size_t subcarriers, std::size_t codewords);

// Unit-norm random outer precoder with entries (+-1 +-j) / sqrt(2 D).
std::vector<cplx> random_outer_precoder(std::size_t dimension, RngStream &rng);

// One training symbol across the whole band. Stored precoders are unit norm;
// the training transmit chain applies amplitude sqrt(D) so the effective
// per-subcarrier precoder has identity covariance, which is what makes the
// SNR estimator read gamma_q + N0 instead of gamma_q / D + N0.
struct TrainingFrame
{
    std::size_t subcarriers = 0;
    std::size_t codewords = 0;
    double noise_power = 0.0;
    std::vector<std::vector<cplx>> precoders; // per subcarrier, length D
    std::vector<cplx> symbols;                // unit-modulus training symbols
};

TrainingFrame make_training_frame(std::size_t subcarriers, std::size_t codewords, std::size_t dimension,
                                  double noise_power, RngStream &rng);

struct SnrEstimate
{
    std::vector<double> snr;            // gamma_hat per codeword
    std::vector<std::size_t> samples;   // subcarriers averaged per codeword
};

// Per-codeword average-SNR estimate gamma_hat_q = (Q/K) sum_p |x* y|^2 on the
// codeword's own subcarriers, with fresh noise CN(0, N0) per subcarrier.
SnrEstimate estimate_codeword_snrs(const ChannelRealization &chan, const Codebook &cb, const TrainingFrame &frame,
                                   RngStream &rng);

// D x D factors B_q with B_q B_q^H = U_q^H R U_q, for drawing effective
// channels directly when subcarriers are modeled as independent.
std::vector<Matrix> effective_channel_factors(const Codebook &cb, const HermitianMatrix &r);

// Same estimator, but the effective channel at every subcarrier is an
// independent CN(0, U_q^H R U_q) draw.
SnrEstimate estimate_codeword_snrs_idealized(const std::vector<Matrix> &factors, std::size_t subcarriers,
                                             double noise_power, RngStream &rng);

// Structured-text frame fixture: allocation table and per-subcarrier precoder
// values, 12 significant digits.
void save_training_frame(const TrainingFrame &frame, std::ostream &out);
TrainingFrame load_training_frame(std::istream &in);

// Top-J codeword indices by estimated SNR, descending; ties toward smaller q.
std::vector<std::size_t> feedback_decision(const SnrEstimate &estimate, std::size_t count);

// Concatenates the top D_total/J columns of each selected codeword basis and
// re-orthonormalizes. Cross-band Gram entries are small but nonzero at finite
// M, so the cleanup keeps the orthonormal-precoder contract exact.
Matrix multi_codeword_precoder(const Codebook &cb, const std::vector<std::size_t> &indices,
                               std::size_t total_dimension);

// Squared relative estimation error averaged over codewords for one frame.
double frame_relative_mse(const SnrEstimate &estimate, const std::vector<double> &true_snr, double noise_power);

enum class ChannelMode
{
    per_subcarrier_independent, // idealized: fresh channel per subcarrier
    frequency_correlated,       // literal OFDM frequency response
};

struct EstimationScenario
{
    std::size_t antennas = 64;
    std::size_t subcarriers = 4096;
    std::size_t codebook_size = 8;
    std::size_t dimension = 6;
    double snr_db = 10.0;
    double symbol_duration = 1.0 / 15000.0;
    ChannelMode mode = ChannelMode::per_subcarrier_independent;
    ClusterConfig cluster{1, 20, 0.0, 85.0, 2.0, 0.5e-6, 0.5e-6, 0.5, 0};
    std::uint64_t seed = 1;
};

// Mean relative MSE over independent trials, each with a fresh clustered
// scenario and one training frame. Trials fan out over `jobs` workers; the
// per-trial RNG substreams and index-ordered reduction make the result
// identical for any worker count.
double estimator_mse(const EstimationScenario &scenario, std::size_t trials, std::size_t jobs = 1);

} // namespace covquant

#endif
