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

#ifndef COVQUANT_METRICS_H
#define COVQUANT_METRICS_H

#include <cstddef>
#include <string>
#include <vector>

#include "covquant/channel.hpp"
#include "covquant/codebook.hpp"
#include "covquant/linalg.hpp"

namespace covquant
{

// Average SNR Tr(W^H R W) of an inner precoder with orthonormal columns
// (checked to 1e-8 elementwise).
double average_snr(const Matrix &w, const HermitianMatrix &r);

enum class SelectionCriterion
{
    average_snr,      // argmax Tr(U_q^H R U_q)
    trace_bound,      // argmax Tr(R_q R)
    frobenius,        // argmin ||R_q - R||_F
    spectral_chordal, // argmax spectrum overlap (= argmin chordal distance)
};

SelectionCriterion selection_criterion_from_string(const std::string &name);

// Best codeword under the criterion; ties break toward smaller q.
std::size_t select_codeword(const Codebook &cb, const SpatialCovariance &cov, SelectionCriterion criterion);

struct BoundCheck
{
    double lower = 0.0; // lambda_max^-1 Tr(R~_q R), rank-D convention
    double mid = 0.0;   // Tr(U_q^H R U_q)
    double upper = 0.0; // lambda_min^-1 Tr(R~_q R)
    // Same bounds evaluated with the full-rank Tr(R_q R); reported for
    // comparison, not guaranteed to sandwich.
    double lower_full_rank = 0.0;
    double upper_full_rank = 0.0;
};

// Eigenvalue sandwich with R~_q = U_q Lambda_q U_q^H and the eigenvalue
// extremes taken over the retained D. Throws if the sandwich fails beyond 1e-9.
BoundCheck eigenvalue_sandwich_check(const HermitianMatrix &r, const CodewordEntry &entry);

struct LeakageReport
{
    double in_band = 0.0;
    double out_of_band = 0.0;
    std::vector<double> grid;    // wavenumber samples
    std::vector<cplx> spectrum;  // A(v) on the grid
};

// Transmit spectrum A(v) = (1/M) s^H(v) W outer on a uniform grid, with the
// in-band power fraction computed in closed form from the band steering
// integral. The outer precoder must be unit norm.
LeakageReport transmit_spectrum(const Matrix &w, const std::vector<cplx> &outer, const Band &band,
                                std::size_t gridsize = 4096);

// Fraction of |A(v)|^2 inside the band for a single antenna weight vector,
// (w^H T w) / (w^H w) with T the band steering integral.
double power_concentration(const std::vector<cplx> &w, const Band &band);

// The D columns of W whose band power concentration is largest (ties toward
// the lower original column index). Column order preserved.
Matrix most_concentrated_columns(const Matrix &w, const Band &band, std::size_t count);

// Closed-form average SNR M sum_{n_l in N_q} sigma_l^2 for path wavenumbers on
// the DFT grid (integer multiples of 1/M). Throws on off-grid wavenumbers.
double circular_case_snr(const PathSet &paths, std::size_t q, std::size_t antennas, std::size_t bands);

struct SnrLossSeries
{
    std::vector<std::size_t> dimensions; // D = 1 .. Dmax
    std::vector<double> quantized;       // gamma_q[D], growing column sets of the selected codeword
    std::vector<double> ideal;           // gamma_o[D], top-D eigenvectors of R itself
    std::vector<double> loss;            // L[D] = gamma_o[D] - gamma_q[D]
    std::vector<double> delta_quantized; // (gamma_q[D+1] - gamma_q[D]) / M
    std::vector<double> delta_ideal;     // (gamma_o[D+1] - gamma_o[D]) / M
    std::size_t selected = 0;            // codeword index used for gamma_q
};

SnrLossSeries relative_snr_loss(const SpatialCovariance &cov, const Codebook &cb, std::size_t max_dimension);

// Chordal distance between two unit-energy flat codeword spectra: 0 when
// p == q, 1 otherwise (disjoint bands).
double spectral_chordal_distance(std::size_t p, std::size_t q, std::size_t bands);

} // namespace covquant

#endif
