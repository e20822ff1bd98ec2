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

#ifndef COVQUANT_CODEBOOK_H
#define COVQUANT_CODEBOOK_H

#include <cstddef>
#include <string>
#include <vector>

#include "covquant/linalg.hpp"

namespace covquant
{

// Half-open wavenumber interval [lo, hi). Codeword q of a size-Q codebook owns
// [-1/2 + q/Q, -1/2 + (q+1)/Q); a shared band edge belongs to the band whose
// lower edge it is.
struct Band
{
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return v >= lo && v < hi; }
};

Band codeword_band(std::size_t q, std::size_t bands);

// Index of the band containing wavenumber v (wrapped into [-1/2, 1/2)).
std::size_t band_index(double v, std::size_t bands);

// Array response {e^{j 2 pi m v}}, m = 0 .. antennas-1.
std::vector<cplx> steering_vector(std::size_t antennas, double v);

// T = integral over the band of s(v) s^H(v) dv; Hermitian Toeplitz with
// T(n, m) = width sinc(pi (n-m) width) e^{j pi (n-m)(lo+hi)}. For any antenna
// weight c, c^H T c is the exact band power of its transmit spectrum.
Matrix steering_band_integral(std::size_t antennas, const Band &band);

// Flat-spectrum codeword correlation
//   r_q[m] = (1/sqrt(Q)) sinc(pi m / Q) e^{j 2 pi m (-1/2 + (q+0.5)/Q)}
// with sinc(x) = sin(x)/x, sinc(0) = 1. Valid for any integer m.
cplx codeword_correlation(std::size_t q, std::size_t bands, long m);

// Fejer window transform G(v) = sin^2(pi M v) / sin^2(pi v); G = M^2 at integer v.
double dirichlet_window(double v, std::size_t antennas);

struct CodewordEntry
{
    std::size_t q = 0;
    std::size_t bands = 0;
    Band band;
    std::vector<cplx> correlation;   // r_q[m], m = 0 .. M-1
    HermitianMatrix matrix;          // R_q
    std::vector<double> eigenvalues; // all M, descending
    Matrix basis;                    // U_q, M x D (top-D eigenvectors)
    double lambda_min = 0.0;         // extremes over the retained D
    double lambda_max = 0.0;
};

struct Codebook
{
    std::size_t antennas = 0;  // M
    std::size_t size = 0;      // Q
    std::size_t dimension = 0; // D
    std::vector<CodewordEntry> entries;
};

CodewordEntry build_codeword_entry(std::size_t antennas, std::size_t bands, std::size_t q, std::size_t dimension);
Codebook build_codebook(std::size_t antennas, std::size_t bands, std::size_t dimension);

// Top-D eigenvectors of the unmodulated kernel {sinc(pi (m-n)/Q)}; real entries
// after phase fixing. The codeword bases are these sequences modulated by the
// band-center carrier.
Matrix standard_dpss_basis(std::size_t antennas, std::size_t bands, std::size_t dimension);

// Wavenumber indices n (0 .. M-1) whose steering wavenumber n/M, wrapped into
// [-1/2, 1/2), falls inside band q. Exactly M/Q indices when Q divides M.
std::vector<std::size_t> dft_band_columns(std::size_t antennas, std::size_t bands, std::size_t q);

// Orthonormal steering columns f_n(m) = e^{+j 2 pi m n / M} / sqrt(M) for
// n in dft_band_columns(M, Q, q). Column f_n matches a path at v = n/M.
Matrix dft_submatrix(std::size_t antennas, std::size_t bands, std::size_t q);

// Midpoint discretization of the band steering sweep: (1/N) S_N S_N^H with
// S_N columns s(lo + (n + 1/2)/(Q N)). Converges to sqrt(Q) R_q.
Matrix subspace_limit_matrix(std::size_t antennas, std::size_t bands, std::size_t q, std::size_t samples);

Matrix kron(const Matrix &a, const Matrix &b);

struct Codeword2D
{
    std::size_t p = 0; // vertical band
    std::size_t q = 0; // horizontal band
    std::vector<double> eigenvalues;                      // top-D products, descending
    Matrix basis;                                         // (MV*MH) x D, Kronecker columns
    std::vector<std::pair<std::size_t, std::size_t>> component_indices; // (vertical d, horizontal d)
};

struct Codebook2D
{
    std::size_t rows_v = 0, cols_h = 0; // M_V, M_H
    std::size_t bands_v = 0, bands_h = 0; // P, Q
    std::size_t dimension = 0;
    std::vector<CodewordEntry> vertical;   // 1-D factors, full M_V/M_H dimension
    std::vector<CodewordEntry> horizontal;
    std::vector<Codeword2D> entries;       // indexed p * bands_h + q
};

// Separable two-dimensional codebook: r_{p,q}[m,n] = r_p[m] r_q[n], hence
// R_{p,q} = R_p (x) R_q and the eigenbasis is Kronecker products of the 1-D
// eigenvectors, keeping the top D eigenvalue products.
Codebook2D build_upa_codebook(std::size_t rows_v, std::size_t cols_h, std::size_t bands_v, std::size_t bands_h,
                              std::size_t dimension);

// Dense R_{p,q} for test oracles.
HermitianMatrix upa_codeword_matrix(const Codebook2D &cb, std::size_t p, std::size_t q);

// Eigenvalue CSV plus one structured-text basis fixture per codeword
// (12 significant digits, real/imag pairs).
void export_codebook(const Codebook &cb, const std::string &directory);

} // namespace covquant

#endif
