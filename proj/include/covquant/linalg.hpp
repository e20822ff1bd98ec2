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

#ifndef COVQUANT_LINALG_H
#define COVQUANT_LINALG_H

#include <complex>
#include <cstddef>
#include <vector>

namespace covquant
{

using cplx = std::complex<double>;

// Dense complex matrix, row-major storage.
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    cplx *data() { return data_.data(); }
    const cplx *data() const { return data_.data(); }

    cplx *row(std::size_t r) { return data_.data() + r * cols_; }
    const cplx *row(std::size_t r) const { return data_.data() + r * cols_; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix &rhs) const;
    Matrix operator-(const Matrix &rhs) const;
    Matrix operator+(const Matrix &rhs) const;
    Matrix &operator*=(cplx scale);

    std::vector<cplx> column(std::size_t c) const;
    void set_column(std::size_t c, const std::vector<cplx> &v);

    // Columns [first, first + count) as a new matrix
    Matrix columns(std::size_t first, std::size_t count) const;

    double frobenius_norm() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

// y = A x
std::vector<cplx> matvec(const Matrix &a, const std::vector<cplx> &x);
// y = A^H x
std::vector<cplx> adjoint_matvec(const Matrix &a, const std::vector<cplx> &x);
// <x, y> = x^H y
cplx inner(const std::vector<cplx> &x, const std::vector<cplx> &y);
double norm2(const std::vector<cplx> &x);
// x^H A x for square A
cplx quadratic_form(const Matrix &a, const std::vector<cplx> &x);

// Square matrix with A[m][n] = conj(A[n][m]) held exactly. Checked construction
// validates conjugate symmetry to a relative tolerance, then symmetrizes so the
// stored matrix is Hermitian to the last bit.
class HermitianMatrix
{
  public:
    HermitianMatrix() = default; // empty placeholder, dim 0

    static HermitianMatrix from_matrix(const Matrix &a, double rel_tol = 1e-12);

    // For producers whose output is Hermitian by construction (Toeplitz fill,
    // symmetrized accumulation). No validation.
    static HermitianMatrix trusted(Matrix a);

    std::size_t dim() const { return mat_.rows(); }
    const Matrix &matrix() const { return mat_; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

    double trace() const;

  private:
    explicit HermitianMatrix(Matrix m) : mat_(std::move(m)) {}
    Matrix mat_;
};

struct EvdResult
{
    std::vector<double> eigenvalues; // sorted descending
    Matrix eigenvectors;             // column d pairs with eigenvalues[d]
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
// rotations. Deterministic: fixed sweep order, eigenvalues sorted descending
// (ties by original index), each eigenvector scaled so its first entry of
// magnitude above 1e-12 is real nonnegative.
//
// Convergence: off-diagonal Frobenius mass below 1e-12 * ||A||_F, at most
// 100 sweeps. Throws std::runtime_error if the cap is hit.
EvdResult hermitian_evd(const HermitianMatrix &a);

// A[m][n] = r[m-n] with r[-m] = conj(r[m]). r[0] must be real nonnegative.
HermitianMatrix toeplitz_from_correlation(const std::vector<cplx> &r);

// Tr(A B) for Hermitian A, B of equal dimension. The product trace of two
// Hermitian matrices is real; the imaginary residue is checked against 1e-10
// and discarded.
double trace_product(const HermitianMatrix &a, const HermitianMatrix &b);

double frobenius_distance(const Matrix &a, const Matrix &b);
double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b);

// Frobenius distance between the orthogonal projectors of two orthonormal
// column blocks: || U U^H - V V^H ||_F. Used wherever eigenvalue clusters make
// individual eigenvectors non-comparable.
double subspace_distance(const Matrix &u, const Matrix &v);

// Two-pass modified Gram-Schmidt. Throws std::runtime_error if a column drops
// below rank_tol * its input norm (rank deficiency).
Matrix orthonormalize(const Matrix &a, double rank_tol = 1e-8);

} // namespace covquant

#endif
