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

#include "covquant/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace covquant
{

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("Matrix dimensions must be positive.");
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const
{
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

Matrix Matrix::operator*(const Matrix &rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("Matrix product dimension mismatch.");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        const cplx *arow = row(r);
        cplx *orow = out.row(r);
        for (std::size_t k = 0; k < cols_; ++k)
        {
            const cplx a = arow[k];
            if (a == cplx(0.0, 0.0))
                continue;
            const cplx *brow = rhs.row(k);
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                orow[c] += a * brow[c];
        }
    }
    return out;
}

Matrix Matrix::operator-(const Matrix &rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix difference dimension mismatch.");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::operator+(const Matrix &rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("Matrix sum dimension mismatch.");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

Matrix &Matrix::operator*=(cplx scale)
{
    for (cplx &v : data_)
        v *= scale;
    return *this;
}

std::vector<cplx> Matrix::column(std::size_t c) const
{
    std::vector<cplx> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

void Matrix::set_column(std::size_t c, const std::vector<cplx> &v)
{
    if (v.size() != rows_)
        throw std::invalid_argument("Column length mismatch.");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = v[r];
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const
{
    if (first + count > cols_)
        throw std::invalid_argument("Column range out of bounds.");
    Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c)
            out(r, c) = (*this)(r, first + c);
    return out;
}

double Matrix::frobenius_norm() const
{
    double s = 0.0;
    for (const cplx &v : data_)
        s += std::norm(v);
    return std::sqrt(s);
}

std::vector<cplx> matvec(const Matrix &a, const std::vector<cplx> &x)
{
    if (x.size() != a.cols())
        throw std::invalid_argument("matvec dimension mismatch.");
    std::vector<cplx> y(a.rows(), cplx(0.0));
    for (std::size_t r = 0; r < a.rows(); ++r)
    {
        const cplx *arow = a.row(r);
        cplx acc(0.0);
        for (std::size_t c = 0; c < a.cols(); ++c)
            acc += arow[c] * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<cplx> adjoint_matvec(const Matrix &a, const std::vector<cplx> &x)
{
    if (x.size() != a.rows())
        throw std::invalid_argument("adjoint_matvec dimension mismatch.");
    std::vector<cplx> y(a.cols(), cplx(0.0));
    for (std::size_t r = 0; r < a.rows(); ++r)
    {
        const cplx *arow = a.row(r);
        const cplx xr = x[r];
        for (std::size_t c = 0; c < a.cols(); ++c)
            y[c] += std::conj(arow[c]) * xr;
    }
    return y;
}

cplx inner(const std::vector<cplx> &x, const std::vector<cplx> &y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("inner product dimension mismatch.");
    cplx acc(0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm2(const std::vector<cplx> &x)
{
    double s = 0.0;
    for (const cplx &v : x)
        s += std::norm(v);
    return std::sqrt(s);
}

cplx quadratic_form(const Matrix &a, const std::vector<cplx> &x)
{
    return inner(x, matvec(a, x));
}

HermitianMatrix HermitianMatrix::from_matrix(const Matrix &a, double rel_tol)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("Hermitian matrix must be square.");
    double max_abs = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            max_abs = std::max(max_abs, std::abs(a(r, c)));
    const double tol = rel_tol * std::max(max_abs, 1.0);

    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - std::conj(a(c, r))));
    if (worst > tol)
    {
        std::ostringstream msg;
        msg << "Matrix is not Hermitian: max |A - A^H| entry " << worst << " exceeds tolerance " << tol;
        throw std::invalid_argument(msg.str());
    }

    Matrix sym(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
    {
        sym(r, r) = cplx(a(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < a.cols(); ++c)
        {
            const cplx v = 0.5 * (a(r, c) + std::conj(a(c, r)));
            sym(r, c) = v;
            sym(c, r) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::trusted(Matrix a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("Hermitian matrix must be square.");
    return HermitianMatrix(std::move(a));
}

double HermitianMatrix::trace() const
{
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
        t += mat_(i, i).real();
    return t;
}

namespace
{

double offdiag_frobenius(const Matrix &a)
{
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c)
                s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Scale a unit eigenvector so its first entry with magnitude above 1e-12 is
// real nonnegative. Makes the decomposition reproducible in exported fixtures.
void fix_phase(Matrix &v, std::size_t col)
{
    for (std::size_t r = 0; r < v.rows(); ++r)
    {
        const cplx e = v(r, col);
        const double mag = std::abs(e);
        if (mag > 1e-12)
        {
            const cplx rot = std::conj(e) / mag;
            for (std::size_t i = 0; i < v.rows(); ++i)
                v(i, col) *= rot;
            return;
        }
    }
}

} // namespace

EvdResult hermitian_evd(const HermitianMatrix &h)
{
    const std::size_t n = h.dim();
    Matrix a = h.matrix();
    Matrix v = Matrix::identity(n);

    const double fro = a.frobenius_norm();
    const double target = 1e-12 * fro;
    // Entries this small cannot lift the off-diagonal mass back above target.
    const double skip = (n > 0) ? 1e-3 * target / static_cast<double>(n) : 0.0;

    constexpr int max_sweeps = 100;
    bool converged = (n < 2) || (fro == 0.0);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep)
    {
        for (std::size_t p = 0; p + 1 < n; ++p)
        {
            for (std::size_t q = p + 1; q < n; ++q)
            {
                const cplx beta = a(p, q);
                const double m = std::abs(beta);
                if (m <= skip)
                    continue;

                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const cplx phase = beta / m; // e^{i phi}

                // tan(2 theta) = 2m / (alpha - gamma); smaller-angle root for stability
                double t;
                const double zeta = (alpha - gamma) / (2.0 * m);
                if (std::isinf(zeta))
                    t = 0.0;
                else
                    t = ((zeta >= 0.0) ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx s_pos = s * phase;            // s e^{+i phi}
                const cplx s_neg = s * std::conj(phase); // s e^{-i phi}

                // A <- U^H A U with U = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                for (std::size_t i = 0; i < n; ++i)
                {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + s_neg * aiq;
                    a(i, q) = -s_pos * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j)
                {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + s_pos * aqj;
                    a(q, j) = -s_neg * apj + c * aqj;
                }
                // Rotated 2x2 block, in exact closed form
                const double cs2m = 2.0 * c * s * m;
                a(p, p) = cplx(c * c * alpha + s * s * gamma + cs2m, 0.0);
                a(q, q) = cplx(s * s * alpha + c * c * gamma - cs2m, 0.0);
                a(p, q) = cplx(0.0);
                a(q, p) = cplx(0.0);

                for (std::size_t i = 0; i < n; ++i)
                {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + s_neg * viq;
                    v(i, q) = -s_pos * vip + c * viq;
                }
            }
        }
        converged = offdiag_frobenius(a) <= target;
    }
    if (!converged)
        throw std::runtime_error("Jacobi eigensolver failed to converge within 100 sweeps.");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EvdResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t d = 0; d < n; ++d)
    {
        out.eigenvalues[d] = a(order[d], order[d]).real();
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, d) = v(r, order[d]);
        fix_phase(out.eigenvectors, d);
    }
    return out;
}

HermitianMatrix toeplitz_from_correlation(const std::vector<cplx> &r)
{
    if (r.empty())
        throw std::invalid_argument("Correlation sequence must be nonempty.");
    if (std::abs(r[0].imag()) > 1e-12 * std::max(1.0, std::abs(r[0])))
        throw std::invalid_argument("r[0] must be real (zero-lag correlation).");
    if (r[0].real() < 0.0)
        throw std::invalid_argument("r[0] must be nonnegative.");

    const std::size_t m = r.size();
    Matrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
    {
        a(i, i) = cplx(r[0].real(), 0.0);
        for (std::size_t j = 0; j < i; ++j)
        {
            a(i, j) = r[i - j];
            a(j, i) = std::conj(r[i - j]);
        }
    }
    return HermitianMatrix::trusted(std::move(a));
}

double trace_product(const HermitianMatrix &ha, const HermitianMatrix &hb)
{
    if (ha.dim() != hb.dim())
        throw std::invalid_argument("trace_product dimension mismatch.");
    const Matrix &a = ha.matrix();
    const Matrix &b = hb.matrix();
    const std::size_t n = a.rows();
    cplx acc(0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            acc += a(r, c) * b(c, r);
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
        throw std::runtime_error("trace_product: imaginary residue exceeds tolerance.");
    return acc.real();
}

double frobenius_distance(const Matrix &a, const Matrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("frobenius_distance dimension mismatch.");
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            s += std::norm(a(r, c) - b(r, c));
    return std::sqrt(s);
}

double frobenius_distance(const HermitianMatrix &a, const HermitianMatrix &b)
{
    return frobenius_distance(a.matrix(), b.matrix());
}

double subspace_distance(const Matrix &u, const Matrix &v)
{
    if (u.rows() != v.rows())
        throw std::invalid_argument("subspace_distance row mismatch.");
    const Matrix pu = u * u.adjoint();
    const Matrix pv = v * v.adjoint();
    return frobenius_distance(pu, pv);
}

Matrix orthonormalize(const Matrix &a, double rank_tol)
{
    Matrix q = a;
    const std::size_t d = a.cols();
    for (std::size_t c = 0; c < d; ++c)
    {
        std::vector<cplx> col = q.column(c);
        const double input_norm = norm2(col);
        for (int pass = 0; pass < 2; ++pass)
        {
            for (std::size_t j = 0; j < c; ++j)
            {
                const std::vector<cplx> prev = q.column(j);
                const cplx proj = inner(prev, col);
                for (std::size_t r = 0; r < col.size(); ++r)
                    col[r] -= proj * prev[r];
            }
        }
        const double nrm = norm2(col);
        if (nrm < rank_tol * std::max(input_norm, 1e-300))
            throw std::runtime_error("orthonormalize: rank-deficient column set.");
        for (cplx &x : col)
            x /= nrm;
        q.set_column(c, col);
    }
    return q;
}

} // namespace covquant
