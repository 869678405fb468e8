#include "qmpe/cmatrix.hpp"

#include <cassert>
#include <cmath>

namespace qmpe {

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = cd{1.0, 0.0};
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cd>> rows) {
    CMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        assert(row.size() == m.dim_);
        std::size_t j = 0;
        for (cd v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    assert(dim_ == o.dim_);
    kern::axpy(cd{1.0, 0.0}, o.data(), data(), size());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    assert(dim_ == o.dim_);
    kern::axpy(cd{-1.0, 0.0}, o.data(), data(), size());
    return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
    kern::scal(s, data(), size());
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    assert(a.dim() == b.dim());
    const std::size_t n = a.dim();
    CMatrix c(n);
    // c_row_i += a(i,k) * b_row_k keeps the inner loop contiguous.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            kern::axpy(a(i, k), b.data() + k * n, c.data() + i * n, n);
    return c;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMatrix CMatrix::conjugate() const {
    CMatrix m(dim_);
    for (std::size_t i = 0; i < size(); ++i) m.data_[i] = std::conj(data_[i]);
    return m;
}

cd CMatrix::trace() const {
    cd t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::hermiticity_defect() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            acc += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(acc);
}

bool CMatrix::all_finite() const {
    for (const cd& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    CMatrix c(na * nb);
    for (std::size_t ia = 0; ia < na; ++ia)
        for (std::size_t ja = 0; ja < na; ++ja) {
            const cd f = a(ia, ja);
            if (f == cd{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < nb; ++ib)
                for (std::size_t jb = 0; jb < nb; ++jb)
                    c(ia * nb + ib, ja * nb + jb) = f * b(ib, jb);
        }
    return c;
}

cd hs_inner(const CMatrix& a, const CMatrix& b) {
    assert(a.dim() == b.dim());
    return kern::dotc(a.data(), b.data(), a.size());
}

std::vector<cd> vectorize(const CMatrix& m) {
    const std::size_t d = m.dim();
    std::vector<cd> v(d * d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) v[i + j * d] = m(i, j);
    return v;
}

CMatrix devectorize(const cd* v, std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = v[i + j * dim];
    return m;
}

} // namespace qmpe
