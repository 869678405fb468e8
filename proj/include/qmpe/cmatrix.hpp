#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qmpe/kernels.hpp"

namespace qmpe {

using cd = std::complex<double>;

// Dense square complex matrix, row-major storage. Arithmetic goes through the
// kernel layer so the SIMD lane covers every accumulation-style loop.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cd{0.0, 0.0}) {}

    static CMatrix identity(std::size_t dim);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cd>> rows);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return data_.size(); }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    cd* data() { return data_.data(); }
    const cd* data() const { return data_.data(); }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cd s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cd s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, cd s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b); // matrix product

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    cd trace() const;
    double frobenius_norm() const { return std::sqrt(kern::sumsq(data(), size())); }
    // ||m - m^dagger||_F
    double hermiticity_defect() const;
    bool all_finite() const;

private:
    std::size_t dim_ = 0;
    std::vector<cd> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Tr(a^dagger b), the Hilbert-Schmidt inner product.
cd hs_inner(const CMatrix& a, const CMatrix& b);

// Column-major stacking: vec(X)[i + j*d] = X(i, j), so that
// vec(A X B) = (B^T kron A) vec(X).
std::vector<cd> vectorize(const CMatrix& m);
CMatrix devectorize(const cd* v, std::size_t dim);
inline CMatrix devectorize(const std::vector<cd>& v, std::size_t dim) {
    return devectorize(v.data(), dim);
}

} // namespace qmpe
