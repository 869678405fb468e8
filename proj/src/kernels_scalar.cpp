#include "qmpe/kernels.hpp"

namespace qmpe::kern {

namespace {

void axpy_scalar(cd a, const cd* x, cd* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(cd a, cd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cd dotu_scalar(const cd* x, const cd* y, std::size_t n) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cd dotc_scalar(const cd* x, const cd* y, std::size_t n) {
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double sumsq_scalar(const cd* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return acc;
}

void gemv_scalar(const cd* a, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dotu_scalar(a + r * cols, x, cols);
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{
        "scalar", axpy_scalar, scal_scalar, dotu_scalar, dotc_scalar, sumsq_scalar, gemv_scalar,
    };
    return b;
}

} // namespace qmpe::kern
