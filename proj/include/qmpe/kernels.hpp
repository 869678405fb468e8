#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace qmpe::kern {

using cd = std::complex<double>;

// Dispatch table for the data-parallel complex-vector primitives that sit in
// the hot loops (trajectory sampling, the RK4 oracle, overlaps and norms).
// Every entry has a scalar reference implementation; the SIMD variants are
// selected at runtime and are required by the test suite to agree with the
// scalar path to rounding error.
struct Backend {
    const char* name;
    // y += a * x
    void (*axpy)(cd a, const cd* x, cd* y, std::size_t n);
    // x *= a
    void (*scal)(cd a, cd* x, std::size_t n);
    // sum x_i * y_i (no conjugation)
    cd (*dotu)(const cd* x, const cd* y, std::size_t n);
    // sum conj(x_i) * y_i
    cd (*dotc)(const cd* x, const cd* y, std::size_t n);
    // sum |x_i|^2
    double (*sumsq)(const cd* x, std::size_t n);
    // y = A x with A row-major (rows x cols)
    void (*gemv)(const cd* a, const cd* x, cd* y, std::size_t rows, std::size_t cols);
};

const Backend& scalar_backend();
const Backend* avx2_backend(); // nullptr when not compiled in or CPU lacks AVX2+FMA
const Backend* neon_backend(); // nullptr off aarch64

// Active backend. Picked once at first use: QMPE_SIMD=scalar|avx2|neon|auto
// wins, otherwise the widest supported lane. set_active() switches
// explicitly and returns false for an unavailable name.
const Backend& active();
bool set_active(std::string_view name);

inline void axpy(cd a, const cd* x, cd* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scal(cd a, cd* x, std::size_t n) { active().scal(a, x, n); }
inline cd dotu(const cd* x, const cd* y, std::size_t n) { return active().dotu(x, y, n); }
inline cd dotc(const cd* x, const cd* y, std::size_t n) { return active().dotc(x, y, n); }
inline double sumsq(const cd* x, std::size_t n) { return active().sumsq(x, n); }
inline void gemv(const cd* a, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    active().gemv(a, x, y, rows, cols);
}

} // namespace qmpe::kern
