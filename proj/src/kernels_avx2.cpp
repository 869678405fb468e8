#include "qmpe/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qmpe::kern {

namespace {

// Layout: two interleaved complex doubles per __m256d, [re0 im0 re1 im1].
// Complex products use the fmaddsub pattern: with are = [ar ar ...],
// aim = [ai ai ...] and bsw = b with re/im swapped, even lanes give
// ar*br - ai*bi and odd lanes ar*bi + ai*br.

inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }
inline __m256d dup_re(__m256d v) { return _mm256_movedup_pd(v); }
inline __m256d dup_im(__m256d v) { return _mm256_permute_pd(v, 0xF); }

inline __m256d cmul(__m256d a, __m256d b) {
    return _mm256_fmaddsub_pd(dup_re(a), b, _mm256_mul_pd(dup_im(a), swap_ri(b)));
}

// conj(a) * b
inline __m256d cmulc(__m256d a, __m256d b) {
    return _mm256_fmsubadd_pd(dup_re(a), b, _mm256_mul_pd(dup_im(a), swap_ri(b)));
}

inline cd reduce_pairs(__m256d acc) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return {lanes[0] + lanes[2], lanes[1] + lanes[3]};
}

void axpy_avx2(cd a, const cd* x, cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        __m256d prod = _mm256_fmaddsub_pd(are, xv, _mm256_mul_pd(aim, swap_ri(xv)));
        _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(yv, prod));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(cd a, cd* x, std::size_t n) {
    double* xs = reinterpret_cast<double*>(x);
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d prod = _mm256_fmaddsub_pd(are, xv, _mm256_mul_pd(aim, swap_ri(xv)));
        _mm256_storeu_pd(xs + 2 * i, prod);
    }
    for (; i < n; ++i) x[i] *= a;
}

cd dotu_avx2(const cd* x, const cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        acc = _mm256_add_pd(acc, cmul(xv, yv));
    }
    cd out = reduce_pairs(acc);
    for (; i < n; ++i) out += x[i] * y[i];
    return out;
}

cd dotc_avx2(const cd* x, const cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        acc = _mm256_add_pd(acc, cmulc(xv, yv));
    }
    cd out = reduce_pairs(acc);
    for (; i < n; ++i) out += std::conj(x[i]) * y[i];
    return out;
}

double sumsq_avx2(const cd* x, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double out = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) out += std::norm(x[i]);
    return out;
}

void gemv_avx2(const cd* a, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dotu_avx2(a + r * cols, x, cols);
}

} // namespace

const Backend* avx2_backend() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Backend b{
        "avx2", axpy_avx2, scal_avx2, dotu_avx2, dotc_avx2, sumsq_avx2, gemv_avx2,
    };
    return &b;
}

} // namespace qmpe::kern

#else // no AVX2 in this build

namespace qmpe::kern {
const Backend* avx2_backend() { return nullptr; }
} // namespace qmpe::kern

#endif
