#include "qmpe/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace qmpe::kern {

namespace {

// One complex double per float64x2_t, [re im].

inline float64x2_t swap_ri(float64x2_t v) { return vextq_f64(v, v, 1); }

// a * b for one complex pair
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
    const float64x2_t sign = {-1.0, 1.0};
    float64x2_t t = vmulq_f64(vmulq_f64(vdupq_laneq_f64(a, 1), swap_ri(b)), sign);
    return vfmaq_f64(t, vdupq_laneq_f64(a, 0), b);
}

// conj(a) * b
inline float64x2_t cmulc(float64x2_t a, float64x2_t b) {
    const float64x2_t sign = {1.0, -1.0};
    float64x2_t t = vmulq_f64(vmulq_f64(vdupq_laneq_f64(a, 1), swap_ri(b)), sign);
    return vfmaq_f64(t, vdupq_laneq_f64(a, 0), b);
}

void axpy_neon(cd a, const cd* x, cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    const float64x2_t av = {a.real(), a.imag()};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xs + 2 * i);
        float64x2_t yv = vld1q_f64(ys + 2 * i);
        vst1q_f64(ys + 2 * i, vaddq_f64(yv, cmul(av, xv)));
    }
}

void scal_neon(cd a, cd* x, std::size_t n) {
    double* xs = reinterpret_cast<double*>(x);
    const float64x2_t av = {a.real(), a.imag()};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xs + 2 * i);
        vst1q_f64(xs + 2 * i, cmul(av, xv));
    }
}

cd dotu_neon(const cd* x, const cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i)
        acc = vaddq_f64(acc, cmul(vld1q_f64(xs + 2 * i), vld1q_f64(ys + 2 * i)));
    return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

cd dotc_neon(const cd* x, const cd* y, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i)
        acc = vaddq_f64(acc, cmulc(vld1q_f64(xs + 2 * i), vld1q_f64(ys + 2 * i)));
    return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

double sumsq_neon(const cd* x, std::size_t n) {
    const double* xs = reinterpret_cast<const double*>(x);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t xv = vld1q_f64(xs + 2 * i);
        acc = vfmaq_f64(acc, xv, xv);
    }
    return vaddvq_f64(acc);
}

void gemv_neon(const cd* a, const cd* x, cd* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dotu_neon(a + r * cols, x, cols);
}

} // namespace

const Backend* neon_backend() {
    static const Backend b{
        "neon", axpy_neon, scal_neon, dotu_neon, dotc_neon, sumsq_neon, gemv_neon,
    };
    return &b;
}

} // namespace qmpe::kern

#else

namespace qmpe::kern {
const Backend* neon_backend() { return nullptr; }
} // namespace qmpe::kern

#endif
