#include "qmpe/dynamics.hpp"

#include <cmath>

#include "qmpe/errors.hpp"
#include "qmpe/linalg.hpp"

namespace qmpe {

void validate_density(const CMatrix& rho, double herm_tol, double trace_tol, double pos_tol) {
    const double scale = std::max(1.0, rho.frobenius_norm());
    if (rho.hermiticity_defect() > herm_tol * scale)
        throw InvariantViolation("density: not Hermitian within tolerance");
    if (std::abs(rho.trace() - cd{1.0, 0.0}) > trace_tol)
        throw InvariantViolation("density: trace deviates from 1");
    CMatrix h = cd{0.5, 0.0} * (rho + rho.adjoint());
    std::vector<double> ev = hermitian_eigenvalues(h);
    if (ev.back() < -pos_tol)
        throw InvariantViolation("density: negative eigenvalue beyond tolerance");
}

StateTrajectory propagate_spectral(const LiouvillianSpectrum& spec, const CMatrix& rho0,
                                   const std::vector<double>& times) {
    OverlapSet ov = overlaps(spec, rho0);
    const std::size_t nmodes = spec.mode_vecs.size();
    const std::size_t d = spec.dim;
    const cd mu1 = spec.eigenvalues[0];

    StateTrajectory out;
    out.times = times;
    out.states.reserve(times.size());

    std::vector<cd> acc(nmodes);
    for (double t : times) {
        if (t < 0.0) throw Error("propagate_spectral: negative time");
        std::fill(acc.begin(), acc.end(), cd{0.0, 0.0});
        double wsum = 0.0;
        for (std::size_t j = 0; j < nmodes; ++j) {
            const cd w = ov.coefficients[j] * std::exp((spec.eigenvalues[j] - mu1) * t);
            wsum += std::abs(w);
            kern::axpy(w, spec.mode_vecs[j].data(), acc.data(), nmodes);
        }
        cd tr{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) tr += acc[i + i * d];
        if (std::abs(tr) <= 1e-13 * std::max(1.0, wsum))
            throw VanishingNorm("propagate_spectral: normalization trace underflows");
        kern::scal(cd{1.0, 0.0} / tr, acc.data(), acc.size());
        out.states.push_back(devectorize(acc.data(), d));
    }
    return out;
}

namespace {

struct OdeWorkspace {
    std::vector<cd> k1, k2, k3, k4, tmp;
};

// dv/dt = L0 v - i Tr[rho (H^dag - H)] v with Tr[rho A] = vec(A^T) . vec(rho)
void rhs(const CMatrix& l0, const std::vector<cd>& corr_row, const std::vector<cd>& v,
         std::vector<cd>& out) {
    const std::size_t n = v.size();
    kern::gemv(l0.data(), v.data(), out.data(), n, n);
    const cd corr = cd{0.0, -1.0} * kern::dotu(corr_row.data(), v.data(), n);
    kern::axpy(corr, v.data(), out.data(), n);
}

void rk4_step(const CMatrix& l0, const std::vector<cd>& corr_row, std::vector<cd>& v, double dt,
              OdeWorkspace& w) {
    const std::size_t n = v.size();
    rhs(l0, corr_row, v, w.k1);
    w.tmp = v;
    kern::axpy(cd{0.5 * dt, 0.0}, w.k1.data(), w.tmp.data(), n);
    rhs(l0, corr_row, w.tmp, w.k2);
    w.tmp = v;
    kern::axpy(cd{0.5 * dt, 0.0}, w.k2.data(), w.tmp.data(), n);
    rhs(l0, corr_row, w.tmp, w.k3);
    w.tmp = v;
    kern::axpy(cd{dt, 0.0}, w.k3.data(), w.tmp.data(), n);
    rhs(l0, corr_row, w.tmp, w.k4);
    kern::axpy(cd{dt / 6.0, 0.0}, w.k1.data(), v.data(), n);
    kern::axpy(cd{dt / 3.0, 0.0}, w.k2.data(), v.data(), n);
    kern::axpy(cd{dt / 3.0, 0.0}, w.k3.data(), v.data(), n);
    kern::axpy(cd{dt / 6.0, 0.0}, w.k4.data(), v.data(), n);
}

std::vector<cd> integrate(const Liouvillian& liouv, const CMatrix& rho0, double t_end, double dt,
                          int emit_every, StateTrajectory* out) {
    const std::size_t d = rho0.dim();
    std::vector<cd> v = vectorize(rho0);

    // vec((H^dag - H)^T) for the trace-correction dot product
    CMatrix corr_mat = (liouv.hamiltonian.adjoint() - liouv.hamiltonian).transpose();
    std::vector<cd> corr_row = vectorize(corr_mat);

    OdeWorkspace w;
    w.k1.resize(v.size());
    w.k2.resize(v.size());
    w.k3.resize(v.size());
    w.k4.resize(v.size());
    w.tmp.resize(v.size());

    const long nsteps = std::lround(std::ceil(t_end / dt - 1e-12));
    if (out) {
        out->times.push_back(0.0);
        out->states.push_back(rho0);
    }
    double t = 0.0;
    for (long step = 0; step < nsteps; ++step) {
        const double h = std::min(dt, t_end - t);
        rk4_step(liouv.matrix, corr_row, v, h, w);
        t += h;
        cd tr{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) tr += v[i + i * d];
        if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag()) ||
            std::abs(tr - cd{1.0, 0.0}) > 1e-7)
            throw InvariantViolation("propagate_ode: trace drift beyond 1e-7 (dt too large)");
        kern::scal(cd{1.0, 0.0} / tr, v.data(), v.size());
        if (out && ((step + 1) % emit_every == 0 || step + 1 == nsteps)) {
            CMatrix rho = devectorize(v.data(), d);
            validate_density(rho);
            out->times.push_back(t);
            out->states.push_back(std::move(rho));
        }
    }
    return v;
}

} // namespace

StateTrajectory propagate_ode(const Liouvillian& liouv, const CMatrix& rho0, double t_end,
                              double dt, int emit_every, bool richardson_check) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw Error("propagate_ode: dt and t_end must be positive");
    if (emit_every < 1) emit_every = 1;
    validate_density(rho0);

    StateTrajectory out;
    std::vector<cd> terminal = integrate(liouv, rho0, t_end, dt, emit_every, &out);

    if (richardson_check) {
        std::vector<cd> half = integrate(liouv, rho0, t_end, 0.5 * dt, emit_every * 2, nullptr);
        kern::axpy(cd{-1.0, 0.0}, terminal.data(), half.data(), half.size());
        const double err = std::sqrt(kern::sumsq(half.data(), half.size()));
        if (err > 1e-6)
            throw InvariantViolation("propagate_ode: half-step check exceeds 1e-6 (dt too large)");
    }
    return out;
}

CMatrix long_time_m(const LiouvillianSpectrum& spec, const OverlapSet& ov, double t) {
    if (spec.mode_vecs.size() != 4)
        throw Error("long_time_m: defined for the single-qubit four-mode spectrum");
    const cd c1 = ov.coefficients[0];
    if (std::abs(c1) < 1e-12) throw ZeroProjection("long_time_m: C1 vanishes");
    if (std::abs(ov.coefficients[1] / c1) > 1e-8)
        throw SlowModePresent("long_time_m: slow mode not suppressed (|C2/C1| > 1e-8)");

    const CMatrix& r1 = spec.right_modes[0];
    const CMatrix& r3 = spec.right_modes[2];
    const CMatrix& r4 = spec.right_modes[3];
    const cd x = std::exp(-(spec.eigenvalues[2] - spec.eigenvalues[3]) * t);
    CMatrix m = (ov.coefficients[2] / c1) * (r3 - r1);
    m += (ov.coefficients[3] / c1) * x * (r4 - r1);
    return m;
}

CMatrix long_time_state(const LiouvillianSpectrum& spec, const OverlapSet& ov, double t) {
    CMatrix m = long_time_m(spec, ov, t);
    const cd decay = std::exp(-(spec.eigenvalues[0] - spec.eigenvalues[2]) * t);
    CMatrix out = spec.right_modes[0];
    out += decay * m;
    return out;
}

} // namespace qmpe
