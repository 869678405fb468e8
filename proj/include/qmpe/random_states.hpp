#pragma once

#include <random>

#include "qmpe/model.hpp"

namespace qmpe {

// Deterministic draws shared by the verification suite and the tests.

inline CMatrix random_complex_matrix(std::mt19937& rng, std::size_t dim, double lo = -2.0,
                                     double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = cd{u(rng), u(rng)};
    return m;
}

inline CMatrix random_hermitian(std::mt19937& rng, std::size_t dim) {
    CMatrix m = random_complex_matrix(rng, dim);
    return cd{0.5, 0.0} * (m + m.adjoint());
}

// Ginibre construction: G G^dag normalized to unit trace (full rank a.s.).
inline CMatrix random_density(std::mt19937& rng, std::size_t dim) {
    CMatrix g = random_complex_matrix(rng, dim, -1.0, 1.0);
    CMatrix rho = g * g.adjoint();
    return (cd{1.0, 0.0} / rho.trace()) * rho;
}

inline CMatrix random_diagonal_density(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double p = u(rng);
    CMatrix rho(2);
    rho(0, 0) = cd{p, 0.0};
    rho(1, 1) = cd{1.0 - p, 0.0};
    return rho;
}

// Diagonal plus purely imaginary off-diagonals, kept positive semidefinite.
inline CMatrix random_imag_offdiag_density(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double p = u(rng);
    const double bmax = std::sqrt(p * (1.0 - p));
    std::uniform_real_distribution<double> ub(-0.95 * bmax, 0.95 * bmax);
    const double b = ub(rng);
    CMatrix rho(2);
    rho(0, 0) = cd{p, 0.0};
    rho(1, 1) = cd{1.0 - p, 0.0};
    rho(0, 1) = cd{0.0, b};
    rho(1, 0) = cd{0.0, -b};
    return rho;
}

inline ModelParams random_params(std::mt19937& rng, double a_lo = 0.1, double a_hi = 2.0) {
    std::uniform_real_distribution<double> ua(a_lo, a_hi);
    std::uniform_real_distribution<double> ug2(0.3, 1.5);
    std::uniform_real_distribution<double> uratio(0.02, 0.95);
    ModelParams p;
    p.a = ua(rng);
    p.gamma2 = ug2(rng);
    p.gamma1 = p.gamma2 * uratio(rng);
    p.n_qubits = 1;
    return p;
}

} // namespace qmpe
