#pragma once

#include <vector>

#include "qmpe/linalg.hpp"
#include "qmpe/model.hpp"

namespace qmpe {

// Eigensystem of L0, devectorized and normalized. Ordering is descending in
// Re(mu), ties broken by descending Im(mu), so left of the Liouvillian
// exceptional point mu_3 carries the positive imaginary part.
//
// Normalization: every right mode with |Tr rho_j| > 1e-9 is scaled to unit
// trace (this is what makes the long-time formulas literal); near-traceless
// modes fall back to unit Frobenius norm with the largest-magnitude entry
// rotated real positive. Left modes come from the inverse of the right
// eigenvector matrix, so biorthogonality Tr(omega_i^dag rho_j) = delta_ij and
// the reconstruction sum_j C_j rho_j = rho(0) hold to solver precision.
struct LiouvillianSpectrum {
    ModelParams params;
    std::vector<cd> eigenvalues;
    std::vector<CMatrix> right_modes;
    std::vector<CMatrix> left_modes;
    CMatrix steady_state; // rho_1 at unit trace, symmetrized
    double condition_estimate = 0.0;
    bool defective = false; // eigenvector matrix condition > 1e8

    std::size_t dim = 0;               // 2^N
    std::vector<std::vector<cd>> mode_vecs; // vec(rho_j), cached for sampling
    std::vector<std::vector<cd>> left_rows; // conj(vec(omega_j)) = rows of V^-1
    std::vector<cd> steady_vec;
};

struct OverlapSet {
    std::vector<cd> coefficients; // C_j = Tr[omega_j^dag rho(0)]
};

LiouvillianSpectrum analyze(const Liouvillian& liouv);

OverlapSet overlaps(const LiouvillianSpectrum& spec, const CMatrix& rho0);

// Largest |Im mu_j| of the Liouvillian at the given parameters.
double max_imag_eigenvalue(const ModelParams& params);

inline bool left_of_lep(const LiouvillianSpectrum& spec) {
    for (cd mu : spec.eigenvalues)
        if (std::abs(mu.imag()) > 1e-8) return true;
    return false;
}

// Bisection for the a value where max_j |Im mu_j(a)| crosses 1e-8. Throws
// NoBracket when the bracket does not straddle the transition.
double locate_lep(const ModelParams& params_template, double a_min, double a_max, double tol);

} // namespace qmpe
