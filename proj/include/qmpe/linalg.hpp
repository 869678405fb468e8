#pragma once

#include <vector>

#include "qmpe/cmatrix.hpp"

namespace qmpe {

// Full eigensystem of a general complex matrix. Right vectors satisfy
// A v_j = lambda_j v_j with residual <= 1e-9 * ||A||_F. Left vectors are the
// conjugated rows of V^-1, so u_i^dagger v_j = delta_ij holds exactly up to
// the inversion error and A^dagger u_j = conj(lambda_j) u_j.
struct EigenSystem {
    std::vector<cd> values;
    std::vector<std::vector<cd>> right_vectors;
    std::vector<std::vector<cd>> left_vectors;
    double condition_estimate = 0.0; // spectral condition number of the eigenvector matrix
    bool near_defective = false;     // condition_estimate > 1e8 (e.g. at an exceptional point)
};

EigenSystem eigendecompose(const CMatrix& m);

// Real eigenvalues of a Hermitian matrix, descending. Throws NotHermitian
// when ||m - m^dagger||_F > 1e-10 * max(1, ||m||_F).
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

// log(m) for Hermitian m, with eigenvalues clipped below at `floor` before
// taking logarithms. Result is Hermitian by construction.
CMatrix matrix_log_hermitian(const CMatrix& m, double floor = 1e-12);

// Hermitian inverse through the same eigenbasis route (no clipping; throws
// SingularSteadyState below min_eig).
CMatrix hermitian_inverse(const CMatrix& m, double min_eig = 1e-10);

// General dense inverse (partial-pivot LU).
CMatrix invert_dense(const CMatrix& m);

} // namespace qmpe
