#pragma once

#include <utility>

#include "qmpe/cmatrix.hpp"

namespace qmpe {

// Basis convention: |1> = excited = (1,0)^T, sigma_z|1> = +|1>,
// sigma_plus = |1><0|. The gain channel (rate gamma1) raises, the decay
// channel (rate gamma2) lowers.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix sigma_plus();
CMatrix sigma_minus();

struct ModelParams {
    double a = 0.0;       // non-Hermiticity strength
    double gamma1 = 0.0;  // gain rate
    double gamma2 = 1.0;  // decay rate
    int n_qubits = 1;

    // gamma1/gamma2 < 1 (detailed-balance constraint kept away from the
    // Hermitian limit as well), a >= 0, 1 <= n_qubits <= 4.
    void validate() const;
};

struct Liouvillian {
    ModelParams params;
    CMatrix matrix;      // 4^N x 4^N, column-major vectorization convention
    CMatrix hamiltonian; // 2^N x 2^N
    CMatrix jump_gain;   // L1 = sum_j sigma_plus^(j)
    CMatrix jump_loss;   // L2 = sum_j sigma_minus^(j)
};

// H = sum_j (sigma_x^(j) + i a sigma_z^(j)); commutes with PT for P the
// sigma_x tensor power and T complex conjugation.
CMatrix build_hamiltonian(const ModelParams& params);

std::pair<CMatrix, CMatrix> build_jumps(int n_qubits);

// Matrix form of the linear generator L0 (no trace correction):
//   -i(I kron H - conj(H) kron I)
//   + sum_k gamma_k [conj(L_k) kron L_k - 1/2 I kron L_k^dag L_k
//                    - 1/2 (L_k^dag L_k)^T kron I].
Liouvillian build_liouvillian(const ModelParams& params);

// d(rho)/dt of the full nonlinear equation, including the probability-
// conserving correction -i Tr[rho (H^dag - H)] rho.
CMatrix apply_full_generator(const Liouvillian& liouv, const CMatrix& rho);

// Permutation S with vec(X^dag) = S conj(vec(X)); the Hermiticity-preservation
// identity reads S conj(L0) S = L0.
CMatrix swap_matrix(std::size_t dim);

// ||H P - P conj(H)||_F, the PT-commutator defect for P = sigma_x^{kron N}.
double pt_commutator_norm(const CMatrix& h);

// Single-qubit state 1/2 (I + r . sigma); |r| <= 1 enforced.
CMatrix bloch_state(double rx, double ry, double rz);
CMatrix tensor_power(const CMatrix& m, int n);

} // namespace qmpe
