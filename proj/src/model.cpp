#include "qmpe/model.hpp"

#include <cmath>

#include "qmpe/errors.hpp"

namespace qmpe {

namespace {
const cd I{0.0, 1.0};

// op on qubit j, identity elsewhere
CMatrix padded(const CMatrix& op, int j, int n) {
    CMatrix out = CMatrix::identity(1);
    for (int k = 0; k < n; ++k) out = kron(out, k == j ? op : CMatrix::identity(2));
    return out;
}
} // namespace

CMatrix pauli_x() { return CMatrix::from_rows({{0, 1}, {1, 0}}); }
CMatrix pauli_y() { return CMatrix::from_rows({{0, -I}, {I, 0}}); }
CMatrix pauli_z() { return CMatrix::from_rows({{1, 0}, {0, -1}}); }
CMatrix sigma_plus() { return CMatrix::from_rows({{0, 1}, {0, 0}}); }
CMatrix sigma_minus() { return CMatrix::from_rows({{0, 0}, {1, 0}}); }

void ModelParams::validate() const {
    if (!(a >= 0.0)) throw ConfigError("params: a must be >= 0");
    if (!(gamma2 > 0.0)) throw ConfigError("params: gamma2 must be > 0");
    if (!(gamma1 >= 0.0)) throw ConfigError("params: gamma1 must be >= 0");
    if (!(gamma1 / gamma2 < 1.0))
        throw ConfigError("params: detailed balance requires gamma1/gamma2 < 1");
    if (n_qubits < 1 || n_qubits > 4)
        throw ConfigError("params: n_qubits must be in [1, 4]");
}

CMatrix build_hamiltonian(const ModelParams& params) {
    params.validate();
    const int n = params.n_qubits;
    CMatrix h(std::size_t{1} << n);
    for (int j = 0; j < n; ++j) {
        h += padded(pauli_x(), j, n);
        h += I * params.a * padded(pauli_z(), j, n);
    }
    return h;
}

std::pair<CMatrix, CMatrix> build_jumps(int n_qubits) {
    if (n_qubits < 1) throw ConfigError("build_jumps: n_qubits must be >= 1");
    CMatrix up(std::size_t{1} << n_qubits), down(std::size_t{1} << n_qubits);
    for (int j = 0; j < n_qubits; ++j) {
        up += padded(sigma_plus(), j, n_qubits);
        down += padded(sigma_minus(), j, n_qubits);
    }
    return {up, down};
}

Liouvillian build_liouvillian(const ModelParams& params) {
    params.validate();
    CMatrix h = build_hamiltonian(params);
    auto [l1, l2] = build_jumps(params.n_qubits);
    const std::size_t d = h.dim();
    const CMatrix id = CMatrix::identity(d);

    CMatrix m = cd{0.0, -1.0} * (kron(id, h) - kron(h.conjugate(), id));
    const double rates[2] = {params.gamma1, params.gamma2};
    const CMatrix* ops[2] = {&l1, &l2};
    for (int k = 0; k < 2; ++k) {
        const CMatrix& l = *ops[k];
        CMatrix ldl = l.adjoint() * l;
        CMatrix term = kron(l.conjugate(), l);
        term -= cd{0.5, 0.0} * kron(id, ldl);
        term -= cd{0.5, 0.0} * kron(ldl.transpose(), id);
        m += cd{rates[k], 0.0} * term;
    }
    return Liouvillian{params, std::move(m), std::move(h), std::move(l1), std::move(l2)};
}

CMatrix apply_full_generator(const Liouvillian& liouv, const CMatrix& rho) {
    const CMatrix& h = liouv.hamiltonian;
    CMatrix hdag = h.adjoint();

    CMatrix out = cd{0.0, -1.0} * (h * rho - rho * hdag);
    const double rates[2] = {liouv.params.gamma1, liouv.params.gamma2};
    const CMatrix* ops[2] = {&liouv.jump_gain, &liouv.jump_loss};
    for (int k = 0; k < 2; ++k) {
        const CMatrix& l = *ops[k];
        CMatrix ldl = l.adjoint() * l;
        CMatrix term = l * rho * l.adjoint();
        term -= cd{0.5, 0.0} * (ldl * rho + rho * ldl);
        out += cd{rates[k], 0.0} * term;
    }
    // trace-correcting term
    cd gap_trace = (rho * (hdag - h)).trace();
    out += (cd{0.0, -1.0} * gap_trace) * rho;
    return out;
}

CMatrix swap_matrix(std::size_t dim) {
    CMatrix s(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) s(i + j * dim, j + i * dim) = cd{1.0, 0.0};
    return s;
}

double pt_commutator_norm(const CMatrix& h) {
    int n = 0;
    for (std::size_t d = h.dim(); d > 1; d >>= 1) ++n;
    CMatrix p = CMatrix::identity(1);
    for (int j = 0; j < n; ++j) p = kron(p, pauli_x());
    return (h * p - p * h.conjugate()).frobenius_norm();
}

CMatrix bloch_state(double rx, double ry, double rz) {
    const double r2 = rx * rx + ry * ry + rz * rz;
    if (r2 > 1.0 + 1e-12) throw ConfigError("bloch_state: |r| must be <= 1");
    CMatrix rho(2);
    rho(0, 0) = cd{0.5 * (1.0 + rz), 0.0};
    rho(1, 1) = cd{0.5 * (1.0 - rz), 0.0};
    rho(0, 1) = cd{0.5 * rx, -0.5 * ry};
    rho(1, 0) = cd{0.5 * rx, 0.5 * ry};
    return rho;
}

CMatrix tensor_power(const CMatrix& m, int n) {
    if (n < 1) throw ConfigError("tensor_power: n must be >= 1");
    CMatrix out = m;
    for (int k = 1; k < n; ++k) out = kron(out, m);
    return out;
}

} // namespace qmpe
