#include <doctest.h>

#include <cmath>
#include <random>

#include "qmpe/errors.hpp"
#include "qmpe/model.hpp"
#include "qmpe/random_states.hpp"
#include "qmpe/spectral.hpp"

using namespace qmpe;

TEST_SUITE("model") {

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((ModelParams{0.0, 0.0, 1.0, 1}.validate())); // pure decay is allowed
    CHECK_THROWS_AS((ModelParams{1.0, 1.0, 1.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelParams{1.0, 1.2, 1.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelParams{-0.1, 0.4, 1.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelParams{1.0, 0.4, 0.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((ModelParams{1.0, 0.4, 1.0, 5}.validate()), ConfigError);
}

TEST_CASE("single-qubit Hamiltonian") {
    CMatrix h = build_hamiltonian({1.2, 0.4, 1.0, 1});
    CHECK(std::abs(h(0, 0) - cd{0.0, 1.2}) < 1e-15);
    CHECK(std::abs(h(0, 1) - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(h(1, 0) - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(h(1, 1) - cd{0.0, -1.2}) < 1e-15);

    CMatrix herm = build_hamiltonian({0.0, 0.4, 1.0, 1});
    CHECK((herm - pauli_x()).frobenius_norm() == 0.0);
}

TEST_CASE("two-qubit Hamiltonian: traceless and PT-symmetric") {
    CMatrix h = build_hamiltonian({0.8, 0.1, 1.0, 2});
    CHECK(h.dim() == 4);
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(pt_commutator_norm(h) < 1e-14);
}

TEST_CASE("jump operators") {
    auto [up, down] = build_jumps(1);
    CHECK((up - sigma_plus()).frobenius_norm() == 0.0);
    CHECK((down - sigma_minus()).frobenius_norm() == 0.0);

    // decay channel projects on the excited state
    CMatrix proj = down.adjoint() * down;
    CHECK(std::abs(proj(0, 0) - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(proj(1, 1)) < 1e-15);

    auto [up2, down2] = build_jumps(2);
    int nonzero = 0;
    for (std::size_t i = 0; i < up2.size(); ++i)
        if (std::abs(up2.data()[i]) > 0.0) {
            ++nonzero;
            CHECK(up2.data()[i] == cd{1.0, 0.0});
        }
    CHECK(nonzero == 4);
    CHECK((down2 - up2.adjoint()).frobenius_norm() == 0.0);
}

TEST_CASE("Liouvillian matches the explicit 4x4 form") {
    Liouvillian l = build_liouvillian({0.5, 0.6, 1.0, 1});
    CHECK(std::abs(l.matrix(0, 0)) < 1e-15);                   // 2a - gamma2 = 0
    CHECK(std::abs(l.matrix(3, 3) - cd{-1.6, 0.0}) < 1e-15);   // -2a - gamma1
    CHECK(std::abs(l.matrix(1, 1) - cd{-0.8, 0.0}) < 1e-15);
    CHECK(std::abs(l.matrix(2, 2) - cd{-0.8, 0.0}) < 1e-15);
    CHECK(std::abs(l.matrix(0, 3) - cd{0.6, 0.0}) < 1e-15);    // gamma1
    CHECK(std::abs(l.matrix(3, 0) - cd{1.0, 0.0}) < 1e-15);    // gamma2
    CHECK(std::abs(l.matrix(0, 1) - cd{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(l.matrix(0, 2) - cd{0.0, 1.0}) < 1e-15);
}

TEST_CASE("closed unitary limit: generator is anti-Hermitian as gamma -> 0") {
    // The type invariant keeps gamma2 > 0, so probe the limit from inside
    // the domain.
    Liouvillian l = build_liouvillian({0.0, 0.0, 1e-12, 1});
    CMatrix id = CMatrix::identity(2);
    CMatrix want = cd{0.0, -1.0} * (kron(id, pauli_x()) - kron(pauli_x().transpose(), id));
    CHECK((l.matrix - want).frobenius_norm() < 1e-11);
    CHECK((l.matrix + l.matrix.adjoint()).frobenius_norm() < 1e-11);
}

TEST_CASE("Hermiticity preservation is exact, S conj(L0) S = L0") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        ModelParams p = random_params(rng);
        Liouvillian l = build_liouvillian(p);
        CMatrix s = swap_matrix(2);
        CHECK((s * l.matrix.conjugate() * s - l.matrix).frobenius_norm() == 0.0);
    }
    for (int n : {2, 3}) {
        ModelParams p{0.7, 0.3, 1.0, n};
        Liouvillian l = build_liouvillian(p);
        CMatrix s = swap_matrix(l.hamiltonian.dim());
        CHECK((s * l.matrix.conjugate() * s - l.matrix).frobenius_norm() == 0.0);
    }
}

TEST_CASE("column-major vectorization: vec(A X B) = (B^T kron A) vec(X)") {
    std::mt19937 rng(34);
    for (std::size_t d : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        CMatrix a = random_complex_matrix(rng, d);
        CMatrix x = random_complex_matrix(rng, d);
        CMatrix b = random_complex_matrix(rng, d);
        std::vector<cd> lhs = vectorize(a * x * b);
        CMatrix op = kron(b.transpose(), a);
        std::vector<cd> vx = vectorize(x);
        std::vector<cd> rhs(vx.size());
        kern::gemv(op.data(), vx.data(), rhs.data(), vx.size(), vx.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
    }
}

TEST_CASE("swap matrix realizes vec(X^dag) = S conj(vec(X))") {
    std::mt19937 rng(32);
    for (std::size_t d : {std::size_t{2}, std::size_t{4}, std::size_t{8}}) {
        CMatrix x = random_complex_matrix(rng, d);
        CMatrix s = swap_matrix(d);
        std::vector<cd> lhs = vectorize(x.adjoint());
        std::vector<cd> vx = vectorize(x);
        for (auto& v : vx) v = std::conj(v);
        std::vector<cd> rhs(vx.size());
        kern::gemv(s.data(), vx.data(), rhs.data(), vx.size(), vx.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) == 0.0);
    }
}

TEST_CASE("full generator: Hermitian, traceless, zero correction at a=0") {
    std::mt19937 rng(33);
    Liouvillian herm = build_liouvillian({0.0, 0.5, 1.0, 1});
    CMatrix rho = random_density(rng, 2);
    // at a = 0 the correction vanishes identically: compare against the
    // linear part evaluated through the vectorized matrix
    std::vector<cd> v = vectorize(rho);
    std::vector<cd> lv(v.size());
    kern::gemv(herm.matrix.data(), v.data(), lv.data(), v.size(), v.size());
    CMatrix linear = devectorize(lv.data(), 2);
    CHECK((apply_full_generator(herm, rho) - linear).frobenius_norm() < 1e-15);

    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p = random_params(rng);
        Liouvillian l = build_liouvillian(p);
        CMatrix r = random_density(rng, 2);
        CMatrix d = apply_full_generator(l, r);
        CHECK(d.hermiticity_defect() < 1e-12);
        CHECK(std::abs(d.trace()) < 1e-12);
    }

    // maximally mixed state keeps an exactly zero trace derivative
    Liouvillian l1 = build_liouvillian({1.0, 0.3, 1.0, 1});
    CMatrix mixed = cd{0.5, 0.0} * CMatrix::identity(2);
    CHECK(std::abs(apply_full_generator(l1, mixed).trace()) < 1e-14);
}

TEST_CASE("steady state is a fixed point of the full generator") {
    Liouvillian l = build_liouvillian({1.2, 0.6, 1.0, 1});
    LiouvillianSpectrum spec = analyze(l);
    CHECK(apply_full_generator(l, spec.steady_state).frobenius_norm() < 1e-8);
}

TEST_CASE("bloch encoding covers the studied states") {
    CMatrix excited = bloch_state(0.0, 0.0, 1.0);
    CHECK(std::abs(excited(0, 0) - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(excited(1, 1)) < 1e-15);

    CMatrix tilted = bloch_state(0.0, -0.4, -0.6);
    CHECK(std::abs(tilted(0, 0) - cd{0.2, 0.0}) < 1e-15);
    CHECK(std::abs(tilted(0, 1) - cd{0.0, 0.2}) < 1e-15);
    CHECK(std::abs(tilted(1, 0) - cd{0.0, -0.2}) < 1e-15);
    CHECK(std::abs(tilted(1, 1) - cd{0.8, 0.0}) < 1e-15);

    CHECK_THROWS_AS((void)bloch_state(1.0, 0.3, 0.0), ConfigError);

    CMatrix two = tensor_power(excited, 2);
    CHECK(two.dim() == 4);
    CHECK(std::abs(two(0, 0) - cd{1.0, 0.0}) < 1e-15);
}

} // TEST_SUITE
