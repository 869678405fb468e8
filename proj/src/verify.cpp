#include "qmpe/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "qmpe/boundary.hpp"
#include "qmpe/errors.hpp"
#include "qmpe/kernels.hpp"
#include "qmpe/linalg.hpp"
#include "qmpe/mpemba.hpp"
#include "qmpe/random_states.hpp"

namespace qmpe {

namespace {

struct Harness {
    std::vector<CheckResult> results;
    std::ostream* log = nullptr;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body(); // empty string means pass with no commentary
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        if (log) (*log) << (r.pass ? "PASS " : "FAIL ") << name
                        << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
        results.push_back(std::move(r));
    }
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

double vec_norm(const std::vector<cd>& v) {
    return std::sqrt(kern::sumsq(v.data(), v.size()));
}

CMatrix excited_state() { return bloch_state(0.0, 0.0, 1.0); }
CMatrix mixed_state() { return bloch_state(0.0, 0.0, 0.0); }

// ---- per-module suites ----

void kernels_suite(Harness& h, unsigned seed) {
    h.run("kernels.backend_equivalence", [&] {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        const kern::Backend& ref = kern::scalar_backend();
        const kern::Backend* lanes[2] = {kern::avx2_backend(), kern::neon_backend()};
        double worst = 0.0;
        for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 255u, 1024u}) {
            std::vector<cd> x(n), y(n), y2(n);
            for (auto& v : x) v = cd{u(rng), u(rng)};
            for (auto& v : y) v = cd{u(rng), u(rng)};
            const cd alpha{u(rng), u(rng)};
            for (const kern::Backend* b : lanes) {
                if (!b) continue;
                y2 = y;
                std::vector<cd> yr = y;
                ref.axpy(alpha, x.data(), yr.data(), n);
                b->axpy(alpha, x.data(), y2.data(), n);
                for (std::size_t i = 0; i < n; ++i)
                    worst = std::max(worst, std::abs(y2[i] - yr[i]));
                worst = std::max(worst, std::abs(b->dotu(x.data(), y.data(), n) -
                                                 ref.dotu(x.data(), y.data(), n)) /
                                            std::max(1.0, std::abs(ref.dotu(x.data(), y.data(), n))));
                worst = std::max(worst, std::abs(b->dotc(x.data(), y.data(), n) -
                                                 ref.dotc(x.data(), y.data(), n)) /
                                            std::max(1.0, std::abs(ref.dotc(x.data(), y.data(), n))));
                worst = std::max(worst, std::abs(b->sumsq(x.data(), n) - ref.sumsq(x.data(), n)) /
                                            std::max(1.0, ref.sumsq(x.data(), n)));
            }
        }
        expect(worst < 1e-12, "backend mismatch " + fmt(worst));
        return "active=" + std::string(kern::active().name) + " worst=" + fmt(worst);
    });
}

void linalg_suite(Harness& h, unsigned seed) {
    h.run("linalg.eigen_residual_1000_random_4x4", [&] {
        std::mt19937 rng(seed + 1);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            CMatrix m = random_complex_matrix(rng, 4);
            EigenSystem es = eigendecompose(m);
            const double bound = 1e-9 * m.frobenius_norm();
            for (std::size_t j = 0; j < 4; ++j) {
                std::vector<cd> r(4, cd{0.0, 0.0});
                kern::gemv(m.data(), es.right_vectors[j].data(), r.data(), 4, 4);
                kern::axpy(-es.values[j], es.right_vectors[j].data(), r.data(), 4);
                const double res = vec_norm(r) / std::max(vec_norm(es.right_vectors[j]), 1e-300);
                worst = std::max(worst, res / bound);
            }
        }
        expect(worst < 1.0, "residual/bound " + fmt(worst));
        return "worst residual fraction " + fmt(worst);
    });
    h.run("linalg.hermitian_eigenvalue_trace_sum", [&] {
        std::mt19937 rng(seed + 2);
        for (int trial = 0; trial < 50; ++trial) {
            CMatrix m = random_hermitian(rng, 4);
            double sum = 0.0;
            for (double ev : hermitian_eigenvalues(m)) sum += ev;
            expect(std::abs(sum - m.trace().real()) < 1e-10, "trace sum deviates");
        }
        return "";
    });
    h.run("linalg.kron_associative_integer", [&] {
        std::mt19937 rng(seed + 3);
        std::uniform_int_distribution<int> u(-3, 3);
        for (int trial = 0; trial < 10; ++trial) {
            CMatrix a(2), b(2), c(2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    a(i, j) = cd(u(rng), u(rng));
                    b(i, j) = cd(u(rng), u(rng));
                    c(i, j) = cd(u(rng), u(rng));
                }
            CMatrix lhs = kron(kron(a, b), c);
            CMatrix rhs = kron(a, kron(b, c));
            for (std::size_t i = 0; i < lhs.size(); ++i)
                expect(lhs.data()[i] == rhs.data()[i], "kron associativity broken");
        }
        return "";
    });
}

void model_suite(Harness& h, unsigned seed) {
    h.run("model.explicit_generator_match_100_random", [&] {
        std::mt19937 rng(seed + 4);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            ModelParams p = random_params(rng);
            Liouvillian l = build_liouvillian(p);
            const double g = 0.5 * (p.gamma1 + p.gamma2);
            const cd i{0.0, 1.0};
            CMatrix ref = CMatrix::from_rows({{2 * p.a - p.gamma2, -i, i, p.gamma1},
                                              {-i, -g, 0, i},
                                              {i, 0, -g, -i},
                                              {p.gamma2, i, -i, -2 * p.a - p.gamma1}});
            worst = std::max(worst, (l.matrix - ref).frobenius_norm());
        }
        expect(worst < 1e-14, "entry mismatch " + fmt(worst));
        return "worst " + fmt(worst);
    });
    h.run("model.hermiticity_preservation_n123", [&] {
        std::mt19937 rng(seed + 5);
        for (int n = 1; n <= 3; ++n) {
            ModelParams p = random_params(rng);
            p.n_qubits = n;
            Liouvillian l = build_liouvillian(p);
            CMatrix s = swap_matrix(l.hamiltonian.dim());
            CMatrix lhs = s * l.matrix.conjugate() * s;
            expect((lhs - l.matrix).frobenius_norm() == 0.0,
                   "S conj(L0) S != L0 exactly at N=" + std::to_string(n));
        }
        return "";
    });
    h.run("model.generator_hermitian_traceless", [&] {
        std::mt19937 rng(seed + 6);
        for (int trial = 0; trial < 25; ++trial) {
            ModelParams p = random_params(rng);
            Liouvillian l = build_liouvillian(p);
            CMatrix rho = random_density(rng, 2);
            CMatrix d = apply_full_generator(l, rho);
            expect(d.hermiticity_defect() < 1e-12, "generator output not Hermitian");
            expect(std::abs(d.trace()) < 1e-12, "generator output not traceless");
        }
        return "";
    });
    h.run("model.pt_commutator", [&] {
        std::mt19937 rng(seed + 7);
        for (int n = 1; n <= 3; ++n) {
            ModelParams p = random_params(rng);
            p.n_qubits = n;
            CMatrix hN = build_hamiltonian(p);
            expect(pt_commutator_norm(hN) < 1e-13, "PT commutator too large");
        }
        return "";
    });
}

void spectral_suite(Harness& h, unsigned seed) {
    h.run("spectral.biorthogonality", [&] {
        std::mt19937 rng(seed + 8);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            LiouvillianSpectrum spec = analyze(build_liouvillian(random_params(rng)));
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) {
                    const cd inner = hs_inner(spec.left_modes[i], spec.right_modes[j]);
                    worst = std::max(worst, std::abs(inner - (i == j ? cd{1, 0} : cd{0, 0})));
                }
        }
        expect(worst < 1e-10, "biorthogonality defect " + fmt(worst));
        return "worst " + fmt(worst);
    });
    h.run("spectral.reconstruction_100_random_states", [&] {
        std::mt19937 rng(seed + 9);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            LiouvillianSpectrum spec = analyze(build_liouvillian(random_params(rng)));
            CMatrix rho0 = random_density(rng, 2);
            OverlapSet ov = overlaps(spec, rho0);
            CMatrix rec(2);
            for (std::size_t j = 0; j < 4; ++j) rec += ov.coefficients[j] * spec.right_modes[j];
            worst = std::max(worst, (rec - rho0).frobenius_norm());
        }
        expect(worst < 1e-9, "reconstruction error " + fmt(worst));
        return "worst " + fmt(worst);
    });
    h.run("spectral.eigenpair_conjugation_closure", [&] {
        std::mt19937 rng(seed + 10);
        for (int trial = 0; trial < 20; ++trial) {
            Liouvillian l = build_liouvillian(random_params(rng));
            LiouvillianSpectrum spec = analyze(l);
            const double bound = 1e-8 * l.matrix.frobenius_norm();
            for (std::size_t j = 0; j < 4; ++j) {
                CMatrix conj_mode = spec.right_modes[j].adjoint();
                std::vector<cd> v = vectorize(conj_mode);
                std::vector<cd> r(v.size(), cd{0.0, 0.0});
                kern::gemv(l.matrix.data(), v.data(), r.data(), v.size(), v.size());
                kern::axpy(-std::conj(spec.eigenvalues[j]), v.data(), r.data(), v.size());
                expect(vec_norm(r) <= bound * std::max(1.0, vec_norm(v)),
                       "(mu*, rho^dag) not an eigenpair");
            }
        }
        return "";
    });
    h.run("spectral.mu2_and_rho2_structure", [&] {
        double worst_mu = 0.0, worst_struct = 0.0;
        for (double a : {0.1, 0.35, 0.7, 1.1, 1.6, 2.0})
            for (double g1 : {0.05, 0.3, 0.6, 0.9}) {
                ModelParams p{a, g1, 1.0, 1};
                LiouvillianSpectrum spec = analyze(build_liouvillian(p));
                worst_mu = std::max(worst_mu,
                                    std::abs(spec.eigenvalues[1] - cd{-0.5 * (g1 + 1.0), 0.0}));
                const CMatrix& r2 = spec.right_modes[1];
                worst_struct = std::max({worst_struct, std::abs(r2(0, 0)), std::abs(r2(1, 1)),
                                         std::abs(r2(0, 1) - r2(1, 0))});
            }
        expect(worst_mu < 1e-10, "mu2 closed form off by " + fmt(worst_mu));
        expect(worst_struct < 1e-9, "rho2 structure off by " + fmt(worst_struct));
        return "mu2 " + fmt(worst_mu) + ", rho2 " + fmt(worst_struct);
    });
    h.run("spectral.normalization_convention_independence", [&] {
        std::mt19937 rng(seed + 11);
        ModelParams p{1.0, 0.4, 1.0, 1};
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CMatrix rho0 = random_density(rng, 2);
        OverlapSet ov = overlaps(spec, rho0);
        const cd c{0.7, -1.3};
        for (std::size_t j = 1; j < 4; ++j) {
            // rescale right mode by c and its left partner by 1/conj(c):
            // C_j picks up 1/c, so C_j * rho_j must be unchanged.
            CMatrix scaled_mode = c * spec.right_modes[j];
            CMatrix scaled_left = (cd{1.0, 0.0} / std::conj(c)) * spec.left_modes[j];
            const cd cj = hs_inner(scaled_left, rho0);
            CMatrix prod_before = ov.coefficients[j] * spec.right_modes[j];
            CMatrix prod_after = cj * scaled_mode;
            expect((prod_before - prod_after).frobenius_norm() < 1e-12,
                   "C_j rho_j changed under rescaling");
        }
        return "";
    });
}

void dynamics_suite(Harness& h, unsigned seed) {
    h.run("dynamics.oracle_equivalence_20_draws", [&] {
        std::mt19937 rng(seed + 12);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            ModelParams p = random_params(rng, 0.05, 2.0);
            Liouvillian l = build_liouvillian(p);
            LiouvillianSpectrum spec = analyze(l);
            CMatrix rho0 = random_density(rng, 2);
            StateTrajectory ode = propagate_ode(l, rho0, 10.0, 1e-3, 200);
            StateTrajectory sp = propagate_spectral(spec, rho0, ode.times);
            for (std::size_t k = 0; k < ode.times.size(); ++k)
                worst = std::max(worst, trace_distance(ode.states[k], sp.states[k]));
        }
        expect(worst < 1e-6, "oracle disagreement " + fmt(worst));
        return "max trace distance " + fmt(worst);
    });
    h.run("dynamics.positivity", [&] {
        std::mt19937 rng(seed + 13);
        for (int trial = 0; trial < 5; ++trial) {
            ModelParams p = random_params(rng);
            LiouvillianSpectrum spec = analyze(build_liouvillian(p));
            CMatrix rho0 = random_density(rng, 2);
            std::vector<double> ts;
            for (int k = 0; k <= 60; ++k) ts.push_back(0.2 * k);
            StateTrajectory tr = propagate_spectral(spec, rho0, ts);
            for (const CMatrix& st : tr.states) {
                CMatrix hpart = cd{0.5, 0.0} * (st + st.adjoint());
                expect(hermitian_eigenvalues(hpart).back() >= -1e-9, "negative eigenvalue");
            }
        }
        return "";
    });
    h.run("dynamics.long_time_error_decay_slope", [&] {
        ModelParams p{1.6, 0.4, 1.0, 1};
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CMatrix rho0 = excited_state();
        OverlapSet ov = overlaps(spec, rho0);
        const double rate = 2.0 * (spec.eigenvalues[0] - spec.eigenvalues[2]).real();
        std::vector<double> ts, errs;
        for (double t = 2.0; t <= 4.0; t += 0.25) {
            StateTrajectory full = propagate_spectral(spec, rho0, {t});
            CMatrix approx = long_time_state(spec, ov, t);
            ts.push_back(t);
            errs.push_back((full.states[0] - approx).frobenius_norm());
        }
        // least-squares slope of log(err)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            sx += ts[k];
            sy += std::log(errs[k]);
            sxx += ts[k] * ts[k];
            sxy += ts[k] * std::log(errs[k]);
        }
        const double n = static_cast<double>(ts.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        expect(slope <= -0.9 * rate, "decay slope " + fmt(slope) + " vs -" + fmt(rate));
        return "slope " + fmt(slope) + " (bound -" + fmt(rate) + ")";
    });
}

void quantifiers_suite(Harness& h, unsigned seed) {
    h.run("quantifiers.properties", [&] {
        std::mt19937 rng(seed + 14);
        ModelParams p{1.0, 0.4, 1.0, 1};
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CMatrix rho0 = excited_state();
        std::vector<double> ts;
        for (int k = 0; k <= 100; ++k) ts.push_back(0.1 * k);
        StateTrajectory tr = propagate_spectral(spec, rho0, ts);
        for (const CMatrix& st : tr.states) {
            const double d = trace_distance(st, spec.steady_state);
            const double f = frobenius_distance(st, spec.steady_state);
            expect(d >= 0.0 && d <= 1.0, "trace distance out of [0,1]");
            expect(std::abs(f - std::sqrt(2.0) * d) < 1e-10, "D_F != sqrt(2) D in d=2");
        }
        CMatrix rho = random_density(rng, 2);
        expect(trace_distance(rho, rho) == 0.0, "D(rho,rho) != 0");
        expect(frobenius_distance(rho, rho) == 0.0, "D_F(rho,rho) != 0");
        expect(std::abs(relative_entropy(rho, rho)) < 1e-10, "S(rho||rho) != 0");
        expect(relative_entropy(rho, spec.steady_state) >= -1e-10, "S negative");
        return "";
    });
}

void mpemba_suite(Harness& h, unsigned) {
    h.run("mpemba.sample_doubling_invariance", [&] {
        for (auto [a, g1] : {std::pair{1.0, 0.4}, {1.3, 0.4}, {1.2, 0.6}, {0.0, 0.6}}) {
            ModelParams p{a, g1, 1.0, 1};
            LiouvillianSpectrum spec = analyze(build_liouvillian(p));
            CrossingConfig cfg;
            MpembaReport r1 = compare(spec, excited_state(), mixed_state(), QuantifierKind::trace, cfg);
            cfg.samples *= 2;
            MpembaReport r2 = compare(spec, excited_state(), mixed_state(), QuantifierKind::trace, cfg);
            expect(r1.count == r2.count, "count changed under sample doubling");
        }
        return "";
    });
    h.run("mpemba.sign_change_certificates", [&] {
        ModelParams p{1.0, 0.4, 1.0, 1};
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CrossingConfig cfg;
        MpembaReport rep = compare(spec, excited_state(), mixed_state(), QuantifierKind::trace, cfg);
        auto d_i = make_distance_evaluator(spec, excited_state(), QuantifierKind::trace);
        auto d_ii = make_distance_evaluator(spec, mixed_state(), QuantifierKind::trace);
        const double delta = rep.t_max_used / cfg.samples;
        for (double tau : rep.crossing_times) {
            const double before = d_i(tau - delta) - d_ii(tau - delta);
            const double after = d_i(tau + delta) - d_ii(tau + delta);
            expect(before * after < 0.0, "certificate fails at tau=" + fmt(tau));
        }
        return std::to_string(rep.count) + " crossings certified";
    });
    h.run("mpemba.hermitian_limit_no_crossings", [&] {
        CrossingConfig cfg;
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double g2 = 0.3 + 1.2 * i / 9.0;
                const double g1 = g2 * (0.05 + 0.88 * j / 9.0);
                ModelParams p{0.0, g1, g2, 1};
                LiouvillianSpectrum spec = analyze(build_liouvillian(p));
                MpembaReport rep =
                    compare(spec, excited_state(), mixed_state(), QuantifierKind::trace, cfg);
                expect(rep.count == 0, "crossing in the Hermitian limit at g1=" + fmt(g1) +
                                           " g2=" + fmt(g2));
            }
        return "";
    });
}

void boundary_suite(Harness& h, unsigned) {
    h.run("boundary.root_residuals_and_product_identity", [&] {
        double worst_res = 0.0, worst_prod = 0.0;
        CMatrix rho_i = excited_state(), rho_ii = mixed_state();
        for (double a = 0.3; a <= 1.45; a += 0.115)
            for (double g1 = 0.1; g1 <= 0.9; g1 += 0.2) {
                ModelParams p{a, g1, 1.0, 1};
                LiouvillianSpectrum spec = analyze(build_liouvillian(p));
                BoundarySolution sol =
                    solve_x(compute_inputs(spec, overlaps(spec, rho_i), overlaps(spec, rho_ii)));
                worst_res = std::max({worst_res, sol.residual_plus, sol.residual_minus});
                if (sol.regime == Regime::left_of_lep)
                    worst_prod = std::max(worst_prod,
                                          std::abs(std::abs(sol.x_plus * sol.x_minus) - 1.0));
            }
        expect(worst_res < 1e-9, "root residual " + fmt(worst_res));
        expect(worst_prod < 1e-8, "|x+ x-| identity off by " + fmt(worst_prod));
        return "residual " + fmt(worst_res) + ", product " + fmt(worst_prod);
    });
    h.run("boundary.eq10_regions_coincide", [&] {
        std::vector<double> avs, gvs;
        for (int i = 0; i < 18; ++i) avs.push_back(0.2 + (1.45 - 0.2) * i / 17.0);
        for (int j = 0; j < 15; ++j) gvs.push_back(0.05 + 0.9 * j / 14.0);
        ModelParams tmpl{0.0, 0.0, 1.0, 1};
        RegionMap map = classify_regions(avs, gvs, tmpl, excited_state(), mixed_state());
        for (const RegionCell& cell : map.cells)
            if (cell.status == "ok" && cell.left_of_lep)
                expect(cell.eq10_plus == cell.eq10_minus,
                       "x+ and x- regions differ at a=" + fmt(cell.a));
        return "";
    });
    h.run("boundary.crossing_family_period", [&] {
        std::string out;
        for (auto [a, g1] : {std::pair{1.0, 0.4}, {0.85, 0.3}}) {
            ModelParams p{a, g1, 1.0, 1};
            LiouvillianSpectrum spec = analyze(build_liouvillian(p));
            CrossingConfig cfg;
            MpembaReport rep =
                compare(spec, excited_state(), mixed_state(), QuantifierKind::trace, cfg);
            expect(rep.count >= 5, "need >= 5 crossings at a=" + fmt(a));
            const double period = M_PI / std::abs(spec.eigenvalues[2].imag());
            // crossings alternate between the two root families; same-direction
            // neighbors are one period apart once the transient has decayed
            // (the first pair of crossings still feels the dropped fast modes)
            for (std::size_t k = 2; k + 2 < rep.crossing_times.size(); ++k) {
                const double gap = rep.crossing_times[k + 2] - rep.crossing_times[k];
                expect(std::abs(gap - period) / period < 0.05,
                       "family spacing " + fmt(gap) + " vs period " + fmt(period));
            }
            out += (out.empty() ? "" : ", ") + std::string("period ") + fmt(period);
        }
        return out;
    });
}

} // namespace

std::vector<CheckResult> run_verification(unsigned seed, std::ostream* log) {
    Harness h;
    h.log = log;
    kernels_suite(h, seed);
    linalg_suite(h, seed);
    model_suite(h, seed);
    spectral_suite(h, seed);
    dynamics_suite(h, seed);
    quantifiers_suite(h, seed);
    mpemba_suite(h, seed);
    boundary_suite(h, seed);
    return h.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace qmpe
