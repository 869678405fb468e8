// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria with runtime limits measure and enforce them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmpe/boundary.hpp"
#include "qmpe/errors.hpp"
#include "qmpe/mpemba.hpp"
#include "qmpe/random_states.hpp"
#include "qmpe/verify.hpp"

using namespace qmpe;

namespace {

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

int g_failures = 0;

void run(int id, const std::string& title, double time_limit_s,
         const std::function<void(Criterion&)>& body) {
    Criterion c{id, title, true, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.notes.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0.0 && elapsed > time_limit_s) {
        c.pass = false;
        c.notes.push_back("runtime " + std::to_string(elapsed) + " s exceeds " +
                          std::to_string(time_limit_s) + " s");
    }
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", id, title.c_str(),
                elapsed);
    for (const std::string& n : c.notes) std::printf("          - %s\n", n.c_str());
    if (!c.pass) ++g_failures;
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
    return out;
}

const CMatrix kRhoExcited = bloch_state(0, 0, 1);
const CMatrix kRhoMixed = bloch_state(0, 0, 0);

// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
    std::mt19937 rng(1001);
    double worst_entry = 0.0, worst_mu2 = 0.0, worst_struct = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ModelParams p = random_params(rng);
        Liouvillian l = build_liouvillian(p);
        const double g = 0.5 * (p.gamma1 + p.gamma2);
        const cd i{0.0, 1.0};
        CMatrix ref = CMatrix::from_rows({{2 * p.a - p.gamma2, -i, i, p.gamma1},
                                          {-i, -g, 0, i},
                                          {i, 0, -g, -i},
                                          {p.gamma2, i, -i, -2 * p.a - p.gamma1}});
        for (std::size_t k = 0; k < 16; ++k)
            worst_entry = std::max(worst_entry, std::abs(l.matrix.data()[k] - ref.data()[k]));

        LiouvillianSpectrum spec = analyze(l);
        worst_mu2 = std::max(worst_mu2, std::abs(spec.eigenvalues[1] - cd{-g, 0.0}));
        const CMatrix& r2 = spec.right_modes[1];
        worst_struct = std::max({worst_struct, std::abs(r2(0, 0)), std::abs(r2(1, 1)),
                                 std::abs(r2(0, 1) - r2(1, 0))});
    }
    c.require(worst_entry < 1e-14, "entrywise match vs explicit generator: " + fmt(worst_entry));
    c.require(worst_mu2 < 1e-10, "mu2 closed form: " + fmt(worst_mu2));
    c.require(worst_struct < 1e-9, "rho2 structure: " + fmt(worst_struct));
    c.note("worst entry " + fmt(worst_entry) + ", mu2 " + fmt(worst_mu2) + ", rho2 " +
           fmt(worst_struct));
}

void criterion2(Criterion& c) {
    std::mt19937 rng(1002);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ModelParams p = random_params(rng);
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CMatrix rho0 = trial < 50 ? random_diagonal_density(rng) : random_imag_offdiag_density(rng);
        worst = std::max(worst, std::abs(overlaps(spec, rho0).coefficients[1]));
    }
    c.require(worst < 1e-10, "|C2| bound: " + fmt(worst));
    c.note("worst |C2| = " + fmt(worst));
}

void criterion3(Criterion& c) {
    std::mt19937 rng(1003);
    double worst = 0.0, worst_neg = 0.0, worst_trace = 0.0, worst_herm = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p = random_params(rng, 0.05, 2.0);
        Liouvillian l = build_liouvillian(p);
        LiouvillianSpectrum spec = analyze(l);
        CMatrix rho0 = random_density(rng, 2);
        StateTrajectory ode = propagate_ode(l, rho0, 10.0, 1e-3, 250);
        StateTrajectory sp = propagate_spectral(spec, rho0, ode.times);
        for (std::size_t k = 0; k < ode.times.size(); ++k) {
            worst = std::max(worst, trace_distance(ode.states[k], sp.states[k]));
            for (const CMatrix* st : {&ode.states[k], &sp.states[k]}) {
                worst_trace = std::max(worst_trace, std::abs(st->trace() - cd{1.0, 0.0}));
                worst_herm = std::max(worst_herm, st->hermiticity_defect());
                CMatrix h = cd{0.5, 0.0} * (*st + st->adjoint());
                worst_neg = std::min(worst_neg, hermitian_eigenvalues(h).back());
            }
        }
    }
    c.require(worst < 1e-6, "propagator agreement: " + fmt(worst));
    c.require(worst_trace < 1e-9, "unit trace: " + fmt(worst_trace));
    c.require(worst_herm < 1e-10, "Hermiticity: " + fmt(worst_herm));
    c.require(worst_neg >= -1e-9, "positivity: " + fmt(worst_neg));
    c.note("max trace distance " + fmt(worst) + ", min eigenvalue " + fmt(worst_neg));
}

void criterion4(Criterion& c) {
    CrossingConfig cfg;
    LiouvillianSpectrum hermitian = analyze(build_liouvillian({0.0, 0.6, 1.0, 1}));
    MpembaReport a0 = compare(hermitian, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg);
    c.require(a0.count == 0, "a=0 count: " + std::to_string(a0.count));

    LiouvillianSpectrum pt = analyze(build_liouvillian({1.2, 0.6, 1.0, 1}));
    MpembaReport a12 = compare(pt, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg);
    c.require(a12.count == 1, "a=1.2 count: " + std::to_string(a12.count));
    if (a12.count == 1) c.note("crossing at t = " + fmt(a12.crossing_times[0]));
}

void criterion5(Criterion& c) {
    CrossingConfig cfg;
    LiouvillianSpectrum star1 = analyze(build_liouvillian({1.0, 0.4, 1.0, 1}));
    MpembaReport rep1 = compare(star1, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg);
    c.require(rep1.count >= 2, "a=1 count: " + std::to_string(rep1.count));
    const double period = M_PI / std::abs(star1.eigenvalues[2].imag());
    c.note("theoretical period pi/|Im mu3| = " + fmt(period));
    // crossings alternate between the two quadratic-root families; the
    // spacing of consecutive same-direction crossings is the period
    double worst_spacing = 0.0;
    for (int k = 0; k + 2 < rep1.count; ++k) {
        const double gap = rep1.crossing_times[k + 2] - rep1.crossing_times[k];
        worst_spacing = std::max(worst_spacing, std::abs(gap - period) / period);
    }
    c.require(rep1.count >= 3 && worst_spacing < 0.05,
              "same-direction spacing vs period: " + fmt(worst_spacing));

    LiouvillianSpectrum star2 = analyze(build_liouvillian({1.3, 0.4, 1.0, 1}));
    MpembaReport rep2 = compare(star2, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg);
    c.require(rep2.count == 1, "a=1.3 count: " + std::to_string(rep2.count));
    if (rep2.count == 1) {
        // the long-time window opens where the approximation reaches 1e-3
        // trace distance for both trajectories
        OverlapSet ov_i = overlaps(star2, kRhoExcited);
        OverlapSet ov_ii = overlaps(star2, kRhoMixed);
        double window_start = -1.0;
        for (double t = 0.25; t <= 12.0; t += 0.25) {
            StateTrajectory full_i = propagate_spectral(star2, kRhoExcited, {t});
            StateTrajectory full_ii = propagate_spectral(star2, kRhoMixed, {t});
            const double err_i = trace_distance(full_i.states[0], long_time_state(star2, ov_i, t));
            const double err_ii =
                trace_distance(full_ii.states[0], long_time_state(star2, ov_ii, t));
            if (err_i < 1e-3 && err_ii < 1e-3) {
                window_start = t;
                break;
            }
        }
        c.require(window_start > 0.0, "no analytic window found");
        c.require(rep2.crossing_times[0] < window_start,
                  "crossing not before the analytic window");
        c.note("crossing at t = " + fmt(rep2.crossing_times[0]) + ", analytic window opens at t = " +
               fmt(window_start));
    }
}

void criterion6(Criterion& c) {
    const double a_lep = locate_lep({0.0, 0.5, 1.0, 1}, 0.2, 2.5, 1e-10);
    c.note("a_LEP(gamma1=0.5) = " + fmt(a_lep));
    const int n = 40;
    std::vector<double> avs = linspace(0.2, a_lep, n);
    std::vector<double> gvs = linspace(0.05, 0.95, n);
    ModelParams tmpl{0.0, 0.0, 1.0, 1};
    CrossingConfig cfg;
    cfg.samples = 2000;

    GridScan scan = scan_grid(avs, gvs, tmpl, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg, 2);
    RegionMap regions = classify_regions(avs, gvs, tmpl, kRhoExcited, kRhoMixed, false, 2);

    std::vector<bool> multi(n * n, false), eq10(n * n, false);
    int bad_cells = 0, plus_minus_mismatch = 0;
    double worst_product = 0.0;
    for (int i = 0; i < n * n; ++i) {
        const GridCell& gc = scan.cells[i];
        const RegionCell& rc = regions.cells[i];
        if (gc.status != "ok" || rc.status != "ok") {
            ++bad_cells;
            continue;
        }
        multi[i] = gc.report.count >= 2;
        eq10[i] = rc.left_of_lep && rc.eq10;
        if (rc.left_of_lep) {
            if (rc.eq10_plus != rc.eq10_minus) ++plus_minus_mismatch;
            worst_product =
                std::max(worst_product, std::abs(std::abs(rc.x_plus * rc.x_minus) - 1.0));
        }
    }
    c.require(bad_cells == 0, std::to_string(bad_cells) + " failed cells");
    c.require(plus_minus_mismatch == 0,
              "x+ and x- unit-modulus regions differ on " + std::to_string(plus_minus_mismatch) +
                  " cells");
    c.require(worst_product < 1e-8, "|x+ x-| = 1 identity: " + fmt(worst_product));

    // cell-wise agreement outside a one-cell boundary band of either region
    std::vector<bool> band_src(n * n, false);
    {
        std::vector<bool> bm = region_boundary(multi, n, n);
        std::vector<bool> be = region_boundary(eq10, n, n);
        for (int i = 0; i < n * n; ++i) band_src[i] = bm[i] || be[i];
    }
    int disagreements = 0, off_band = 0;
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
            const int i = r * n + col;
            if (multi[i] == eq10[i]) continue;
            ++disagreements;
            bool near_boundary = false;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    const int rr = r + dr, cc = col + dc;
                    if (rr >= 0 && rr < n && cc >= 0 && cc < n && band_src[rr * n + cc])
                        near_boundary = true;
                }
            if (!near_boundary) ++off_band;
        }
    c.require(off_band == 0, std::to_string(off_band) + " disagreements outside the boundary band");
    c.note(std::to_string(disagreements) + " boundary-band disagreements on " +
           std::to_string(n * n) + " cells, worst |x+ x-| deviation " + fmt(worst_product));
}

void criterion7(Criterion& c) {
    const int n = 40;
    std::vector<double> avs = linspace(1.45, 2.8, n);
    std::vector<double> gvs = linspace(0.05, 0.45, n);
    ModelParams tmpl{0.0, 0.0, 0.5, 1};
    const CMatrix rho_i = bloch_state(0.0, -0.4, -0.6);
    CrossingConfig cfg;
    cfg.samples = 2000;

    GridScan scan = scan_grid(avs, gvs, tmpl, rho_i, kRhoMixed, QuantifierKind::trace, cfg, 2);
    RegionMap regions = classify_regions(avs, gvs, tmpl, rho_i, kRhoMixed, false, 2);

    // (a) predicted taus vs refined crossings wherever 0 < x < 1
    double worst_dev = 0.0, sum_dev = 0.0;
    int pairs = 0, unmatched = 0;
    for (int i = 0; i < n * n; ++i) {
        const RegionCell& rc = regions.cells[i];
        const GridCell& gc = scan.cells[i];
        if (rc.status != "ok" || gc.status != "ok" || rc.left_of_lep) continue;
        if (!rc.eq11_plus && !rc.eq11_minus) continue;
        LiouvillianSpectrum spec = analyze(build_liouvillian({rc.a, rc.gamma1, 0.5, 1}));
        BoundarySolution sol =
            solve_x(compute_inputs(spec, overlaps(spec, rho_i), overlaps(spec, kRhoMixed)));
        for (double tau_pred : predict_taus(sol, spec)) {
            if (tau_pred > gc.report.t_max_used) continue;
            double best = 1e300;
            for (double tau_obs : gc.report.crossing_times)
                best = std::min(best, std::abs(tau_obs - tau_pred) / tau_pred);
            if (best > 1e200) {
                ++unmatched;
                continue;
            }
            ++pairs;
            worst_dev = std::max(worst_dev, best);
            sum_dev += best;
        }
    }
    c.require(pairs > 0 && unmatched == 0, "predicted taus without any observed crossing");
    c.require(worst_dev <= 0.01,
              "tau prediction within 1%: worst " + fmt(worst_dev * 100) + "% over " +
                  std::to_string(pairs) + " root-crossing pairs (mean " +
                  fmt(100 * sum_dev / std::max(pairs, 1)) +
                  "%); the long-time approximation carries O(e^{-(mu1-mu3) tau}) intrinsic "
                  "error of a few percent at these crossing times");
    c.note("tau deviations: worst " + fmt(worst_dev * 100) + "%, mean " +
           fmt(100 * sum_dev / std::max(pairs, 1)) + "% (" + std::to_string(pairs) + " pairs)");

    // (b) 1 <-> 2 count transitions line up with x_plus entering/leaving (0,1)
    int transitions = 0, misaligned = 0;
    auto check_pair = [&](int i, int j) {
        const GridCell& ga = scan.cells[i];
        const GridCell& gb = scan.cells[j];
        const RegionCell& ra = regions.cells[i];
        const RegionCell& rb = regions.cells[j];
        if (ga.status != "ok" || gb.status != "ok" || ra.status != "ok" || rb.status != "ok")
            return;
        if (ra.left_of_lep || rb.left_of_lep) return;
        const int ca = ga.report.count, cb = gb.report.count;
        if (!((ca == 1 && cb == 2) || (ca == 2 && cb == 1))) return;
        ++transitions;
        const bool plus_a = ra.eq11_plus, plus_b = rb.eq11_plus;
        const bool aligned = (ca == 2 ? plus_a && !plus_b : plus_b && !plus_a);
        if (!aligned) ++misaligned;
    };
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) {
            if (col + 1 < n) check_pair(r * n + col, r * n + col + 1);
            if (r + 1 < n) check_pair(r * n + col, (r + 1) * n + col);
        }
    c.require(transitions > 0, "no 1<->2 transitions inside the grid");
    c.require(misaligned == 0, std::to_string(misaligned) + " of " + std::to_string(transitions) +
                                   " transitions misaligned with the second root");
    c.note(std::to_string(transitions) + " count transitions, all checked against x_plus membership");
}

void criterion8(Criterion& c) {
    CrossingConfig cfg;
    for (auto [a, g1] : {std::pair{1.0, 0.4}, {1.3, 0.4}}) {
        LiouvillianSpectrum spec = analyze(build_liouvillian({a, g1, 1.0, 1}));
        MpembaReport tr = compare(spec, kRhoExcited, kRhoMixed, QuantifierKind::trace, cfg);
        MpembaReport fr = compare(spec, kRhoExcited, kRhoMixed, QuantifierKind::frobenius, cfg);
        c.require(tr.count == fr.count, "trace/frobenius count mismatch at a=" + fmt(a) + ": " +
                                            std::to_string(tr.count) + " vs " +
                                            std::to_string(fr.count));
        CrossingConfig scfg;
        scfg.samples = 2000;
        MpembaReport se = compare(spec, kRhoExcited, kRhoMixed, QuantifierKind::relative_entropy,
                                  scfg);
        c.require(se.count >= 1, "no relative-entropy crossing at a=" + fmt(a));
        c.note("a=" + fmt(a) + ": counts trace/frobenius/relative_entropy = " +
               std::to_string(tr.count) + "/" + std::to_string(fr.count) + "/" +
               std::to_string(se.count));

        // d=2 identity along the trajectory
        auto d_t = make_distance_evaluator(spec, kRhoExcited, QuantifierKind::trace);
        auto d_f = make_distance_evaluator(spec, kRhoExcited, QuantifierKind::frobenius);
        double worst_id = 0.0;
        for (double t = 0.0; t < 8.0; t += 0.37)
            worst_id = std::max(worst_id, std::abs(d_f(t) - std::sqrt(2.0) * d_t(t)));
        c.require(worst_id < 1e-10, "D_F = sqrt(2) D identity: " + fmt(worst_id));
    }

    // S(t) ratio to the mode expression over the final decade before the
    // amplitude floor
    LiouvillianSpectrum spec = analyze(build_liouvillian({1.3, 0.4, 1.0, 1}));
    OverlapSet ov = overlaps(spec, kRhoExcited);
    CMatrix ss_inv = hermitian_inverse(spec.steady_state);
    const cd gap = spec.eigenvalues[0] - spec.eigenvalues[2];
    auto approx_s = [&](double t) {
        CMatrix m = long_time_m(spec, ov, t);
        return std::real((m * m * ss_inv).trace() * std::exp(-2.0 * gap * t));
    };
    double t_lo = 0.0, t_hi = 0.0;
    for (double t = 0.5; t < 40.0; t += 0.01) {
        const double v = std::abs(approx_s(t));
        if (t_lo == 0.0 && v < 10.0 * cfg.amplitude_floor) t_lo = t;
        if (v < cfg.amplitude_floor) {
            t_hi = t;
            break;
        }
    }
    c.require(t_lo > 0.0 && t_hi > t_lo, "no final decade found");
    double worst_ratio_dev = 0.0, ratio_seen = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double t = t_lo + (t_hi - t_lo) * k / 10.0;
        StateTrajectory full = propagate_spectral(spec, kRhoExcited, {t});
        const double s = relative_entropy(full.states[0], spec.steady_state);
        const double ratio = s / approx_s(t);
        ratio_seen = ratio;
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 1.0));
    }
    c.require(worst_ratio_dev <= 0.02,
              "S(t) ratio tends to 1 within 2%: measured ratio ~" + fmt(ratio_seen) +
                  " (the first-order log expansion behind the mode expression drops a "
                  "same-order term; the true asymptote is the Kubo-Mori form, ~0.39 here)");
    c.note("measured S/approx ratio over the final decade: " + fmt(ratio_seen));
}

void criterion9(Criterion& c) {
    CrossingConfig cfg;
    cfg.samples = 2000;
    for (auto [nq, a] : {std::pair{2, 1.2}, {3, 0.8}, {4, 0.6}}) {
        ModelParams p{a, 0.1, 1.0, nq};
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        CMatrix rho_i = tensor_power(kRhoExcited, nq);
        CMatrix rho_ii = tensor_power(kRhoMixed, nq);
        MpembaReport rep = compare(spec, rho_i, rho_ii, QuantifierKind::trace, cfg);
        c.require(rep.count >= 1,
                  "N=" + std::to_string(nq) + " shows no crossing (a=" + fmt(a) + ")");
        c.note("N=" + std::to_string(nq) + ", a=" + fmt(a) + ": " + std::to_string(rep.count) +
               " crossing(s), first at t = " +
               (rep.count ? fmt(rep.crossing_times[0]) : std::string("-")));
    }
}

void criterion10(Criterion& c) {
    std::ostringstream log;
    std::vector<CheckResult> results = run_verification(12345u, &log);
    int failed = 0;
    for (const CheckResult& r : results)
        if (!r.pass) {
            ++failed;
            c.note("verify FAIL: " + r.name + " (" + r.detail + ")");
        }
    c.require(failed == 0, std::to_string(failed) + " verification checks failed");
    c.note(std::to_string(results.size()) + " module-invariant checks, " +
           std::to_string(results.size() - failed) + " passed");
}

} // namespace

int main() {
    std::printf("acceptance suite (simd backend: %s)\n", kern::active().name);
    run(1, "structural exactness of the generator and its slow mode", 0.0, criterion1);
    run(2, "suppressed slow mode for the C2 = 0 state classes", 0.0, criterion2);
    run(3, "propagator equivalence with invariants throughout", 0.0, criterion3);
    run(4, "Hermitian limit vs PT qubit trajectory counts", 5.0, criterion4);
    run(5, "oscillatory multiple crossings and the single early crossing", 10.0, criterion5);
    run(6, "analytic/numeric region agreement left of the LEP", 180.0, criterion6);
    run(7, "right-of-LEP tau predictions and count transitions", 180.0, criterion7);
    run(8, "quantifier concordance and the relative-entropy tail", 0.0, criterion8);
    run(9, "multiqubit persistence, N = 2, 3, 4", 120.0, criterion9);
    run(10, "module property suite (cmd_verify path)", 0.0, criterion10);

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
