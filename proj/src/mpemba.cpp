#include "qmpe/mpemba.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

#include "qmpe/errors.hpp"

namespace qmpe {

void CrossingConfig::validate() const {
    if (t_min < 0.0) throw ConfigError("crossing: t_min must be >= 0");
    if (t_max > 0.0 && !(t_max > t_min)) throw ConfigError("crossing: t_max must exceed t_min");
    if (samples < 100) throw ConfigError("crossing: samples must be >= 100");
    if (!(refine_tol > 0.0)) throw ConfigError("crossing: refine_tol must be > 0");
    if (!(amplitude_floor > 0.0)) throw ConfigError("crossing: amplitude_floor must be > 0");
}

bool in_c2_zero_class(const CMatrix& rho0) {
    for (std::size_t i = 0; i < rho0.dim(); ++i)
        for (std::size_t j = 0; j < rho0.dim(); ++j)
            if (i != j && std::abs(rho0(i, j).real()) > 1e-12) return false;
    return true;
}

std::function<double(double)> make_distance_evaluator(const LiouvillianSpectrum& spec,
                                                      const CMatrix& rho0, QuantifierKind kind) {
    auto ov = std::make_shared<OverlapSet>(overlaps(spec, rho0));
    const std::size_t nv = spec.mode_vecs.size();
    const std::size_t d = spec.dim;

    // acc is reused across calls; evaluators are not shared between threads
    return [&spec, ov, nv, d, kind, acc = std::vector<cd>(nv)](double t) mutable -> double {
        std::fill(acc.begin(), acc.end(), cd{0.0, 0.0});
        const cd mu1 = spec.eigenvalues[0];
        double wsum = 0.0;
        for (std::size_t j = 0; j < nv; ++j) {
            const cd w = ov->coefficients[j] * std::exp((spec.eigenvalues[j] - mu1) * t);
            wsum += std::abs(w);
            kern::axpy(w, spec.mode_vecs[j].data(), acc.data(), nv);
        }
        cd tr{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i) tr += acc[i + i * d];
        if (std::abs(tr) <= 1e-13 * std::max(1.0, wsum))
            throw VanishingNorm("distance evaluator: normalization trace underflows");
        kern::scal(cd{1.0, 0.0} / tr, acc.data(), acc.size());
        kern::axpy(cd{-1.0, 0.0}, spec.steady_vec.data(), acc.data(), acc.size());

        if (d == 2 && kind != QuantifierKind::relative_entropy) {
            if (kind == QuantifierKind::frobenius) return std::sqrt(kern::sumsq(acc.data(), 4));
            // Hermitian part of [[d00, d01],[d10, d11]], closed-form spectrum
            const double e0 = acc[0].real();
            const double e1 = acc[3].real();
            const cd c = cd{0.5, 0.0} * (acc[2] + std::conj(acc[1]));
            const double mid = 0.5 * (e0 + e1);
            const double rad = std::sqrt(0.25 * (e0 - e1) * (e0 - e1) + std::norm(c));
            return 0.5 * (std::abs(mid + rad) + std::abs(mid - rad));
        }
        CMatrix diff = devectorize(acc.data(), d);
        if (kind == QuantifierKind::relative_entropy) {
            CMatrix rho = diff + spec.steady_state;
            return relative_entropy(rho, spec.steady_state);
        }
        CMatrix zero(d);
        return kind == QuantifierKind::trace ? trace_distance(diff, zero)
                                             : frobenius_distance(diff, zero);
    };
}

MpembaReport compare(const LiouvillianSpectrum& spec, const CMatrix& rho0_i,
                     const CMatrix& rho0_ii, QuantifierKind kind, const CrossingConfig& cfg,
                     bool allow_any_initial_state) {
    cfg.validate();
    if (!allow_any_initial_state) {
        if (!in_c2_zero_class(rho0_i) || !in_c2_zero_class(rho0_ii))
            throw SlowModePresent(
                "compare: initial state outside the C2 = 0 class (real off-diagonals); "
                "pass allow_any_initial_state to override");
    }

    auto d_i = make_distance_evaluator(spec, rho0_i, kind);
    auto d_ii = make_distance_evaluator(spec, rho0_ii, kind);

    MpembaReport rep;
    rep.quantifier = kind;
    rep.d0_i = d_i(cfg.t_min);
    rep.d0_ii = d_ii(cfg.t_min);
    const double start_scale = std::max({rep.d0_i, rep.d0_ii, cfg.amplitude_floor});
    if (std::abs(rep.d0_i - rep.d0_ii) <= cfg.refine_tol * start_scale)
        throw EqualStart("compare: initial distances coincide within refine_tol");

    double t_max = cfg.t_max;
    if (!(t_max > cfg.t_min)) {
        const double gap = (spec.eigenvalues[0] - spec.eigenvalues[2]).real();
        t_max = cfg.t_min + 15.0 / std::max(std::abs(gap), 1e-6);
    }
    rep.t_max_used = t_max;

    const int n = cfg.samples;
    const double dt = (t_max - cfg.t_min) / (n - 1);
    std::vector<double> dd(n), di(n), dii(n);
    for (int k = 0; k < n; ++k) {
        const double t = cfg.t_min + k * dt;
        di[k] = d_i(t);
        dii[k] = d_ii(t);
        dd[k] = di[k] - dii[k];
    }

    auto delta = [&](double t) { return d_i(t) - d_ii(t); };

    for (int k = 0; k + 1 < n; ++k) {
        if (dd[k] == 0.0 || dd[k] * dd[k + 1] >= 0.0) continue;
        double lo = cfg.t_min + k * dt, hi = lo + dt;
        double flo = dd[k];
        double tau = 0.5 * (lo + hi);
        for (int it = 0; it < 80; ++it) {
            tau = 0.5 * (lo + hi);
            const double fm = delta(tau);
            const double scale = std::max({d_i(tau), d_ii(tau), cfg.amplitude_floor});
            if (std::abs(fm) < cfg.refine_tol * scale) break;
            if (flo * fm <= 0.0) {
                hi = tau;
            } else {
                lo = tau;
                flo = fm;
            }
        }
        if (std::max(d_i(tau), d_ii(tau)) < cfg.amplitude_floor) continue; // numerical noise
        rep.crossing_times.push_back(tau);
        rep.directions.push_back(dd[k] < 0.0 ? +1 : -1);
    }
    rep.count = static_cast<int>(rep.crossing_times.size());

    // tangential near-zeros: local minima of |Delta D| below the certificate
    // scale with no sign change
    for (int k = 1; k + 1 < n; ++k) {
        const double m = std::abs(dd[k]);
        if (m < std::abs(dd[k - 1]) && m <= std::abs(dd[k + 1]) && dd[k - 1] * dd[k + 1] > 0.0) {
            const double scale = std::max({di[k], dii[k], cfg.amplitude_floor});
            if (m < cfg.refine_tol * scale) rep.touches.push_back(cfg.t_min + k * dt);
        }
    }
    return rep;
}

namespace {

std::string classify_error(const std::exception& e) {
    if (dynamic_cast<const EqualStart*>(&e)) return "equal_start";
    if (dynamic_cast<const SlowModePresent*>(&e)) return "slow_mode";
    if (dynamic_cast<const VanishingNorm*>(&e)) return "vanishing_norm";
    if (dynamic_cast<const NonConvergence*>(&e)) return "non_convergence";
    if (dynamic_cast<const ZeroProjection*>(&e)) return "zero_projection";
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    if (dynamic_cast<const Error*>(&e)) return "error";
    return "exception";
}

} // namespace

GridScan scan_grid(const std::vector<double>& a_values, const std::vector<double>& g1_values,
                   const ModelParams& params_template, const CMatrix& rho0_i,
                   const CMatrix& rho0_ii, QuantifierKind kind, const CrossingConfig& cfg,
                   int jobs) {
    GridScan scan;
    scan.a_values = a_values;
    scan.g1_values = g1_values;
    scan.cells.resize(a_values.size() * g1_values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= scan.cells.size()) return;
            const std::size_t ia = idx / g1_values.size();
            const std::size_t ig = idx % g1_values.size();
            GridCell& cell = scan.cells[idx];
            cell.a = a_values[ia];
            cell.gamma1 = g1_values[ig];
            try {
                ModelParams p = params_template;
                p.a = cell.a;
                p.gamma1 = cell.gamma1;
                p.validate();
                LiouvillianSpectrum spec = analyze(build_liouvillian(p));
                cell.report = compare(spec, rho0_i, rho0_ii, kind, cfg);
            } catch (const std::exception& e) {
                cell.status = classify_error(e);
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return scan;
}

} // namespace qmpe
