#include "qmpe/boundary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qmpe/errors.hpp"
#include "qmpe/linalg.hpp"

namespace qmpe {

bool is_real_in_unit_interval(cd x) {
    return std::abs(x.imag()) < 1e-9 && x.real() > 0.0 && x.real() < 1.0;
}

bool is_unit_modulus(cd x, double tol) { return std::abs(std::abs(x) - 1.0) < tol; }

namespace {

void require_four_modes(const LiouvillianSpectrum& spec, const char* who) {
    if (spec.mode_vecs.size() != 4)
        throw Error(std::string(who) + ": defined for the single-qubit four-mode spectrum");
}

struct Ratios {
    cd r3_i, r4_i, r3_ii, r4_ii;
};

Ratios mode_ratios(const OverlapSet& ov_i, const OverlapSet& ov_ii, const char* who) {
    auto check = [&](const OverlapSet& ov, const char* label) {
        const cd c1 = ov.coefficients[0];
        if (std::abs(c1) < 1e-12)
            throw ZeroProjection(std::string(who) + ": C1 vanishes for state " + label);
        if (std::abs(ov.coefficients[1] / c1) > 1e-8)
            throw SlowModePresent(std::string(who) + ": slow mode not suppressed for state " +
                                  label);
    };
    check(ov_i, "I");
    check(ov_ii, "II");
    return Ratios{ov_i.coefficients[2] / ov_i.coefficients[0],
                  ov_i.coefficients[3] / ov_i.coefficients[0],
                  ov_ii.coefficients[2] / ov_ii.coefficients[0],
                  ov_ii.coefficients[3] / ov_ii.coefficients[0]};
}

BoundarySolution solve_quadratic(const BoundaryInputs& in) {
    const cd a = in.t4 * (in.r4_i * in.r4_i - in.r4_ii * in.r4_ii);
    const cd b = cd{2.0, 0.0} * in.p * (in.r3_i * in.r4_i - in.r3_ii * in.r4_ii);
    const cd c = in.t3 * (in.r3_i * in.r3_i - in.r3_ii * in.r3_ii);
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});

    BoundarySolution sol;
    sol.regime = in.regime;
    if (scale < 1e-14)
        throw DegenerateQuadratic("solve_x: all coefficients vanish (identical trajectories)");
    if (std::abs(a) <= 1e-12 * scale) {
        if (std::abs(b) <= 1e-12 * scale)
            throw DegenerateQuadratic("solve_x: vanishing leading and linear coefficients");
        sol.linear_remnant = true;
        sol.x_plus = sol.x_minus = -c / b;
        sol.discriminant = cd{0.0, 0.0};
    } else {
        sol.discriminant = b * b - cd{4.0, 0.0} * a * c;
        const cd sq = std::sqrt(sol.discriminant);
        sol.x_plus = (-b + sq) / (cd{2.0, 0.0} * a);
        sol.x_minus = (-b - sq) / (cd{2.0, 0.0} * a);
        sol.degenerate =
            std::abs(sol.discriminant) <= 1e-12 * std::max(std::norm(b), 4.0 * std::abs(a * c));
        // Canonical labels right of the LEP: x_plus = smaller real root (the
        // nested region; see header).
        if (in.regime == Regime::right_of_lep && std::abs(sol.x_plus.imag()) < 1e-9 &&
            std::abs(sol.x_minus.imag()) < 1e-9 && sol.x_plus.real() > sol.x_minus.real())
            std::swap(sol.x_plus, sol.x_minus);
    }

    auto residual = [&](cd x) {
        const double num = std::abs(a * x * x + b * x + c);
        const double den = std::abs(a) * std::norm(x) + std::abs(b) * std::abs(x) + std::abs(c);
        return den > 0.0 ? num / den : 0.0;
    };
    sol.residual_plus = residual(sol.x_plus);
    sol.residual_minus = residual(sol.x_minus);
    return sol;
}

} // namespace

BoundaryInputs compute_inputs(const LiouvillianSpectrum& spec, const OverlapSet& ov_i,
                              const OverlapSet& ov_ii) {
    require_four_modes(spec, "compute_inputs");
    const Ratios r = mode_ratios(ov_i, ov_ii, "compute_inputs");

    const CMatrix d3 = spec.right_modes[2] - spec.right_modes[0];
    const CMatrix d4 = spec.right_modes[3] - spec.right_modes[0];
    BoundaryInputs in;
    in.t3 = (d3 * d3).trace();
    in.t4 = (d4 * d4).trace();
    in.p = (d3 * d4).trace();
    in.r3_i = r.r3_i;
    in.r4_i = r.r4_i;
    in.r3_ii = r.r3_ii;
    in.r4_ii = r.r4_ii;
    in.regime = left_of_lep(spec) ? Regime::left_of_lep : Regime::right_of_lep;
    return in;
}

BoundarySolution solve_x(const BoundaryInputs& inputs) { return solve_quadratic(inputs); }

BoundarySolution solve_x_relative_entropy(const LiouvillianSpectrum& spec,
                                          const OverlapSet& ov_i, const OverlapSet& ov_ii) {
    require_four_modes(spec, "solve_x_relative_entropy");
    const Ratios r = mode_ratios(ov_i, ov_ii, "solve_x_relative_entropy");

    CMatrix ss_inv = [&] {
        try {
            return hermitian_inverse(spec.steady_state, 1e-10);
        } catch (const SingularSteadyState&) {
            throw SingularSteadyState("solve_x_relative_entropy: rho_ss not invertible");
        }
    }();

    const CMatrix d3 = spec.right_modes[2] - spec.right_modes[0];
    const CMatrix d4 = spec.right_modes[3] - spec.right_modes[0];
    BoundaryInputs in;
    in.t3 = (d3 * d3 * ss_inv).trace();
    in.t4 = (d4 * d4 * ss_inv).trace();
    in.p = cd{0.5, 0.0} * ((d3 * d4 * ss_inv).trace() + (d4 * d3 * ss_inv).trace());
    in.r3_i = r.r3_i;
    in.r4_i = r.r4_i;
    in.r3_ii = r.r3_ii;
    in.r4_ii = r.r4_ii;
    in.regime = left_of_lep(spec) ? Regime::left_of_lep : Regime::right_of_lep;
    return solve_quadratic(in);
}

std::vector<double> predict_taus(const BoundarySolution& sol, const LiouvillianSpectrum& spec,
                                 double amplitude_floor) {
    require_four_modes(spec, "predict_taus");
    const cd mu34 = spec.eigenvalues[2] - spec.eigenvalues[3];
    std::vector<double> taus;

    if (sol.regime == Regime::right_of_lep) {
        for (cd x : {sol.x_plus, sol.x_minus}) {
            if (!is_real_in_unit_interval(x)) continue;
            const double tau = -std::log(x.real()) / mu34.real();
            if (tau > 0.0) taus.push_back(tau);
        }
    } else {
        // X(tau) = e^{-(mu3-mu4) tau}; left of the LEP mu3 - mu4 = 2i Im(mu3),
        // so each unit-modulus root yields the family tau0 + k pi / Im(mu3).
        const double beta = 2.0 * spec.eigenvalues[2].imag();
        if (beta > 0.0) {
            const double period = 2.0 * M_PI / beta; // = pi / Im(mu3)
            const double envelope_rate = (spec.eigenvalues[0] - spec.eigenvalues[2]).real();
            const double tau_stop =
                envelope_rate > 0.0 ? std::log(1.0 / amplitude_floor) / envelope_rate : 50.0;
            for (cd x : {sol.x_plus, sol.x_minus}) {
                if (!is_unit_modulus(x)) continue;
                double tau0 = std::fmod(-std::arg(x) / beta, period);
                if (tau0 < 0.0) tau0 += period;
                for (double tau = tau0; tau <= tau_stop; tau += period) taus.push_back(tau);
            }
        }
    }
    std::sort(taus.begin(), taus.end());
    // coincident roots (degenerate quadratic) produce duplicate taus
    taus.erase(std::unique(taus.begin(), taus.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-10; }),
               taus.end());
    if (taus.empty())
        throw NoRealTau("predict_taus: no root satisfies the regime constraint");
    return taus;
}

RegionMap classify_regions(const std::vector<double>& a_values,
                           const std::vector<double>& g1_values,
                           const ModelParams& params_template, const CMatrix& rho0_i,
                           const CMatrix& rho0_ii, bool relative_entropy_weights, int jobs) {
    RegionMap map;
    map.a_values = a_values;
    map.g1_values = g1_values;
    map.cells.resize(a_values.size() * g1_values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= map.cells.size()) return;
            RegionCell& cell = map.cells[idx];
            cell.a = a_values[idx / g1_values.size()];
            cell.gamma1 = g1_values[idx % g1_values.size()];
            try {
                ModelParams p = params_template;
                p.a = cell.a;
                p.gamma1 = cell.gamma1;
                p.validate();
                LiouvillianSpectrum spec = analyze(build_liouvillian(p));
                OverlapSet ov_i = overlaps(spec, rho0_i);
                OverlapSet ov_ii = overlaps(spec, rho0_ii);
                BoundarySolution sol = relative_entropy_weights
                                           ? solve_x_relative_entropy(spec, ov_i, ov_ii)
                                           : solve_x(compute_inputs(spec, ov_i, ov_ii));
                cell.left_of_lep = sol.regime == Regime::left_of_lep;
                cell.x_plus = sol.x_plus;
                cell.x_minus = sol.x_minus;
                cell.abs_x_plus = std::abs(sol.x_plus);
                cell.abs_x_minus = std::abs(sol.x_minus);
                if (cell.left_of_lep) {
                    cell.eq10_plus = is_unit_modulus(sol.x_plus);
                    cell.eq10_minus = is_unit_modulus(sol.x_minus);
                    cell.eq10 = cell.eq10_plus && cell.eq10_minus;
                } else {
                    cell.eq11_plus = is_real_in_unit_interval(sol.x_plus);
                    cell.eq11_minus = is_real_in_unit_interval(sol.x_minus);
                }
            } catch (const std::exception& e) {
                cell.status = e.what();
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
    return map;
}

std::vector<bool> region_boundary(const std::vector<bool>& field, std::size_t rows,
                                  std::size_t cols) {
    std::vector<bool> edge(field.size(), false);
    auto at = [&](std::size_t r, std::size_t c) { return field[r * cols + c]; };
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const bool v = at(r, c);
            const bool differs = (r > 0 && at(r - 1, c) != v) || (r + 1 < rows && at(r + 1, c) != v) ||
                                 (c > 0 && at(r, c - 1) != v) || (c + 1 < cols && at(r, c + 1) != v);
            if (differs) edge[r * cols + c] = true;
        }
    return edge;
}

} // namespace qmpe
