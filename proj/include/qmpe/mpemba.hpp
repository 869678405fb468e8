#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmpe/dynamics.hpp"
#include "qmpe/quantifiers.hpp"

namespace qmpe {

struct CrossingConfig {
    double t_min = 0.0;
    double t_max = 0.0; // <= t_min means auto: 15 / Re(mu1 - mu3)
    int samples = 4000;
    double refine_tol = 1e-7;       // relative certificate at a refined crossing
    double amplitude_floor = 1e-12; // crossings with both trajectories below it are noise
    void validate() const;
};

struct MpembaReport {
    std::vector<double> crossing_times; // ascending
    std::vector<int> directions;        // +1: Delta D goes negative->positive
    int count = 0;
    std::vector<double> touches; // tangential near-zeros, not counted
    QuantifierKind quantifier = QuantifierKind::trace;
    double t_max_used = 0.0;
    double d0_i = 0.0, d0_ii = 0.0; // initial distances
};

// Quantifier trajectory evaluator D(t) for one initial state against the
// steady state, built on the cached vectorized modes.
std::function<double(double)> make_distance_evaluator(const LiouvillianSpectrum& spec,
                                                      const CMatrix& rho0, QuantifierKind kind);

// Sample Delta D on a uniform grid, refine sign changes by bisection, count
// crossings. Preconditions: distinguishable start (EqualStart otherwise) and,
// unless allow_any_initial_state, both states in the C2 = 0 class (all
// off-diagonal entries purely imaginary).
MpembaReport compare(const LiouvillianSpectrum& spec, const CMatrix& rho0_i,
                     const CMatrix& rho0_ii, QuantifierKind kind, const CrossingConfig& cfg,
                     bool allow_any_initial_state = false);

struct GridCell {
    double a = 0.0;
    double gamma1 = 0.0;
    MpembaReport report;
    std::string status = "ok"; // error class name when the cell failed
};

struct GridScan {
    std::vector<double> a_values;
    std::vector<double> g1_values;
    std::vector<GridCell> cells; // row-major over a, then gamma1
    const GridCell& cell(std::size_t ia, std::size_t ig) const {
        return cells[ia * g1_values.size() + ig];
    }
};

// Independent per-cell evaluation; cell errors are recorded in-cell and never
// abort the grid. jobs > 1 evaluates cells concurrently (cells share nothing);
// the result layout is deterministic regardless of jobs.
GridScan scan_grid(const std::vector<double>& a_values, const std::vector<double>& g1_values,
                   const ModelParams& params_template, const CMatrix& rho0_i,
                   const CMatrix& rho0_ii, QuantifierKind kind, const CrossingConfig& cfg,
                   int jobs = 1);

bool in_c2_zero_class(const CMatrix& rho0);

} // namespace qmpe
