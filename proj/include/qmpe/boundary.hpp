#pragma once

#include <string>
#include <vector>

#include "qmpe/spectral.hpp"

namespace qmpe {

enum class Regime { left_of_lep, right_of_lep };

// Scalar inputs of the crossing quadratic, computed with unit-trace modes:
// T3 = Tr[(rho3-rho1)^2], T4 = Tr[(rho4-rho1)^2],
// P = Tr[(rho3-rho1)(rho4-rho1)], R_j^i = C_j^i / C_1^i.
struct BoundaryInputs {
    cd t3, t4, p;
    cd r3_i, r4_i, r3_ii, r4_ii;
    Regime regime = Regime::left_of_lep;
};

// Roots of A X^2 + B X + C = 0 with A = T4 (R4I^2 - R4II^2),
// B = 2 P (R3I R4I - R3II R4II), C = T3 (R3I^2 - R3II^2); the quadratic is
// Tr[(M^I)^2] = Tr[(M^II)^2] recast in X = e^{-(mu3-mu4) tau}.
//
// Root labels: the raw +/- of the closed form depends on the sign of the
// leading coefficient, which in turn depends on the mode normalization the
// closed form does not pin down. Right of the LEP the labels are
// canonicalized so x_plus is the smaller real root: its entry into (0, 1)
// adds the second (later) crossing, and the x_plus region nests inside the
// x_minus region.
struct BoundarySolution {
    cd x_plus, x_minus;
    cd discriminant;
    Regime regime = Regime::left_of_lep;
    bool degenerate = false;     // discriminant ~ 0, double root
    bool linear_remnant = false; // vanishing leading coefficient, single root
    double residual_plus = 0.0;  // relative quadratic residual at each root
    double residual_minus = 0.0;
};

// Preconditions: C2 suppressed and C1 nonzero for both states
// (SlowModePresent / ZeroProjection).
BoundaryInputs compute_inputs(const LiouvillianSpectrum& spec, const OverlapSet& overlaps_i,
                              const OverlapSet& overlaps_ii);

// Throws DegenerateQuadratic when every coefficient vanishes (identical
// trajectories). A vanishing leading coefficient alone solves the linear
// remnant and marks it.
BoundarySolution solve_x(const BoundaryInputs& inputs);

// Right of LEP: tau = -ln(x)/(mu3 - mu4) for each real root in (0, 1).
// Left of LEP: for each unit-modulus root, the phase gives a principal
// tau >= 0 and the family tau + k pi/|Im mu3|, enumerated until the envelope
// e^{-Re(mu1-mu3) tau} falls below amplitude_floor. Throws NoRealTau when no
// root satisfies the regime constraint.
std::vector<double> predict_taus(const BoundarySolution& sol, const LiouvillianSpectrum& spec,
                                 double amplitude_floor = 1e-12);

// Same quadratic with the relative-entropy weights
// T~3 = Tr[(rho3-rho1)^2 rho_ss^-1], T~4 = Tr[(rho4-rho1)^2 rho_ss^-1],
// P~ = 1/2 Tr[{rho3-rho1, rho4-rho1} rho_ss^-1] (symmetrized so the
// quadratic reproduces Tr(M^2 rho_ss^-1) for noncommuting factors).
// Throws SingularSteadyState when rho_ss has an eigenvalue <= 1e-10.
BoundarySolution solve_x_relative_entropy(const LiouvillianSpectrum& spec,
                                          const OverlapSet& overlaps_i,
                                          const OverlapSet& overlaps_ii);

struct RegionCell {
    double a = 0.0;
    double gamma1 = 0.0;
    bool left_of_lep = false;
    double abs_x_plus = 0.0, abs_x_minus = 0.0;
    cd x_plus, x_minus;
    bool eq10_plus = false, eq10_minus = false, eq10 = false; // | |x| - 1 | < 1e-6
    bool eq11_plus = false, eq11_minus = false;               // x real in (0, 1)
    std::string status = "ok";
};

struct RegionMap {
    std::vector<double> a_values;
    std::vector<double> g1_values;
    std::vector<RegionCell> cells; // row-major over a, then gamma1
    const RegionCell& cell(std::size_t ia, std::size_t ig) const {
        return cells[ia * g1_values.size() + ig];
    }
};

RegionMap classify_regions(const std::vector<double>& a_values,
                           const std::vector<double>& g1_values,
                           const ModelParams& params_template, const CMatrix& rho0_i,
                           const CMatrix& rho0_ii, bool relative_entropy_weights = false,
                           int jobs = 1);

// Marching-edge extraction: true where any 4-neighbor differs.
std::vector<bool> region_boundary(const std::vector<bool>& field, std::size_t rows,
                                  std::size_t cols);

bool is_real_in_unit_interval(cd x);
bool is_unit_modulus(cd x, double tol = 1e-6);

} // namespace qmpe
