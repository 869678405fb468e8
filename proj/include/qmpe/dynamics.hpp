#pragma once

#include <vector>

#include "qmpe/spectral.hpp"

namespace qmpe {

struct StateTrajectory {
    std::vector<double> times;
    std::vector<CMatrix> states;
};

// Density-matrix invariant check: Hermitian within herm_tol, unit trace
// within trace_tol, min eigenvalue >= -pos_tol. Throws InvariantViolation.
void validate_density(const CMatrix& rho, double herm_tol = 1e-10, double trace_tol = 1e-10,
                      double pos_tol = 1e-6);

// rho(t) = sum_j e^{mu_j t} C_j rho_j / Tr(...). Exponentials are shifted by
// mu_1 so late times cannot overflow; the normalized state is unchanged.
// Throws VanishingNorm when the denominator underflows relative to the mode
// amplitudes.
StateTrajectory propagate_spectral(const LiouvillianSpectrum& spec, const CMatrix& rho0,
                                   const std::vector<double>& times);

// Fixed-step classical RK4 on the full nonlinear equation, in vectorized
// form (one GEMV per stage plus the trace-correction dot). Trace is
// renormalized each step; drift beyond 1e-7 before renormalization raises
// InvariantViolation. Emitted states are re-validated. This is the
// independent oracle for propagate_spectral: it never touches the
// eigensolver.
StateTrajectory propagate_ode(const Liouvillian& liouv, const CMatrix& rho0, double t_end,
                              double dt, int emit_every = 1, bool richardson_check = false);

// rho_ss + M(t) e^{-(mu1-mu3) t} with
// M(t) = (C3/C1)(rho3-rho1) + (C4/C1) e^{-(mu3-mu4) t} (rho4-rho1).
// Requires the suppressed slow mode: |C2/C1| <= 1e-8 (SlowModePresent).
CMatrix long_time_state(const LiouvillianSpectrum& spec, const OverlapSet& overlaps_i, double t);

// M(t) alone (traceless under the unit-trace mode normalization).
CMatrix long_time_m(const LiouvillianSpectrum& spec, const OverlapSet& overlaps_i, double t);

} // namespace qmpe
