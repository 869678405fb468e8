#pragma once

#include "qmpe/runconfig.hpp"

namespace qmpe {

// Exit-code contract: 0 success, 1 verification failure, 2 config error,
// 3 runtime numerical error. Every command writes deterministic data files
// (17-digit decimals, no timestamps) plus a <out>.meta.json sidecar with the
// resolved configuration.

// Per-a rows of the L0 spectrum: a, Re/Im of every mu_j, defective flag.
int cmd_spectrum(const RunConfig& cfg);

// Trajectory columns: t, D_I, D_II, delta_D for the chosen quantifier.
int cmd_evolve(const RunConfig& cfg);

// Intersection-count grid plus boundary diagnostics over (a, gamma1).
int cmd_scan(const RunConfig& cfg);

// Tensor-power initial states, n_qubits in {2,3,4}; same format as evolve.
int cmd_multiqubit(const RunConfig& cfg);

// Module invariant suites; exit 1 on any failure.
int cmd_verify(const RunConfig& cfg);

} // namespace qmpe
