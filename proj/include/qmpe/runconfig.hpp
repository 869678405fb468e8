#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qmpe/mpemba.hpp"

namespace qmpe {

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
    std::vector<double> values() const;
};

// One run description: JSON document on disk, individual fields overridable
// from the command line. Initial states are per-qubit Bloch triples; a single
// triple is reused for every qubit (tensor power).
struct RunConfig {
    ModelParams params;
    std::vector<std::array<double, 3>> bloch_i{{0.0, 0.0, 1.0}};
    std::vector<std::array<double, 3>> bloch_ii{{0.0, 0.0, 0.0}};
    QuantifierKind quantifier = QuantifierKind::trace;
    CrossingConfig crossing;
    std::optional<AxisSpec> a_axis;
    std::optional<AxisSpec> g1_axis;
    std::string out_path = "out.csv";
    std::string boundary_path; // scan only; defaults to <out stem>.boundary.csv
    int jobs = 0;              // 0: QMPE_JOBS env or 1
    bool allow_any_initial_state = false;

    CMatrix initial_state(bool second) const;
    int effective_jobs() const;
    void validate() const;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

// Round-trip-safe decimal formatting (17 significant digits).
std::string format_full(double v);

} // namespace qmpe
