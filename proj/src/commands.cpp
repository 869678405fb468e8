#include "qmpe/commands.hpp"

#include <fstream>
#include <iostream>

#include "qmpe/boundary.hpp"
#include "qmpe/errors.hpp"
#include "qmpe/verify.hpp"

namespace qmpe {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

void write_meta(const RunConfig& cfg, const std::string& command) {
    std::ofstream meta(cfg.out_path + ".meta.json");
    if (!meta) throw ConfigError("cannot open sidecar " + cfg.out_path + ".meta.json");
    meta << "{\n  \"command\": \"" << command << "\",\n  \"simd_backend\": \""
         << kern::active().name << "\",\n  \"config\": " << config_to_json(cfg) << "\n}\n";
}

std::vector<double> sample_times(const RunConfig& cfg, const LiouvillianSpectrum& spec) {
    double t_max = cfg.crossing.t_max;
    if (!(t_max > cfg.crossing.t_min)) {
        const double gap = (spec.eigenvalues[0] - spec.eigenvalues[2]).real();
        t_max = cfg.crossing.t_min + 15.0 / std::max(std::abs(gap), 1e-6);
    }
    std::vector<double> ts(cfg.crossing.samples);
    for (int k = 0; k < cfg.crossing.samples; ++k)
        ts[k] = cfg.crossing.t_min + (t_max - cfg.crossing.t_min) * k / (cfg.crossing.samples - 1);
    return ts;
}

int run_evolve(const RunConfig& cfg, const char* command) {
    cfg.validate();
    LiouvillianSpectrum spec = analyze(build_liouvillian(cfg.params));
    CMatrix rho_i = cfg.initial_state(false);
    CMatrix rho_ii = cfg.initial_state(true);

    auto d_i = make_distance_evaluator(spec, rho_i, cfg.quantifier);
    auto d_ii = make_distance_evaluator(spec, rho_ii, cfg.quantifier);
    std::vector<double> ts = sample_times(cfg, spec);

    std::ofstream out = open_out(cfg.out_path);
    out << "t,D_I,D_II,delta_D\n";
    for (double t : ts) {
        const double a = d_i(t), b = d_ii(t);
        out << format_full(t) << ',' << format_full(a) << ',' << format_full(b) << ','
            << format_full(a - b) << '\n';
    }
    write_meta(cfg, command);
    return 0;
}

} // namespace

int cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    AxisSpec axis = cfg.a_axis.value_or(AxisSpec{0.0, 2.0, 201});
    const std::size_t nmodes = std::size_t{1} << (2 * cfg.params.n_qubits);

    std::ofstream out = open_out(cfg.out_path);
    out << "a";
    for (std::size_t j = 1; j <= nmodes; ++j) out << ",re_mu" << j;
    for (std::size_t j = 1; j <= nmodes; ++j) out << ",im_mu" << j;
    out << ",defective\n";
    for (double a : axis.values()) {
        ModelParams p = cfg.params;
        p.a = a;
        LiouvillianSpectrum spec = analyze(build_liouvillian(p));
        out << format_full(a);
        for (cd mu : spec.eigenvalues) out << ',' << format_full(mu.real());
        for (cd mu : spec.eigenvalues) out << ',' << format_full(mu.imag());
        out << ',' << (spec.defective ? 1 : 0) << '\n';
    }
    write_meta(cfg, "spectrum");
    return 0;
}

int cmd_evolve(const RunConfig& cfg) { return run_evolve(cfg, "evolve"); }

int cmd_multiqubit(const RunConfig& cfg) {
    if (cfg.params.n_qubits < 2 || cfg.params.n_qubits > 4)
        throw ConfigError("multiqubit: n_qubits must be 2, 3 or 4");
    return run_evolve(cfg, "multiqubit");
}

int cmd_scan(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.a_axis || !cfg.g1_axis) throw ConfigError("scan: grid axes for a and gamma1 required");
    const std::vector<double> avs = cfg.a_axis->values();
    const std::vector<double> gvs = cfg.g1_axis->values();
    CMatrix rho_i = cfg.initial_state(false);
    CMatrix rho_ii = cfg.initial_state(true);
    const int jobs = cfg.effective_jobs();

    GridScan grid = scan_grid(avs, gvs, cfg.params, rho_i, rho_ii, cfg.quantifier, cfg.crossing,
                              jobs);
    RegionMap regions = classify_regions(avs, gvs, cfg.params, rho_i, rho_ii,
                                         cfg.quantifier == QuantifierKind::relative_entropy, jobs);

    std::ofstream out = open_out(cfg.out_path);
    out << "a,gamma1,count,first_tau,status\n";
    std::size_t ok = 0;
    for (const GridCell& cell : grid.cells) {
        out << format_full(cell.a) << ',' << format_full(cell.gamma1) << ',' << cell.report.count
            << ','
            << (cell.report.crossing_times.empty() ? "nan"
                                                   : format_full(cell.report.crossing_times[0]))
            << ',' << cell.status << '\n';
        if (cell.status == "ok") ++ok;
    }

    std::string bpath = cfg.boundary_path;
    if (bpath.empty()) bpath = cfg.out_path + ".boundary.csv";
    std::ofstream bout = open_out(bpath);
    bout << "a,gamma1,abs_x_plus,abs_x_minus,eq10_ok,eq11_plus_ok,eq11_minus_ok\n";
    for (const RegionCell& cell : regions.cells) {
        bout << format_full(cell.a) << ',' << format_full(cell.gamma1) << ','
             << format_full(cell.abs_x_plus) << ',' << format_full(cell.abs_x_minus) << ','
             << (cell.eq10 ? 1 : 0) << ',' << (cell.eq11_plus ? 1 : 0) << ','
             << (cell.eq11_minus ? 1 : 0) << '\n';
    }
    write_meta(cfg, "scan");

    const double frac = grid.cells.empty() ? 0.0 : static_cast<double>(ok) / grid.cells.size();
    if (frac < 0.9) {
        std::cerr << "scan: only " << ok << "/" << grid.cells.size() << " cells succeeded\n";
        return 3;
    }
    return 0;
}

int cmd_verify(const RunConfig&) {
    std::vector<CheckResult> results = run_verification(12345u, &std::cout);
    std::size_t passed = 0;
    for (const CheckResult& r : results) passed += r.pass ? 1 : 0;
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return all_passed(results) ? 0 : 1;
}

} // namespace qmpe
