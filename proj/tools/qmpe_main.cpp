#include <CLI11.hpp>
#include <iostream>

#include "qmpe/commands.hpp"
#include "qmpe/errors.hpp"

namespace {

struct Cli {
    std::string config_path;
    qmpe::RunConfig cfg;

    // flag mirrors; only applied when the user passed them
    double a = 0, gamma1 = 0, gamma2 = 0;
    int n_qubits = 0, samples = 0, jobs = 0;
    double t_max = 0;
    std::string quantifier, out, boundary_out;
    double a_min = 0, a_max = 0, g1_min = 0, g1_max = 0;
    int a_steps = 0, g1_steps = 0;
    bool allow_any = false;
};

void add_common(CLI::App* sub, Cli& cli) {
    sub->add_option("--config", cli.config_path, "JSON run configuration");
    sub->add_option("--a", cli.a, "non-Hermiticity strength");
    sub->add_option("--gamma1", cli.gamma1, "gain rate");
    sub->add_option("--gamma2", cli.gamma2, "decay rate");
    sub->add_option("--n-qubits", cli.n_qubits, "qubit count");
    sub->add_option("--quantifier", cli.quantifier, "trace | frobenius | relative_entropy");
    sub->add_option("--out", cli.out, "output data file");
    sub->add_option("--boundary-out", cli.boundary_out, "boundary diagnostics file (scan)");
    sub->add_option("--samples", cli.samples, "time-grid samples");
    sub->add_option("--t-max", cli.t_max, "time window end (0 = auto)");
    sub->add_option("--jobs", cli.jobs, "worker threads for grids (default QMPE_JOBS or 1)");
    sub->add_option("--a-min", cli.a_min, "a axis start");
    sub->add_option("--a-max", cli.a_max, "a axis end");
    sub->add_option("--a-steps", cli.a_steps, "a axis points");
    sub->add_option("--g1-min", cli.g1_min, "gamma1 axis start");
    sub->add_option("--g1-max", cli.g1_max, "gamma1 axis end");
    sub->add_option("--g1-steps", cli.g1_steps, "gamma1 axis points");
    sub->add_flag("--allow-any-initial-state", cli.allow_any,
                  "skip the C2 = 0 initial-state class check");
}

void apply_overrides(const CLI::App* sub, Cli& cli) {
    if (!cli.config_path.empty()) cli.cfg = qmpe::load_config(cli.config_path);
    auto passed = [&](const std::string& name) { return sub->count(name) > 0; };
    if (passed("--a")) cli.cfg.params.a = cli.a;
    if (passed("--gamma1")) cli.cfg.params.gamma1 = cli.gamma1;
    if (passed("--gamma2")) cli.cfg.params.gamma2 = cli.gamma2;
    if (passed("--n-qubits")) cli.cfg.params.n_qubits = cli.n_qubits;
    if (passed("--quantifier")) cli.cfg.quantifier = qmpe::quantifier_from_string(cli.quantifier);
    if (passed("--out")) cli.cfg.out_path = cli.out;
    if (passed("--boundary-out")) cli.cfg.boundary_path = cli.boundary_out;
    if (passed("--samples")) cli.cfg.crossing.samples = cli.samples;
    if (passed("--t-max")) cli.cfg.crossing.t_max = cli.t_max;
    if (passed("--jobs")) cli.cfg.jobs = cli.jobs;
    if (passed("--allow-any-initial-state")) cli.cfg.allow_any_initial_state = true;
    if (passed("--a-min") || passed("--a-max") || passed("--a-steps")) {
        qmpe::AxisSpec ax = cli.cfg.a_axis.value_or(qmpe::AxisSpec{});
        if (passed("--a-min")) ax.min = cli.a_min;
        if (passed("--a-max")) ax.max = cli.a_max;
        if (passed("--a-steps")) ax.steps = cli.a_steps;
        cli.cfg.a_axis = ax;
    }
    if (passed("--g1-min") || passed("--g1-max") || passed("--g1-steps")) {
        qmpe::AxisSpec ax = cli.cfg.g1_axis.value_or(qmpe::AxisSpec{});
        if (passed("--g1-min")) ax.min = cli.g1_min;
        if (passed("--g1-max")) ax.max = cli.g1_max;
        if (passed("--g1-steps")) ax.steps = cli.g1_steps;
        cli.cfg.g1_axis = ax;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PT-symmetric qubit relaxation and quantum Mpemba effect toolkit"};
    app.require_subcommand(1);

    Cli cli;
    CLI::App* spectrum = app.add_subcommand("spectrum", "L0 eigenvalue sweep over a");
    CLI::App* evolve = app.add_subcommand("evolve", "quantifier trajectories for two initial states");
    CLI::App* scan = app.add_subcommand("scan", "intersection counts and boundary maps over (a, gamma1)");
    CLI::App* multiqubit = app.add_subcommand("multiqubit", "tensor-power trajectories, N = 2..4");
    CLI::App* verify = app.add_subcommand("verify", "run the module invariant suites");
    for (CLI::App* sub : {spectrum, evolve, scan, multiqubit, verify}) add_common(sub, cli);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        apply_overrides(sub, cli);
        if (sub == spectrum) return qmpe::cmd_spectrum(cli.cfg);
        if (sub == evolve) return qmpe::cmd_evolve(cli.cfg);
        if (sub == scan) return qmpe::cmd_scan(cli.cfg);
        if (sub == multiqubit) return qmpe::cmd_multiqubit(cli.cfg);
        if (sub == verify) return qmpe::cmd_verify(cli.cfg);
    } catch (const qmpe::ConfigError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return 2;
    } catch (const qmpe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
