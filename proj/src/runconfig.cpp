#include "qmpe/runconfig.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qmpe/errors.hpp"

namespace qmpe {

using nlohmann::json;

std::vector<double> AxisSpec::values() const {
    if (steps < 1) throw ConfigError("axis: steps must be >= 1");
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = min;
        return out;
    }
    for (int k = 0; k < steps; ++k) out[k] = min + (max - min) * k / (steps - 1);
    return out;
}

CMatrix RunConfig::initial_state(bool second) const {
    const auto& triples = second ? bloch_ii : bloch_i;
    if (triples.empty()) throw ConfigError("initial state: no Bloch triple given");
    if (triples.size() != 1 && static_cast<int>(triples.size()) != params.n_qubits)
        throw ConfigError("initial state: give one Bloch triple or one per qubit");
    CMatrix rho = CMatrix::identity(1);
    for (int q = 0; q < params.n_qubits; ++q) {
        const auto& r = triples[triples.size() == 1 ? 0 : q];
        rho = kron(rho, bloch_state(r[0], r[1], r[2]));
    }
    return rho;
}

int RunConfig::effective_jobs() const {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("QMPE_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

void RunConfig::validate() const {
    params.validate();
    crossing.validate();
    if (a_axis) {
        for (double a : a_axis->values()) {
            ModelParams p = params;
            p.a = a;
            p.validate();
        }
    }
    if (g1_axis) {
        for (double g1 : g1_axis->values()) {
            ModelParams p = params;
            p.gamma1 = g1;
            p.validate();
        }
    }
    for (const auto& triples : {bloch_i, bloch_ii})
        for (const auto& r : triples)
            if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] > 1.0 + 1e-12)
                throw ConfigError("initial state: Bloch vector outside the unit ball");
}

namespace {

AxisSpec axis_from(const json& j, const std::string& name) {
    AxisSpec ax;
    if (!j.contains("min") || !j.contains("max") || !j.contains("steps"))
        throw ConfigError("grid." + name + ": need min, max, steps");
    ax.min = j.at("min").get<double>();
    ax.max = j.at("max").get<double>();
    ax.steps = j.at("steps").get<int>();
    return ax;
}

std::vector<std::array<double, 3>> triples_from(const json& j, const std::string& name) {
    std::vector<std::array<double, 3>> out;
    if (!j.is_array()) throw ConfigError(name + ": expected an array");
    const bool nested = !j.empty() && j.front().is_array();
    if (nested) {
        for (const auto& e : j) {
            if (!e.is_array() || e.size() != 3) throw ConfigError(name + ": triples must be [x,y,z]");
            out.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
        }
    } else {
        if (j.size() != 3) throw ConfigError(name + ": triple must be [x,y,z]");
        out.push_back({j[0].get<double>(), j[1].get<double>(), j[2].get<double>()});
    }
    return out;
}

} // namespace

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    RunConfig cfg;
    try {
        if (j.contains("params")) {
            const json& p = j["params"];
            if (p.contains("a")) cfg.params.a = p["a"].get<double>();
            if (p.contains("gamma1")) cfg.params.gamma1 = p["gamma1"].get<double>();
            if (p.contains("gamma2")) cfg.params.gamma2 = p["gamma2"].get<double>();
            if (p.contains("n_qubits")) cfg.params.n_qubits = p["n_qubits"].get<int>();
        }
        if (j.contains("initial_state_I")) cfg.bloch_i = triples_from(j["initial_state_I"], "initial_state_I");
        if (j.contains("initial_state_II"))
            cfg.bloch_ii = triples_from(j["initial_state_II"], "initial_state_II");
        if (j.contains("quantifier")) cfg.quantifier = quantifier_from_string(j["quantifier"].get<std::string>());
        if (j.contains("crossing")) {
            const json& c = j["crossing"];
            if (c.contains("t_min")) cfg.crossing.t_min = c["t_min"].get<double>();
            if (c.contains("t_max")) cfg.crossing.t_max = c["t_max"].get<double>();
            if (c.contains("samples")) cfg.crossing.samples = c["samples"].get<int>();
            if (c.contains("refine_tol")) cfg.crossing.refine_tol = c["refine_tol"].get<double>();
            if (c.contains("amplitude_floor"))
                cfg.crossing.amplitude_floor = c["amplitude_floor"].get<double>();
        }
        if (j.contains("grid")) {
            const json& g = j["grid"];
            if (g.contains("a")) cfg.a_axis = axis_from(g["a"], "a");
            if (g.contains("gamma1")) cfg.g1_axis = axis_from(g["gamma1"], "gamma1");
        }
        if (j.contains("outputs")) {
            const json& o = j["outputs"];
            if (o.contains("data")) cfg.out_path = o["data"].get<std::string>();
            if (o.contains("boundary")) cfg.boundary_path = o["boundary"].get<std::string>();
        }
        if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
        if (j.contains("allow_any_initial_state"))
            cfg.allow_any_initial_state = j["allow_any_initial_state"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
    json j;
    j["params"] = {{"a", cfg.params.a},
                   {"gamma1", cfg.params.gamma1},
                   {"gamma2", cfg.params.gamma2},
                   {"n_qubits", cfg.params.n_qubits}};
    json bi = json::array(), bii = json::array();
    for (const auto& r : cfg.bloch_i) bi.push_back({r[0], r[1], r[2]});
    for (const auto& r : cfg.bloch_ii) bii.push_back({r[0], r[1], r[2]});
    j["initial_state_I"] = bi;
    j["initial_state_II"] = bii;
    j["quantifier"] = to_string(cfg.quantifier);
    j["crossing"] = {{"t_min", cfg.crossing.t_min},
                     {"t_max", cfg.crossing.t_max},
                     {"samples", cfg.crossing.samples},
                     {"refine_tol", cfg.crossing.refine_tol},
                     {"amplitude_floor", cfg.crossing.amplitude_floor}};
    if (cfg.a_axis)
        j["grid"]["a"] = {{"min", cfg.a_axis->min}, {"max", cfg.a_axis->max}, {"steps", cfg.a_axis->steps}};
    if (cfg.g1_axis)
        j["grid"]["gamma1"] = {{"min", cfg.g1_axis->min}, {"max", cfg.g1_axis->max}, {"steps", cfg.g1_axis->steps}};
    j["outputs"] = {{"data", cfg.out_path}};
    if (!cfg.boundary_path.empty()) j["outputs"]["boundary"] = cfg.boundary_path;
    j["jobs"] = cfg.jobs;
    j["allow_any_initial_state"] = cfg.allow_any_initial_state;
    return j.dump(2);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace qmpe
