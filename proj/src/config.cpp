#include "hartmann/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hartmann {

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const std::string& key, T def, const std::string& path) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key, "wrong type");
    }
}

OuterFlowTerm parse_term(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "term must be an object");
    OuterFlowTerm t;
    t.amp = get_or<double>(j, "amp", 1.0, path);
    t.k = get_or<int>(j, "k", 0, path);
    if (t.k < 0) throw ConfigError(path + ".k", "wavenumber must be >= 0");
    const std::string trig = get_or<std::string>(j, "trig", "cos", path);
    if (trig == "sin")
        t.is_sin = true;
    else if (trig == "cos")
        t.is_sin = false;
    else
        throw ConfigError(path + ".trig", "must be 'cos' or 'sin'");
    const std::string mode = get_or<std::string>(j, "t_mode", "const", path);
    if (mode == "const") {
        t.mode = OuterFlowTerm::TMode::Const;
    } else if (mode == "exp") {
        t.mode = OuterFlowTerm::TMode::Exp;
        t.rate = get_or<double>(j, "rate", 1.0, path);
    } else if (mode == "poly") {
        t.mode = OuterFlowTerm::TMode::Poly;
        t.power = get_or<int>(j, "power", 1, path);
        if (t.power < 0) throw ConfigError(path + ".power", "power must be >= 0");
    } else {
        throw ConfigError(path + ".t_mode", "must be 'const', 'exp' or 'poly'");
    }
    return t;
}

std::vector<OuterFlowTerm> parse_terms(const json& j, const std::string& path,
                                       std::vector<OuterFlowTerm> def) {
    if (j.is_null()) return def;
    if (!j.is_array()) throw ConfigError(path, "must be an array of terms");
    std::vector<OuterFlowTerm> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_term(j[i], path + "[" + std::to_string(i) + "]"));
    if (out.empty()) throw ConfigError(path, "needs at least one term");
    return out;
}

} // namespace

std::shared_ptr<OuterFlow> RunConfig::make_outer() const {
    return std::make_shared<OuterFlow>(u_terms, b_terms, params.s + 2, params.s / 2 + 1);
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");

    RunConfig cfg;
    const json jg = j.value("grid", json::object());
    cfg.grid.nx = get_or<int>(jg, "nx", 64, "grid");
    cfg.grid.ny = get_or<int>(jg, "ny", 128, "grid");
    cfg.grid.y_max = get_or<double>(jg, "y_max", 30.0, "grid");
    cfg.grid.validate();

    const json jp = j.value("params", json::object());
    cfg.params.s = get_or<int>(jp, "s", 4, "params");
    cfg.params.gamma = get_or<double>(jp, "gamma", 1.0, "params");
    cfg.params.sigma = get_or<double>(jp, "sigma", 2.5, "params");
    cfg.params.delta = get_or<double>(jp, "delta", 0.1, "params");
    cfg.params.eps = get_or<double>(jp, "eps", 0.1, "params");
    cfg.params.dt = get_or<double>(jp, "dt", 0.002, "params");
    cfg.params.cfl = get_or<double>(jp, "cfl", 0.5, "params");
    cfg.params.t_end = get_or<double>(jp, "t_end", 0.1, "params");
    cfg.params.c_P = get_or<double>(jp, "c_P", 1.0, "params");
    cfg.params.c_s = get_or<double>(jp, "c_s", 1.0, "params");
    cfg.params.validate();

    const json jf = j.value("outer_flow", json::object());
    OuterFlowTerm unit; // U == 1
    cfg.u_terms = parse_terms(jf.value("u", json()), "outer_flow.u", {unit});
    cfg.b_terms = parse_terms(jf.value("b", json()), "outer_flow.b", {unit});

    const std::string sc = get_or<std::string>(j, "scenario", "run", "<root>");
    if (sc == "run")
        cfg.scenario = Scenario::Run;
    else if (sc == "check")
        cfg.scenario = Scenario::Check;
    else if (sc == "sweep")
        cfg.scenario = Scenario::Sweep;
    else if (sc == "perturb")
        cfg.scenario = Scenario::Perturb;
    else
        throw ConfigError("scenario", "must be run|check|sweep|perturb");

    cfg.eps_list = get_or<std::vector<double>>(j, "eps_list",
                                               std::vector<double>{0.2, 0.1, 0.05}, "<root>");
    for (double e : cfg.eps_list)
        if (e < 0.0) throw ConfigError("eps_list", "entries must be >= 0");
    cfg.perturb_amplitude = get_or<double>(j, "perturb_amplitude", 0.01, "<root>");
    cfg.record_every = get_or<int>(j, "record_every", 1, "<root>");
    if (cfg.record_every < 1) throw ConfigError("record_every", "must be >= 1");
    cfg.seed = get_or<unsigned long long>(j, "seed", 20240518ULL, "<root>");
    cfg.hardy_lambdas = get_or<std::vector<double>>(j, "hardy_lambdas",
                                                    cfg.hardy_lambdas, "<root>");
    cfg.hardy_lambdas_trace = get_or<std::vector<double>>(j, "hardy_lambdas_trace",
                                                          cfg.hardy_lambdas_trace, "<root>");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Run: return "run";
        case Scenario::Check: return "check";
        case Scenario::Sweep: return "sweep";
        case Scenario::Perturb: return "perturb";
    }
    return "unknown";
}

} // namespace hartmann
