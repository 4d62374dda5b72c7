#include "breather/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace breather {

using nlohmann::json;

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::nonreciprocal: return "nonreciprocal";
        case ModelKind::hermitian: return "hermitian";
        case ModelKind::creutz: return "creutz";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "nonreciprocal") return ModelKind::nonreciprocal;
    if (name == "hermitian") return ModelKind::hermitian;
    if (name == "creutz") return ModelKind::creutz;
    throw ConfigError("model: unknown value '" + name +
                      "' (expected nonreciprocal, hermitian or creutz)");
}

double SweepSpec::value_at(int i) const {
    if (count == 1) return min;
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    if (log_spacing) return min * std::pow(max / min, f);
    return min + f * (max - min);
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> kinds = {"trajectory", "averages", "period",
                                                   "heatmap",    "spectrum", "defect"};
    return kinds;
}

namespace {

const std::set<std::string> kSweepParameters = {"i_in", "gamma0", "gammas",
                                                "kappa", "nu",     "i_sat"};

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path + ": expected a string");
    return j.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& prefix) {
    for (const auto& item : obj.items())
        if (!known.contains(item.key()))
            throw ConfigError("unknown key: " + prefix + item.key());
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("malformed JSON: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");

    static const std::set<std::string> known = {
        "name",   "model",  "n_cells", "kappa",   "nu",      "gamma0",
        "gammas", "i_sat",  "i_in",    "t_final", "dt",      "stride",
        "window", "sweep",  "outputs", "profile", "store_amplitudes"};
    reject_unknown(root, known, "");

    for (const char* key : {"model", "n_cells", "kappa", "nu", "gamma0", "gammas", "i_in"})
        if (!root.contains(key)) throw ConfigError(std::string("missing required key: ") + key);

    ExperimentConfig cfg;
    if (root.contains("name")) cfg.name = require_string(root["name"], "name");
    cfg.model = model_kind_from_string(require_string(root["model"], "model"));
    cfg.params.n_cells = require_int(root["n_cells"], "n_cells");
    cfg.params.kappa = require_number(root["kappa"], "kappa");
    cfg.params.nu = require_number(root["nu"], "nu");
    cfg.params.gamma0 = require_number(root["gamma0"], "gamma0");
    cfg.params.gammas = require_number(root["gammas"], "gammas");
    cfg.params.i_sat = root.contains("i_sat") ? require_number(root["i_sat"], "i_sat") : 1.0;
    cfg.i_in = require_number(root["i_in"], "i_in");

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    if (!(cfg.i_in >= 0.0)) throw ConfigError("i_in: must be >= 0");

    const double nu = cfg.params.nu;
    cfg.t_final = root.contains("t_final") ? require_number(root["t_final"], "t_final") : 100.0 / nu;
    cfg.dt = root.contains("dt") ? require_number(root["dt"], "dt") : 1e-3 / nu;
    if (!(cfg.dt > 0.0)) throw ConfigError("dt: must be > 0");
    if (!(cfg.t_final >= cfg.dt)) throw ConfigError("t_final: must be >= dt");

    if (root.contains("stride")) {
        cfg.stride = require_int(root["stride"], "stride");
        if (cfg.stride < 1) throw ConfigError("stride: must be >= 1");
    } else {
        const long n_steps = static_cast<long>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
        cfg.stride = std::max(1L, n_steps / 2000);
    }

    if (root.contains("window")) {
        const auto& w = root["window"];
        if (!w.is_array() || w.size() != 2)
            throw ConfigError("window: expected [t_start, t_end]");
        cfg.window_start = require_number(w[0], "window[0]");
        cfg.window_end = require_number(w[1], "window[1]");
    } else {
        cfg.window_start = 50.0 / nu;
        cfg.window_end = 100.0 / nu;
    }
    if (!(cfg.window_start < cfg.window_end))
        throw ConfigError("window: requires t_start < t_end");
    cfg.window_end = std::min(cfg.window_end, cfg.t_final);
    if (!(cfg.window_start < cfg.window_end))
        throw ConfigError("window: lies outside the simulated time range");

    if (root.contains("sweep")) {
        const auto& s = root["sweep"];
        if (!s.is_object()) throw ConfigError("sweep: expected an object");
        reject_unknown(s, {"parameter", "min", "max", "count", "spacing"}, "sweep.");
        for (const char* key : {"parameter", "min", "max", "count"})
            if (!s.contains(key))
                throw ConfigError(std::string("missing required key: sweep.") + key);
        SweepSpec spec;
        spec.parameter = require_string(s["parameter"], "sweep.parameter");
        if (!kSweepParameters.contains(spec.parameter))
            throw ConfigError("sweep.parameter: unrecognized parameter '" + spec.parameter + "'");
        spec.min = require_number(s["min"], "sweep.min");
        spec.max = require_number(s["max"], "sweep.max");
        spec.count = require_int(s["count"], "sweep.count");
        if (spec.count < 2) throw ConfigError("sweep.count: must be >= 2");
        if (!(spec.min <= spec.max)) throw ConfigError("sweep: requires min <= max");
        if (s.contains("spacing")) {
            const std::string spacing = require_string(s["spacing"], "sweep.spacing");
            if (spacing == "log")
                spec.log_spacing = true;
            else if (spacing == "linear")
                spec.log_spacing = false;
            else
                throw ConfigError("sweep.spacing: expected 'log' or 'linear'");
        }
        if (spec.log_spacing && !(spec.min > 0.0))
            throw ConfigError("sweep.min: log spacing requires min > 0");
        cfg.sweep = spec;
    }

    if (root.contains("outputs")) {
        const auto& outs = root["outputs"];
        if (!outs.is_array()) throw ConfigError("outputs: expected an array");
        const auto& kinds = known_outputs();
        for (const auto& o : outs) {
            const std::string kind = require_string(o, "outputs[]");
            if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
                throw ConfigError("outputs: unknown output kind '" + kind + "'");
            cfg.outputs.push_back(kind);
        }
    }

    if (root.contains("profile")) {
        const auto& prof = root["profile"];
        if (!prof.is_array()) throw ConfigError("profile: expected an array of gamma values");
        for (const auto& v : prof) cfg.profile.push_back(require_number(v, "profile[]"));
        if (static_cast<int>(cfg.profile.size()) > cfg.params.n_cells)
            throw ConfigError("profile: longer than n_cells");
        for (double g : cfg.profile)
            if (!(g >= 0.0 && g < cfg.params.kappa))
                throw ConfigError("profile: values must lie in [0, kappa)");
    }

    if (root.contains("store_amplitudes")) {
        if (!root["store_amplitudes"].is_boolean())
            throw ConfigError("store_amplitudes: expected a boolean");
        cfg.store_amplitudes = root["store_amplitudes"].get<bool>();
    }
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json root;
    root["name"] = cfg.name;
    root["model"] = to_string(cfg.model);
    root["n_cells"] = cfg.params.n_cells;
    root["kappa"] = cfg.params.kappa;
    root["nu"] = cfg.params.nu;
    root["gamma0"] = cfg.params.gamma0;
    root["gammas"] = cfg.params.gammas;
    root["i_sat"] = cfg.params.i_sat;
    root["i_in"] = cfg.i_in;
    root["t_final"] = cfg.t_final;
    root["dt"] = cfg.dt;
    root["stride"] = cfg.stride;
    root["window"] = {cfg.window_start, cfg.window_end};
    if (cfg.sweep) {
        root["sweep"] = {{"parameter", cfg.sweep->parameter},
                         {"min", cfg.sweep->min},
                         {"max", cfg.sweep->max},
                         {"count", cfg.sweep->count},
                         {"spacing", cfg.sweep->log_spacing ? "log" : "linear"}};
    }
    if (!cfg.outputs.empty()) root["outputs"] = cfg.outputs;
    if (!cfg.profile.empty()) root["profile"] = cfg.profile;
    if (cfg.store_amplitudes) root["store_amplitudes"] = true;
    return root.dump(2);
}

}  // namespace breather
