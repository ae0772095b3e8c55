#include "zk/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "zk/error.hpp"

namespace zk {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double number(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

void positive(double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be positive and finite");
}

InitialData data_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("'initial_data' must be an object");
    reject_unknown(j, {"family", "amplitude", "l2_norm", "center", "width", "mode", "y_center", "y_width"}, "initial_data");
    InitialData d;
    if (j.contains("family")) {
        if (!j["family"].is_string()) throw ConfigError("'family' must be a string");
        d.family = j["family"].get<std::string>();
        if (d.family != "gauss_mode" && d.family != "gauss_bump") throw ConfigError("unknown initial-data family '" + d.family + "'");
    }
    if (j.contains("amplitude")) d.amplitude = number(j, "amplitude");
    if (j.contains("l2_norm")) {
        d.l2_norm = number(j, "l2_norm");
        if (*d.l2_norm < 0.0) throw ConfigError("'l2_norm' must be non-negative");
    }
    if (j.contains("center")) d.center = number(j, "center");
    if (j.contains("width")) positive(d.width = number(j, "width"), "width");
    if (j.contains("mode")) d.mode = integer(j, "mode");
    if (j.contains("y_center")) d.y_center = number(j, "y_center");
    if (j.contains("y_width")) positive(d.y_width = number(j, "y_width"), "y_width");
    if (!std::isfinite(d.amplitude)) throw ConfigError("'amplitude' must be finite");
    if (d.mode < 1) throw ConfigError("'mode' must be >= 1");
    return d;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"B", "L", "Nx", "Ny", "initial_data", "dt", "T", "k", "stride", "nonlinear", "Cs2", "cs_window", "threads", "modes"},
                   "config");
    ExperimentConfig c;
    try {
        if (j.contains("B")) positive(c.B = number(j, "B"), "B");
        if (j.contains("L")) positive(*(c.L = number(j, "L")), "L");
        if (j.contains("Nx")) c.Nx = integer(j, "Nx");
        if (j.contains("Ny")) c.Ny = integer(j, "Ny");
        if (j.contains("initial_data")) c.data = data_from_json(j["initial_data"]);
        if (j.contains("dt")) positive(*(c.dt = number(j, "dt")), "dt");
        if (j.contains("T")) positive(*(c.T = number(j, "T")), "T");
        if (j.contains("k")) positive(c.k = number(j, "k"), "k");
        if (j.contains("stride")) c.stride = integer(j, "stride");
        if (j.contains("nonlinear")) {
            if (!j["nonlinear"].is_boolean()) throw ConfigError("'nonlinear' must be a boolean");
            c.nonlinear = j["nonlinear"].get<bool>();
        }
        if (j.contains("Cs2")) {
            c.Cs2 = number(j, "Cs2");
            if (*c.Cs2 < 0.0) throw ConfigError("'Cs2' must be non-negative");
        }
        if (j.contains("cs_window")) positive(c.cs_window = number(j, "cs_window"), "cs_window");
        if (j.contains("threads")) c.threads = integer(j, "threads");
        if (j.contains("modes")) {
            if (!j["modes"].is_array()) throw ConfigError("'modes' must be an array of integers");
            for (const json& v : j["modes"]) {
                if (!v.is_number_integer()) throw ConfigError("'modes' must be an array of integers");
                c.modes.push_back(v.get<int>());
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    if (c.stride < 1) throw ConfigError("'stride' must be >= 1");
    if (c.threads < 0) throw ConfigError("'threads' must be >= 0");
    try {
        (void)c.grid();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (c.data.family == "gauss_mode" && c.data.mode > c.Ny) throw ConfigError("initial-data mode exceeds Ny");
    return c;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json config_to_json(const ExperimentConfig& c) {
    json d = {{"family", c.data.family}, {"amplitude", c.data.amplitude}, {"center", c.data.center}, {"width", c.data.width},
              {"mode", c.data.mode},     {"y_center", c.data.y_center},   {"y_width", c.data.y_width}};
    if (c.data.l2_norm) d["l2_norm"] = *c.data.l2_norm;
    json j = {{"B", c.B},         {"Nx", c.Nx},         {"Ny", c.Ny},
              {"initial_data", d}, {"k", c.k},          {"stride", c.stride},
              {"nonlinear", c.nonlinear}, {"cs_window", c.cs_window}, {"threads", c.threads}};
    if (c.L) j["L"] = *c.L;
    if (c.dt) j["dt"] = *c.dt;
    if (c.T) j["T"] = *c.T;
    if (c.Cs2) j["Cs2"] = *c.Cs2;
    if (!c.modes.empty()) j["modes"] = c.modes;
    return j;
}

}  // namespace zk
