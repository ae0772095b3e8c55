#include "zk/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "zk/error.hpp"

namespace zk {

namespace {

using nlohmann::json;

void append(std::string& s, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!s.empty()) s += ',';
    s += buf;
}

// JSON has no inf/nan; encode them as strings.
json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string energy_csv_row(const EnergyReport& r) {
    std::string s;
    for (double v : {r.t, r.l2, r.h1, r.h2, r.w1, r.w2, r.expk, r.flux, r.sup2, r.sup2_bound, r.tail}) append(s, v);
    return s;
}

void write_energy_csv(std::ostream& out, std::span<const EnergyReport> reports) {
    out << kEnergyCsvHeader << '\n';
    for (const EnergyReport& r : reports) out << energy_csv_row(r) << '\n';
}

json to_json(const EnergyReport& r) {
    return {{"t", num(r.t)},       {"l2", num(r.l2)},     {"h1", num(r.h1)},     {"h2", num(r.h2)},
            {"w1", num(r.w1)},     {"w2", num(r.w2)},     {"expk", num(r.expk)}, {"flux", num(r.flux)},
            {"sup2", num(r.sup2)}, {"sup2_bound", num(r.sup2_bound)},             {"tail", num(r.tail)}};
}

json to_json(const ConditionReport& r) {
    json gates = json::array();
    for (const Gate& g : r.gates) gates.push_back({{"name", g.name}, {"value", num(g.value)}, {"threshold", num(g.threshold)}, {"passed", g.passed}});
    return {{"u0_l2", num(r.u0_l2)},
            {"threshold_32", num(r.threshold_32)},
            {"J", num(r.J)},
            {"K0", num(r.K0)},
            {"K_threshold", num(r.K_threshold)},
            {"Cs2", num(r.Cs2)},
            {"k", num(r.k)},
            {"k_cap", num(r.k_cap)},
            {"Cs2_threshold", num(r.Cs2_threshold)},
            {"J_exp", num(r.J_exp)},
            {"gates", gates},
            {"pass", r.pass}};
}

json to_json(const DecayFit& f, bool include_series) {
    json j = {{"fitted_rate", num(f.fitted_rate)},
              {"r_squared", num(f.r_squared)},
              {"theoretical_rate", num(f.theoretical_rate)},
              {"window", f.window}};
    if (include_series) {
        json s = json::array();
        for (const auto& [t, v] : f.series) s.push_back({num(t), num(v)});
        j["series"] = s;
    }
    return j;
}

json to_json(const InequalitySummary& s) {
    return {{"trials", s.trials},
            {"worst_steklov_margin", num(s.worst_steklov)},
            {"worst_l4_relative_margin", num(s.worst_l4)},
            {"worst_l8_relative_margin", num(s.worst_l8)},
            {"worst_sup_margin", num(s.worst_sup)},
            {"failures", s.failures},
            {"pass", s.pass()}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace zk
