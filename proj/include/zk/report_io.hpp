#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "zk/experiments.hpp"
#include "zk/functionals.hpp"

namespace zk {

// Column order: t, l2, h1, h2, w1, w2, expk, flux, sup2, sup2_bound, tail
inline constexpr const char* kEnergyCsvHeader = "t,l2,h1,h2,w1,w2,expk,flux,sup2,sup2_bound,tail";

std::string energy_csv_row(const EnergyReport& r);
void write_energy_csv(std::ostream& out, std::span<const EnergyReport> reports);

nlohmann::json to_json(const EnergyReport& r);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const DecayFit& f, bool include_series = false);
nlohmann::json to_json(const InequalitySummary& s);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace zk
