#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "collrates/aggregate.hpp"
#include "collrates/compare.hpp"
#include "collrates/config.hpp"
#include "collrates/ratecalc.hpp"
#include "collrates/states.hpp"
#include "collrates/xsec.hpp"

// Line-oriented text formats with '#' comments. Every file starts with
// `# format: <name> v1`; loaders reject other names or versions. Floats are
// written as scientific notation with 8 significant digits. Parse errors
// carry the file name and line number.

namespace collrates {

LevelList load_levels(const std::filesystem::path& path);
void save_levels(const std::filesystem::path& path, const LevelList& levels);
void save_levels(std::ostream& os, const LevelList& levels);

CrossSectionTable load_xsec(const std::filesystem::path& path, const LevelList& target,
                            const LevelList& projectile);
void save_xsec(const std::filesystem::path& path, const CrossSectionTable& table);
void save_xsec(std::ostream& os, const CrossSectionTable& table);

RateTable load_rates(const std::filesystem::path& path);
void save_rates(const std::filesystem::path& path, const RateTable& table);
void save_rates(std::ostream& os, const RateTable& table);

EffectiveRateTable load_effective(const std::filesystem::path& path);
void save_effective(const std::filesystem::path& path, const EffectiveRateTable& table);
void save_effective(std::ostream& os, const EffectiveRateTable& table);

ThermalRateTable load_thermal(const std::filesystem::path& path);
void save_thermal(const std::filesystem::path& path, const ThermalRateTable& table);
void save_thermal(std::ostream& os, const ThermalRateTable& table);

std::map<int, double> load_weights(const std::filesystem::path& path);
void save_weights(const std::filesystem::path& path, const std::map<int, double>& weights);

StateMap load_statemap(const std::filesystem::path& path);
void save_statemap(const std::filesystem::path& path, const StateMap& map);

PipelineConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const PipelineConfig& cfg);

void save_smoothness(const std::filesystem::path& path,
                     const std::vector<SmoothnessRecord>& records);

// 8-significant-digit scientific form used by every writer.
std::string format_float(double value);

}  // namespace collrates
