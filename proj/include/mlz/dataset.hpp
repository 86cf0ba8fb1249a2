#pragma once

#include "mlz/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mlz::cli {

inline constexpr std::string_view engine_version = "mlz 1.0.0";

struct Dataset {
    std::vector<std::pair<std::string, std::string>> meta;  // key, raw value text
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const;  // throws std::out_of_range
};

// Metadata block: the fully resolved config in key = value form plus the engine version.
std::vector<std::pair<std::string, std::string>> dataset_meta(const ScenarioConfig& config);

// '#'-prefixed `key = value` metadata lines, then the header row, then data rows with
// 17 significant digits. Stripping the leading "# " from the metadata lines yields a
// config file that resolves to the same ScenarioConfig.
std::string to_csv(const Dataset& data);

// {"meta": {...}, "columns": [...], "rows": [[...], ...]}
std::string to_json(const Dataset& data);

std::string serialize(const Dataset& data, OutputFormat format);

}  // namespace mlz::cli
