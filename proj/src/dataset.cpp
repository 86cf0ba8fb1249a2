#include "mlz/dataset.hpp"

#include <algorithm>
#include <fmt/format.h>
#include "json.hpp"
#include <stdexcept>

namespace mlz::cli {

std::size_t Dataset::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range(fmt::format("no column '{}'", name));
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<std::pair<std::string, std::string>> dataset_meta(const ScenarioConfig& config) {
    std::vector<std::pair<std::string, std::string>> meta;
    for (const auto& [key, value] : to_key_values(config)) meta.emplace_back(key, value);
    meta.emplace_back("engine_version", fmt::format("\"{}\"", engine_version));
    return meta;
}

std::string to_csv(const Dataset& data) {
    std::string out;
    for (const auto& [key, value] : data.meta) out += fmt::format("# {} = {}\n", key, value);
    out += fmt::format("{}\n", fmt::join(data.columns, ","));
    for (const auto& row : data.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out += format_number(row[k]);
            out.push_back(k + 1 < row.size() ? ',' : '\n');
        }
    }
    return out;
}

std::string to_json(const Dataset& data) {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : data.meta) {
        // JSON has its own string quoting; drop the config-file quotes.
        doc["meta"][key] = unquote(value);
    }
    doc["columns"] = data.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : data.rows) doc["rows"].push_back(row);
    return doc.dump(1) + "\n";
}

std::string serialize(const Dataset& data, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(data) : to_json(data);
}

}  // namespace mlz::cli
