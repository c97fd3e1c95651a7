#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "leafplan/planimetry.hpp"

namespace leafplan {

/// Round to four decimal places, the precision the reports carry for
/// percentages.
double round4(double value);

/// Report schema, key order fixed:
/// { "input", "width", "height", "wp", "wp1", "tp", "damage_percent",
///   "paper_error_percent", "grid": {"cell_px","covered_cells","area_px"},
///   "kmeans": {"k","seed","restarts","inertia","iterations"},
///   "flags": [...], "scale_mm2_per_px", "area_mm2" }
/// damage_percent (and its paper_error_percent mirror) are stored rounded to
/// four decimals; "area_mm2" is null without a scale, otherwise an object
/// with "leaf", "affected", "unaffected" areas.
nlohmann::ordered_json report_to_json(const std::string& input,
                                      std::size_t width, std::size_t height,
                                      const AnalysisResult& result,
                                      const PipelineConfig& cfg);

/// { "input", "error": { "stage", "message" } }
nlohmann::ordered_json error_to_json(const std::string& input,
                                     const std::string& stage,
                                     const std::string& message);

/// Serialized with two-space indentation and a trailing newline.
std::string json_to_string(const nlohmann::ordered_json& j);

} // namespace leafplan
