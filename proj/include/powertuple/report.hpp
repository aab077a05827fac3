#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include <powertuple/elimination.hpp>

namespace powertuple {

enum class ReportFormat { json, csv, text };

/// Big integers are written as decimal strings. "timestamp" is omitted when empty.
nlohmann::json to_json(const ReplayReport& report);
/// Throws std::invalid_argument on schema violations.
ReplayReport report_from_json(const nlohmann::json& j);

std::string render(const ReplayReport& report, ReportFormat format);

/// The rendered report with any timestamp removed, for determinism checks.
std::string render_without_timestamp(ReplayReport report, ReportFormat format);

} // namespace powertuple
