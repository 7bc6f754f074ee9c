#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wlgnn/suites.hpp"

namespace wlgnn {

enum class ReportFormat { Text, Json };

/// "text" or "json"; anything else throws std::invalid_argument.
ReportFormat parse_report_format(const std::string& name);

/// Fields appear in a fixed order. Timings are left out unless requested, so
/// two runs with the same seed produce identical bytes.
std::string emit_report(const std::vector<SuiteReport>& reports, ReportFormat format,
                        bool include_timings = false);
void write_report(const std::vector<SuiteReport>& reports, ReportFormat format,
                  const std::filesystem::path& path, bool include_timings = false);

/// True when no suite failed (skipped suites do not count as passing either).
bool all_passed(const std::vector<SuiteReport>& reports);

}  // namespace wlgnn
