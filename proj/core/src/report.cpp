#include "wlgnn/report.hpp"

#include <fstream>
#include <iomanip>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace wlgnn {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format '" + name + "' (expected text or json)");
}

bool all_passed(const std::vector<SuiteReport>& reports) {
  for (const auto& r : reports)
    if (r.status != SuiteStatus::Pass) return false;
  return true;
}

namespace {

std::string emit_json(const std::vector<SuiteReport>& reports, bool timings) {
  using nlohmann::ordered_json;
  ordered_json suites = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["suite"] = r.id;
    j["status"] = status_name(r.status);
    j["n"] = r.n;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    if (r.status == SuiteStatus::Skipped) j["skipReason"] = r.skip_reason;
    ordered_json props = ordered_json::array();
    for (const auto& p : r.properties)
      props.push_back({{"name", p.name}, {"claim", p.claim}, {"checked", p.checked}, {"violations", p.violations}});
    j["properties"] = std::move(props);
    ordered_json cex = ordered_json::array();
    for (const auto& c : r.counterexamples) cex.push_back({{"property", c.property}, {"description", c.description}, {"files", c.files}});
    j["counterexamples"] = std::move(cex);
    j["repro"] = r.repro;
    if (timings) j["seconds"] = r.seconds;
    suites.push_back(std::move(j));
  }
  ordered_json root;
  root["allPassed"] = all_passed(reports);
  root["suites"] = std::move(suites);
  return root.dump(2) + "\n";
}

std::string emit_text(const std::vector<SuiteReport>& reports, bool timings) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << "suite " << r.id << ": " << status_name(r.status) << " (n=" << r.n << ", trials=" << r.trials
       << ", seed=" << r.seed << ")";
    if (timings) os << " " << std::fixed << std::setprecision(3) << r.seconds << "s";
    os << "\n";
    if (r.status == SuiteStatus::Skipped) os << "  skipped: " << r.skip_reason << "\n";
    for (const auto& p : r.properties)
      os << "  " << (p.violations ? "FAIL " : "ok   ") << p.name << ": " << p.checked << " checks, "
         << p.violations << " violations\n";
    for (const auto& c : r.counterexamples) {
      os << "  counterexample [" << c.property << "] " << c.description << "\n";
      for (const auto& f : c.files) os << "    " << f << "\n";
    }
    if (r.status != SuiteStatus::Pass) os << "  repro: " << r.repro << "\n";
  }
  os << (all_passed(reports) ? "all suites passed\n" : "some suites did not pass\n");
  return os.str();
}

}  // namespace

std::string emit_report(const std::vector<SuiteReport>& reports, ReportFormat format, bool include_timings) {
  return format == ReportFormat::Json ? emit_json(reports, include_timings) : emit_text(reports, include_timings);
}

void write_report(const std::vector<SuiteReport>& reports, ReportFormat format, const std::filesystem::path& path,
                  bool include_timings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << emit_report(reports, format, include_timings);
}

}  // namespace wlgnn
