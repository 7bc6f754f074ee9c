#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wlgnn/graph.hpp"
#include "wlgnn/wl.hpp"

namespace wlgnn {

enum class SuiteStatus { Pass, Fail, Skipped };
std::string status_name(SuiteStatus s);

/// A property suite run. Zero n or trials select the suite's defaults.
/// Everything is a function of (id, n, trials, seed).
struct SuiteSpec {
  std::string id;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::size_t budget = default_tuple_budget();
  /// Deliberately corrupt the computation (supported by compile-exact only)
  /// to check that failures are caught and reported.
  bool inject_fault = false;
  /// Where counterexample graphs are written; nothing is written when unset.
  std::optional<std::filesystem::path> dump_dir;
};

struct PropertyResult {
  std::string name;
  std::string claim;
  std::size_t checked = 0;
  std::size_t violations = 0;
};

struct Counterexample {
  std::string property;
  std::string description;
  std::vector<Graph> graphs;
  std::vector<std::string> files;
};

struct SuiteReport {
  std::string id;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  SuiteStatus status = SuiteStatus::Pass;
  std::string skip_reason;
  std::vector<PropertyResult> properties;
  std::vector<Counterexample> counterexamples;  // at most a few per property
  /// Command line that reruns this suite with the same parameters.
  std::string repro;
  double seconds = 0.0;
};

struct SuiteInfo {
  std::string id;
  std::string summary;
  std::size_t default_n;
  std::size_t default_trials;
};

const std::vector<SuiteInfo>& suite_catalogue();

/// Every property the default suites must check, with its owning suite.
struct ManifestEntry {
  std::string property;
  std::string suite;
};
const std::vector<ManifestEntry>& property_manifest();

/// Throws std::invalid_argument for an unknown id or unsupported fault injection.
SuiteReport run_suite(const SuiteSpec& spec);
/// Runs suites on a thread pool; reports come back in input order.
std::vector<SuiteReport> run_suites(const std::vector<SuiteSpec>& specs);

}  // namespace wlgnn
