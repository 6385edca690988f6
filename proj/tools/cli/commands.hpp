#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suites.hpp"

namespace quatcalc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariant = 1,
  kExitInput = 2,
  kExitPartition = 3,
  kExitSeparation = 4,
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;      ///< JSON report path; stdout when empty
  std::string csv_output;  ///< sweep CSV path; embedded in the report when empty
  std::string partition;   ///< "re,rad;re,rad;..."
  std::string which = "nonnormal";
  std::size_t nodes = 128;
  std::size_t n = 96;
  std::optional<std::pair<std::size_t, std::size_t>> sweep;
  std::uint64_t seed = 20261016;
  std::vector<std::size_t> sizes{3, 5, 6};
  /// Module tolerances, keyed by flag name (--tol-<name>).
  std::map<std::string, double> tol = default_tolerances();
  bool full = false;  ///< verify: run the Volterra sweep to n = 1024

  static std::map<std::string, double> default_tolerances();
  /// Throws ValidationError unless every tolerance is positive and finite.
  void validate() const;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;
  std::string csv;
};

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_riesz(const RunConfig& cfg);
CommandResult cmd_irreducibility(const RunConfig& cfg);
CommandResult cmd_examples(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// Dispatches on cfg.command and maps library exceptions to exit codes; on
/// error the report holds {"error": kind, "message": ...}.
CommandResult run(const RunConfig& cfg);

/// Parses "a:b".
std::pair<std::size_t, std::size_t> parse_range(const std::string& s);

SuiteTolerances suite_tolerances(const RunConfig& cfg);

}  // namespace quatcalc::cli
