#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "btcoh/building.hpp"
#include "btcoh/json_io.hpp"

namespace btcoh::cli {

enum ExitCode : int { kSuccess = 0, kClauseFailure = 1, kUsageError = 2 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  int d = 1;
  long p = 2;
  int radius = 1;
  /// Ring names such as "Q", "F3", "Z/9", "Z"; empty selects the defaults.
  std::vector<std::string> rings;
  /// Arrangement level; 0 picks one automatically.
  int level = 0;
  /// Coefficient degree for `cech`; -1 runs every degree.
  int degree = -1;
  std::size_t cap = kDefaultSizeCap;
  std::uint64_t seed = 1;
  std::string order = "lex";
  std::string output;
  int verbosity = 1;
  std::size_t workers = 0;
  std::size_t apartments = 20;
  std::string m0;
  std::string m1;
  bool timing = false;

  /// Throws UsageError.
  void validate() const;
  Json to_json() const;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"ball", "distance", "arrangement", "os", "cech", "verify"};
  return names;
}

struct RunResult {
  int exit_code = kSuccess;
  Json report;
};

/// Computes the report for one command without touching the filesystem.
RunResult execute(const RunConfig& config);

/// Where the report goes: --output, optionally placed under $BTCOH_OUTPUT_DIR,
/// or nullopt for standard output.
std::optional<std::filesystem::path> report_path(const RunConfig& config);

/// execute() plus report emission; usage problems give exit code 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run().
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace btcoh::cli
