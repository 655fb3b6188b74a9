#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/error.hpp"
#include "toric/io.hpp"

namespace toric::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kInvariantViolation = 3 };

struct RunConfig {
  std::string command;  // info | code | mindist | bounds | decompose | reproduce
  std::string polygon_path;
  std::optional<std::uint32_t> q;
  std::optional<std::vector<std::uint32_t>> modulus;
  unsigned threads = 1;
  std::optional<double> deadline_s;
  std::optional<std::size_t> budget;
  std::string output = "json";  // json | csv | text
  bool long_tests = false;
  bool exact = false;
  std::string checkpoint;
  std::string dump;  // file for the codeword (mindist) or generator matrix (code)
};

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

/// Runs one command; never throws for input problems (they map to exit codes).
CommandResult run(const RunConfig& config);

/// Exit code for a library error.
int exit_code_for(ErrorKind kind);

struct ReproduceRow {
  std::string source;  // polygon/field/quantity
  std::string claim;
  std::string expected;
  std::string computed;
  bool match = false;
  bool long_only = false;
};

/// Every claimed value checked against computation; long rows are skipped
/// (not listed) unless long_tests is set.
std::vector<ReproduceRow> reproduce_rows(bool long_tests, unsigned threads);

/// JSON -> csv / text projections (flattened scalar leaves, or a table for an
/// array of flat objects under "rows").
std::string render(const Json& doc, const std::string& format);

}  // namespace toric::cli
