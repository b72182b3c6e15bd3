#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "equideriv/descent.hpp"

namespace equideriv {

inline constexpr std::size_t kMaxVariables = 8;

/// Library version string.
const char* version();

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

struct RunOptions {
  std::optional<std::string> task;          // run only tasks with this name or type
  std::optional<std::size_t> degree_bound;  // oracle bound override
  std::optional<Space> space;               // descend/oracle space override
};

struct RunResult {
  nlohmann::json report;
  std::string text;  // human-readable summary
};

/// Parses and validates a problem file, then runs its tasks in order.
/// Throws ValidationError (including ParseError with line and column) on bad
/// input and ConsistencyError on internal failures.
RunResult run_problem(const std::string& input, const RunOptions& options = {});

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitInternal = 2 };

/// Reads the file, runs it, prints the text report to out and writes the
/// JSON report to json_path when given. Errors go to err.
int run_file(const std::string& path, const RunOptions& options, const std::optional<std::string>& json_path,
             std::ostream& out, std::ostream& err);

}  // namespace equideriv
