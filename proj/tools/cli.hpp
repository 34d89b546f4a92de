#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rlab::cli {

inline constexpr const char* kSchemaVersion = "1.0";

/// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInconclusive = 2;

/// Parses argv, runs one subcommand, writes artifacts to the configured
/// outdir, prints the JSON summary to `out`. Module errors and usage errors
/// become one JSON error record on `err` and exit code 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// CSV columns of each subcommand: (name, meaning).
const std::vector<std::pair<std::string, std::string>>& csv_columns(const std::string& command);

/// Subcommand names in help order.
const std::vector<std::string>& commands();

} // namespace rlab::cli
