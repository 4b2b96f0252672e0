#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridforce/json_io.hpp"

namespace gridforce::cli {

enum ExitCode : int { kOk = 0, kInvalidSpec = 2, kResourceLimit = 3, kInvariantFailure = 4 };

enum class Format { Json, Pgm, Ascii };

struct RunOptions {
  std::filesystem::path spec;
  std::filesystem::path out;  // empty: no artifacts
  Format format = Format::Json;
  std::optional<Coord> max_side;
  std::optional<std::size_t> max_steps;
};

/// Each command returns its stdout report; artifacts go under opts.out.
/// Failures surface as exceptions mapped to exit codes by run().
json cmd_build_mt(const json& spec, const RunOptions& opts);
json cmd_build_gp(const json& spec, const RunOptions& opts);
json cmd_verify(const json& spec, const RunOptions& opts);
json cmd_toast(const json& spec, const RunOptions& opts);
json cmd_markers(const json& spec, const RunOptions& opts);

/// Raised by verifying commands when a check fails (exit 4); carries the report.
class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, json report) : std::runtime_error(what), report_(std::move(report)) {}
  const json& report() const { return report_; }

 private:
  json report_;
};

/// Parse arguments, dispatch, print the JSON report to out and diagnostics
/// to err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridforce::cli
