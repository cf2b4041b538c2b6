#pragma once

// Command implementations behind the chpolar executable. Each command takes
// its input as text and returns the exit code together with the JSON result.
//
// Exit codes: 0 success / verdict true / equivalent, 1 verdict false / not
// equivalent / undetermined, 2 input or domain error, 3 internal consistency
// error.

#include "chpolar/tolerances.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chpolar::cli {

enum class Format { Json, Text };

struct RunConfig {
  int n = 0;  ///< 0 when not given on the command line
  Tolerances tol;
  std::uint64_t seed = 0;
  Format format = Format::Json;
};

struct CommandResult {
  int exit_code = 0;
  nlohmann::json output;
};

CommandResult cmd_decompose(const std::string& input, const RunConfig& cfg);
CommandResult cmd_verify(const std::string& spec, const RunConfig& cfg);
CommandResult cmd_compare(const std::string& spec_a, const std::string& spec_b, const RunConfig& cfg);
CommandResult cmd_enumerate(int n, const std::vector<double>& angle_grid, const RunConfig& cfg);
CommandResult cmd_curvature(const std::string& spec, const RunConfig& cfg);
CommandResult cmd_selfcheck(const RunConfig& cfg);

/// Parses "0.5", "pi/3", "2pi/5", "pi".
double parse_angle(const std::string& text);

std::string render(const nlohmann::json& output, Format format);

/// Full command line handling; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace chpolar::cli
