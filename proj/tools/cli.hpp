#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sosbound::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kConditioningFailure = 3,
  kGoldenMismatch = 4,
};

struct RunConfig {
  std::string command;
  std::string fn;
  std::string poly;
  std::string domain;
  std::optional<std::size_t> n;
  int r_first = 1;
  int r_last = 1;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::optional<double> eps;
  std::optional<double> f_min;
  std::vector<double> a;
  bool rescale = false;
  bool json = false;
  std::string out;
  std::string precision = "auto";
  std::size_t mc_samples = 1000000;
  std::string golden;
  bool stretch = false;
  std::vector<std::string> tables;
};

/// Parses "6" or "2..8" into an inclusive range; throws on malformed input.
std::pair<int, int> parse_r_range(const std::string& text);

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sosbound::cli
