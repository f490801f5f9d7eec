#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests drive it with string streams and a fake environment.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace idstat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitBoseDivergence = 3;
inline constexpr int kExitCapacity = 4;

struct RunConfig {
  std::string mode = "dimensionless";  // or "si"
  int max_N = 50;
  int max_levels = 10'000;
  std::string output = "pretty";  // json | csv | pretty
  std::uint64_t seed = 20240601;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_env);

}  // namespace idstat::cli
