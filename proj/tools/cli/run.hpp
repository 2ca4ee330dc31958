#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace selfless::cli {

inline constexpr const char* kToolName = "selfless";
inline constexpr const char* kToolVersion = "0.3.0";

/// Exit statuses.
enum Status : int { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;

  // exact group mode
  std::string group = "F2";
  std::string elements;
  std::string unitary;
  std::string family;
  long long n_min = 1;
  long long n_max = 64;
  std::size_t p = 1;

  // check parameters
  int N = 1;
  double epsilon = 0.0;
  bool strict_exponents = false;
  std::string strategy = "auto";
  std::size_t max_listed = 32;

  // matrix mode
  std::size_t k = 1;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::string matrix_family = "none";
  std::size_t family_count = 1;
  std::string matrix_file;
  double M = 1.0;
  std::size_t trials = 1000;
  int max_exponent = 3;

  // diagonal
  std::string enumeration;
  int stages = 1;
  long long window = 0;
  std::vector<std::string> trajectories;
  std::string ingredients;
  std::vector<int> power_trajectories;

  // output
  std::string output;
  std::string csv;
  std::size_t threads = 0;

  /// Normalized echo of the fields the subcommand reads.
  nlohmann::json to_json() const;
};

struct Outcome {
  nlohmann::json envelope;
  int status = kPass;
  /// Sweep table when the config asks for CSV.
  std::optional<std::string> csv;
};

/// Parses argv; returns nullopt after printing help or a usage error to
/// `err` (with `status` set accordingly).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& status);

/// Executes a validated config. Module errors become a JSON error object.
Outcome run(const RunConfig& config);

/// Full command-line entry point: parse, run, write the report.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace selfless::cli
