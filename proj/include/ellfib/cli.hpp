#pragma once

// Command-line front end: flag parsing, routing to the modules, and report
// serialization (text, JSON with "schema": 1, RFC-4180 CSV).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace ellfib {

enum class OutputFormat { Auto, Text, Json, Csv };

struct RunConfig {
  std::string subcommand;
  std::uint64_t q = 0;
  std::optional<int> n;
  std::optional<int> d1, d2;
  std::string a4, a6;
  /// Height bound for zfqt: decimal digits or base^exponent.
  std::string bound;
  std::uint64_t b_max = 1'000'000;
  std::string grid = "log10";
  int points_per_decade = 4;
  unsigned valuation_cap = 6;
  /// nullopt: MODULI_BUDGET from the environment, else the module default.
  std::optional<std::uint64_t> budget;
  int jobs = 1;
  OutputFormat format = OutputFormat::Auto;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool force = false;
  bool oracle = false;
  /// Include wall-clock seconds in JSON (breaks byte-identical output).
  bool timing = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Runs one validated configuration. Reports go to out, diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ellfib
