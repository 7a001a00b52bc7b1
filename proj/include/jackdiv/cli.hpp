#pragma once

// Command-line front end: argument parsing and dispatch, kept in the library
// so the same code path is testable without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jackdiv/hypergeom.hpp"
#include "jackdiv/verify.hpp"

namespace jackdiv {

enum class Command { kJack, kPfq, kGamma, kCdfMax, kCdfMin, kCdfRegion, kDensity, kVerify, kFigures };

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int points = 2;

  // "start:stop:points", points >= 2, stop > start.
  static Grid parse(const std::string& text);
  std::vector<double> values() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
  Command command = Command::kJack;
  std::string target;  // verify: "all"; figures: "fig1" or "fig2"

  std::optional<int> beta;
  std::optional<int> m;
  std::optional<double> n;
  std::vector<double> sigma;

  std::optional<double> x;
  std::optional<Grid> grid;
  SeriesTruncation trunc{};

  // jack, pfq, gamma
  std::string kappa;
  std::vector<double> eigs;
  std::vector<double> eigs2;
  std::vector<double> upper;
  std::vector<double> lower;
  std::optional<double> a;
  bool minus = false;

  // cdf-region, density
  std::vector<double> omega;
  std::vector<double> lambdas;

  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 0;  // 0: suite default
  bool quick = false;
  PassCriteria criteria{};
  int threads = 1;
  std::string output;  // empty: stdout
};

Command parse_command(const std::string& name);

// Parses argv (argv[0] is the program name), reading JACKDIV_THREADS when
// --threads is absent.  Returns the exit code when parsing ends the run
// (help, or a usage error already reported on err).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;
};
ParseOutcome parse_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Validates and executes.  Results go to config.output (or out); logs and
// single-line diagnostics go to err.  Exit codes: 0 success, 1 a verification
// case failed, 2 invalid input or unsupported request.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_cli followed by run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jackdiv
