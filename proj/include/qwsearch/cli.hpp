#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qwsearch/estimation.hpp"
#include "qwsearch/grid.hpp"
#include "qwsearch/harness.hpp"
#include "qwsearch/tolerances.hpp"

namespace qwsearch::cli {

enum class Subcommand { simulate, analytic, spectrum, sweep, amplify };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

struct CliConfig {
  Subcommand subcommand = Subcommand::simulate;
  int side = 0;
  std::vector<int> sides = kDefaultSweepSides;
  std::optional<int> steps;  // empty means auto
  Vertex marked;
  Format format = Format::csv;
  std::string out;  // empty means stdout
  std::size_t cap = kDefaultDenseCap;
  Tolerances tolerances;
  double steps_factor = 8.0;
  int max_rounds = 10;
  bool timing = true;
  bool exact_alpha = true;
};

struct ParseOutcome {
  std::optional<CliConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty
};

/// "a:b:s" (inclusive) or "a,b,c". Throws std::invalid_argument.
std::vector<int> parse_sides(const std::string& text);

/// Throws ParityError naming the m ≡ 2 (mod 4) requirement.
void validate_analytic_side(int m);

/// Usage errors and help text go to err; the config is returned otherwise.
ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Relative paths resolve against $QWSEARCH_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace qwsearch::cli
