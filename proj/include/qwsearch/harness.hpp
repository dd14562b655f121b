#pragma once

// Scaling sweeps, amplitude-amplification accounting, and tabular output.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qwsearch/grid.hpp"

namespace qwsearch {

struct ScalingRow {
  int m = 0;
  long long N = 0;
  double alpha_analytic = 0.0;
  std::optional<double> alpha_exact;
  std::optional<double> alpha_empirical;
  int t_pred = 0;
  int t_star = 0;
  double p_star = 0.0;
  double p_pred = 0.0;
  double claim1_overlap = 0.0;
  int aa_rounds = 0;
  long long aa_total_steps = 0;
  double wall_time_ms = 0.0;

  friend bool operator==(const ScalingRow&, const ScalingRow&) = default;
};

inline const std::vector<int> kDefaultSweepSides = {6, 10, 14, 22, 30, 46, 62, 94, 126};

struct SweepOptions {
  double max_steps_factor = 8.0;
  bool exact_alpha = true;
  bool record_wall_time = true;
};

struct SweepEntry {
  int m = 0;
  std::optional<ScalingRow> row;
  std::string error;
  bool monotone_window = false;
  double p_near_t_pred = 0.0;  // best of p(t_pred - 1), p(t_pred), p(t_pred + 1)
};

/// One entry per side, in input order. Invalid sides produce an entry with
/// an error message; the sweep continues.
std::vector<SweepEntry> sweep(const std::vector<int>& sides, const SweepOptions& options = {});

/// Rows of the successful entries, sorted by m.
std::vector<ScalingRow> successful_rows(const std::vector<SweepEntry>& entries);

/// ceil((π/4) / asin(√p)), at least 1.
int amplification_rounds(double p);

struct AmplificationEstimate {
  int rounds = 0;
  long long total_steps = 0;  // t* (2 rounds + 1)
};

AmplificationEstimate amplification_estimate(int t_star, double p_star);

/// 2|ψ_0⟩⟨ψ_0| - I with ψ_0 uniform.
void reflect_about_uniform_in_place(StateVector& state);

struct AmplificationRun {
  double achieved_p = 0.0;
  int rounds_used = 0;              // round with the best probability
  std::vector<double> trace;        // p after each round; round 1 is A|ψ_0⟩
  long long steps_applied = 0;
  bool budget_exceeded = false;
};

inline constexpr long long kAmplificationStepBudget = 10'000'000;

/// Amplitude amplification with A = U^{t_f}. Stops at the first round whose
/// success probability reaches 1/2.
AmplificationRun amplify_simulated(const GridSpec& grid, int t_f, int max_rounds,
                                   long long step_budget = kAmplificationStepBudget);

/// Minimal table model shared by every emitter.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

/// Reals at 12 significant digits, empty cells for absent values (null in JSON).
/// JSON is an array of objects, or a single object when as_record is set.
void write_table(std::ostream& out, const Table& table, Format format, bool as_record = false);

/// Shortest text for a real at 12 significant digits.
std::string format_real(double value);

extern const std::vector<std::string> kScalingColumns;

Table scaling_table(const std::vector<ScalingRow>& rows);

/// Writes rows to path, or to stdout when path is empty or "-". Throws IoError.
void emit(const std::vector<ScalingRow>& rows, Format format, const std::string& path);

/// Parses the CSV produced by emit.
std::vector<ScalingRow> parse_rows(const std::string& csv);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace qwsearch
