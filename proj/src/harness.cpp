#include "qwsearch/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qwsearch/analytic.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/estimation.hpp"
#include "qwsearch/walk.hpp"

namespace qwsearch {
namespace {

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string quoted = "\"";
      for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      return quoted + "\"";
    }
  };
  return std::visit(Visitor{}, cell);
}

std::string json_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (!std::isfinite(v)) return "null";
      return format_real(v);
    }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  };
  return std::visit(Visitor{}, cell);
}

void write_json_object(std::ostream& out, const std::vector<std::string>& columns, const std::vector<Cell>& row,
                       const std::string& indent) {
  out << indent << "{";
  for (std::size_t i = 0; i < row.size(); ++i) {
    out << (i ? "," : "") << '\n' << indent << "  " << nlohmann::json(columns[i]).dump() << ": " << json_field(row[i]);
  }
  out << '\n' << indent << "}";
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

long long parse_int(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::vector<SweepEntry> sweep(const std::vector<int>& sides, const SweepOptions& options) {
  if (!(options.max_steps_factor >= 4.0)) {
    throw std::invalid_argument("sweep: max_steps_factor must be at least 4");
  }
  std::vector<SweepEntry> entries;
  entries.reserve(sides.size());
  for (int m : sides) {
    SweepEntry entry{.m = m};
    try {
      const auto start = std::chrono::steady_clock::now();
      const GridSpec grid(m);
      const AnalyticReport report = analyze(grid, options.exact_alpha);
      const int steps = std::max(3, static_cast<int>(std::ceil(options.max_steps_factor * report.t_f_rounded)));
      RunResult run_result = run(grid, steps);
      summarize(run_result);

      ScalingRow row;
      row.m = m;
      row.N = report.N;
      row.alpha_analytic = report.alpha;
      row.alpha_exact = report.alpha_exact;
      row.alpha_empirical = run_result.alpha_emp;
      row.t_pred = report.t_f_rounded;
      row.t_star = *run_result.t_star;
      row.p_star = run_result.p_star;
      row.p_pred = report.p_pred;
      row.claim1_overlap = report.claim1_overlap;
      const AmplificationEstimate aa = amplification_estimate(row.t_star, row.p_star);
      row.aa_rounds = aa.rounds;
      row.aa_total_steps = aa.total_steps;

      entry.monotone_window = run_result.monotone_window;
      for (int t = row.t_pred - 1; t <= row.t_pred + 1; ++t) {
        entry.p_near_t_pred = std::max(entry.p_near_t_pred, run_result.probs.at(static_cast<std::size_t>(t)));
      }
      if (options.record_wall_time) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        row.wall_time_ms = std::chrono::duration<double, std::milli>(elapsed).count();
      }
      entry.row = row;
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<ScalingRow> successful_rows(const std::vector<SweepEntry>& entries) {
  std::vector<ScalingRow> rows;
  for (const auto& e : entries) {
    if (e.row) rows.push_back(*e.row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  return rows;
}

int amplification_rounds(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("amplification_rounds: p must be in (0, 1]");
  const double ratio = (std::numbers::pi / 4.0) / std::asin(std::sqrt(p));
  // p = 1/2 lands on ratio = 1 up to rounding.
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

AmplificationEstimate amplification_estimate(int t_star, double p_star) {
  AmplificationEstimate e;
  e.rounds = amplification_rounds(p_star);
  e.total_steps = static_cast<long long>(t_star) * e.rounds * 2 + t_star;
  return e;
}

void reflect_about_uniform_in_place(StateVector& state) {
  const double n = static_cast<double>(state.grid().vertex_count());
  const auto mean = state.amplitudes().sum() / n;
  state.amplitudes() = (2.0 * mean) - state.amplitudes().array();
}

AmplificationRun amplify_simulated(const GridSpec& grid, int t_f, int max_rounds, long long step_budget) {
  if (t_f < 1 || max_rounds < 1) throw std::invalid_argument("amplify_simulated: t_f and max_rounds must be positive");
  AmplificationRun out;
  const std::size_t w = grid.marked_index();
  StateVector state = uniform_state(grid);

  auto forward = [&] {
    for (int t = 0; t < t_f; ++t) step_in_place(state);
    out.steps_applied += t_f;
  };
  auto record = [&](int round) {
    const double p = std::norm(state[w]);
    out.trace.push_back(p);
    if (p > out.achieved_p) {
      out.achieved_p = p;
      out.rounds_used = round;
    }
    return p;
  };

  if (t_f > step_budget) {
    out.budget_exceeded = true;
    return out;
  }
  forward();
  if (record(1) >= 0.5) return out;

  for (int round = 2; round <= max_rounds; ++round) {
    if (out.steps_applied + 2LL * t_f > step_budget) {
      out.budget_exceeded = true;
      break;
    }
    state[w] = -state[w];
    for (int t = 0; t < t_f; ++t) step_inverse_in_place(state);
    out.steps_applied += t_f;
    reflect_about_uniform_in_place(state);
    forward();
    if (record(round) >= 0.5) break;
  }
  return out;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_table(std::ostream& out, const Table& table, Format format, bool as_record) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    return;
  }
  if (as_record) {
    if (table.rows.empty()) {
      out << "{}\n";
    } else {
      write_json_object(out, table.columns, table.rows.front(), "");
      out << '\n';
    }
    return;
  }
  if (table.rows.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    write_json_object(out, table.columns, table.rows[r], "  ");
    out << (r + 1 < table.rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

const std::vector<std::string> kScalingColumns = {
    "m",      "N",      "alpha_analytic", "alpha_exact",    "alpha_empirical", "t_pred",      "t_star",
    "p_star", "p_pred", "claim1_overlap", "aa_rounds",      "aa_total_steps",  "wall_time_ms"};

Table scaling_table(const std::vector<ScalingRow>& rows) {
  Table t{.columns = kScalingColumns};
  for (const auto& r : rows) {
    t.rows.push_back({static_cast<long long>(r.m), r.N, r.alpha_analytic, optional_cell(r.alpha_exact),
                      optional_cell(r.alpha_empirical), static_cast<long long>(r.t_pred),
                      static_cast<long long>(r.t_star), r.p_star, r.p_pred, r.claim1_overlap,
                      static_cast<long long>(r.aa_rounds), r.aa_total_steps, r.wall_time_ms});
  }
  return t;
}

void emit(const std::vector<ScalingRow>& rows, Format format, const std::string& path) {
  const Table table = scaling_table(rows);
  if (path.empty() || path == "-") {
    write_table(std::cout, table, format);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  write_table(file, table, format);
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

std::vector<ScalingRow> parse_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("parse_rows: missing header");
  if (split_csv_line(line) != kScalingColumns) throw std::invalid_argument("parse_rows: unexpected header");
  std::vector<ScalingRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != kScalingColumns.size()) throw std::invalid_argument("parse_rows: wrong field count");
    ScalingRow r;
    r.m = static_cast<int>(parse_int(f[0]));
    r.N = parse_int(f[1]);
    r.alpha_analytic = parse_double(f[2]);
    r.alpha_exact = parse_optional(f[3]);
    r.alpha_empirical = parse_optional(f[4]);
    r.t_pred = static_cast<int>(parse_int(f[5]));
    r.t_star = static_cast<int>(parse_int(f[6]));
    r.p_star = parse_double(f[7]);
    r.p_pred = parse_double(f[8]);
    r.claim1_overlap = parse_double(f[9]);
    r.aa_rounds = static_cast<int>(parse_int(f[10]));
    r.aa_total_steps = parse_int(f[11]);
    r.wall_time_ms = parse_double(f[12]);
    rows.push_back(r);
  }
  return rows;
}

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_linear: need two or more paired points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_linear: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace qwsearch
