#include "qwsearch/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qwsearch/analytic.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/spectral.hpp"
#include "qwsearch/walk.hpp"

namespace qwsearch::cli {
namespace {

int parse_int_strict(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("malformed " + what + ": '" + s + "'");
  return v;
}

Vertex parse_marked(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--marked expects x,y");
  return {parse_int_strict(s.substr(0, comma), "marked x"), parse_int_strict(s.substr(comma + 1), "marked y")};
}

void validate_even_side(int m) {
  if (m < 2 || m % 2 != 0) {
    throw ParityError("side " + std::to_string(m) + " must be even and at least 2");
  }
}

Cell real(double v) { return v; }
Cell integer(long long v) { return v; }

// Buffers primary output and writes it in one go to stdout or the --out file.
void deliver(const CliConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty() || config.out == "-") {
    out << text;
    return;
  }
  const std::string path = resolve_output_path(config.out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

int run_simulate(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec grid(c.side, c.marked);
  int steps = 0;
  if (c.steps) {
    steps = *c.steps;
  } else {
    steps = 8 * optimal_steps(compute_alpha(grid));
    err << "steps: auto -> " << steps << '\n';
  }
  const RunResult r = run(grid, steps);
  Table t{.columns = {"t", "p_t", "re_overlap", "im_overlap"}};
  for (std::size_t i = 0; i < r.probs.size(); ++i) {
    t.rows.push_back({integer(static_cast<long long>(i)), real(r.probs[i]), real(r.overlaps[i].real()),
                      real(r.overlaps[i].imag())});
  }
  std::ostringstream buf;
  write_table(buf, t, c.format);
  deliver(c, buf.str(), out);
  return kExitOk;
}

int run_analytic(const CliConfig& c, std::ostream& out, std::ostream&) {
  const GridSpec grid(c.side);
  const Psi1Decomposition d = decompose_psi1(grid, c.tolerances);
  if (std::abs(d.completeness() - 1.0) > c.tolerances.sum_identity) {
    throw NumericalError("decomposition of psi_1 is incomplete: " + format_real(d.completeness()));
  }
  const AnalyticReport r = analyze(grid, c.exact_alpha);
  Table t{.columns = {"m", "N", "B_minus_Cx", "alpha", "alpha_exact", "t_f", "t_pred", "cos_beta", "x_re",
                      "x_im", "psi_norm_sq", "overlap_00_psi_re", "overlap_00_psi_im", "p_pred",
                      "claim1_overlap", "claim1_overlap_adjusted", "E_minus_re", "E_minus_im", "E_plus_re",
                      "E_plus_im", "F_re", "F_im"}};
  t.rows.push_back({integer(r.m), integer(r.N), real(r.B_minus_Cx), real(r.alpha),
                    r.alpha_exact ? real(*r.alpha_exact) : Cell{}, real(r.t_f), integer(r.t_f_rounded),
                    real(r.cos_beta), real(r.x.real()), real(r.x.imag()), real(r.psi_norm_sq),
                    real(r.overlap_00_psi.real()), real(r.overlap_00_psi.imag()), real(r.p_pred),
                    real(r.claim1_overlap), real(r.claim1_overlap_adjusted), real(r.E_minus.real()),
                    real(r.E_minus.imag()), real(r.E_plus.real()), real(r.E_plus.imag()), real(r.F.real()),
                    real(r.F.imag())});
  std::ostringstream buf;
  write_table(buf, t, c.format, true);
  deliver(c, buf.str(), out);
  return kExitOk;
}

int run_spectrum(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec grid(c.side);
  Cell dense_alpha;
  if (grid.vertex_count() <= c.cap) {
    const Eigen::MatrixXd u = dense_unitary(grid, c.cap);
    const double defect =
        (u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (defect > c.tolerances.unitarity) throw NumericalError("dense U is not orthogonal: " + format_real(defect));
    dense_alpha = dense_spectrum(u, grid, c.tolerances.phase_zero).principal_alpha;
  } else {
    err << "N = " << grid.vertex_count() << " exceeds the dense cap " << c.cap << "; dense_alpha omitted\n";
  }
  Table t{.columns = {"k", "l", "theta", "overlap_00_w0", "overlap_00_w1", "identity", "dense_alpha"}};
  for (int k = 0; k < grid.half_side(); ++k) {
    for (int l = 0; l < grid.half_side(); ++l) {
      const FourierBlock b = block_eigensystem(build_reduced(grid, k, l), c.tolerances);
      t.rows.push_back({integer(k), integer(l), real(b.theta), real(overlap_00(b, 0).real()),
                        real(overlap_00(b, 1).real()), integer(b.identity ? 1 : 0), dense_alpha});
    }
  }
  std::ostringstream buf;
  write_table(buf, t, c.format);
  deliver(c, buf.str(), out);
  return kExitOk;
}

int run_sweep(const CliConfig& c, std::ostream& out, std::ostream& err) {
  SweepOptions opts;
  opts.max_steps_factor = c.steps_factor;
  opts.record_wall_time = c.timing;
  opts.exact_alpha = c.exact_alpha;
  const auto entries = sweep(c.sides, opts);
  int code = kExitOk;
  for (const auto& e : entries) {
    if (!e.row) {
      err << "m=" << e.m << ": " << e.error << '\n';
      code = kExitNumerical;
    }
  }
  std::ostringstream buf;
  write_table(buf, scaling_table(successful_rows(entries)), c.format);
  deliver(c, buf.str(), out);
  return code;
}

int run_amplify(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridSpec grid(c.side, c.marked);
  int t_f = 0;
  if (c.steps) {
    t_f = *c.steps;
  } else {
    validate_analytic_side(c.side);
    t_f = optimal_steps(compute_alpha(grid));
  }
  const AmplificationRun r = amplify_simulated(grid, t_f, c.max_rounds);
  Table t{.columns = {"round", "p"}};
  for (std::size_t i = 0; i < r.trace.size(); ++i) t.rows.push_back({integer(static_cast<long long>(i + 1)), real(r.trace[i])});
  std::ostringstream buf;
  write_table(buf, t, c.format);
  deliver(c, buf.str(), out);
  err << "t_f=" << t_f << " best p=" << format_real(r.achieved_p) << " at round " << r.rounds_used << '\n';
  if (r.budget_exceeded) {
    err << "step budget exceeded after " << r.steps_applied << " steps\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

std::vector<int> parse_sides(const std::string& text) {
  std::vector<int> sides;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("range must be start:end:step");
    const int start = parse_int_strict(parts[0], "range start");
    const int end = parse_int_strict(parts[1], "range end");
    const int stride = parse_int_strict(parts[2], "range step");
    if (stride <= 0 || end < start) throw std::invalid_argument("range needs step > 0 and end >= start");
    for (int m = start; m <= end; m += stride) sides.push_back(m);
  } else {
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) sides.push_back(parse_int_strict(part, "side"));
  }
  if (sides.empty()) throw std::invalid_argument("empty side list");
  return sides;
}

void validate_analytic_side(int m) {
  if (m < 6 || m % 4 != 2) {
    throw ParityError("side " + std::to_string(m) + " is not allowed: the analytic model needs m ≡ 2 (mod 4), m >= 6");
  }
}

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Staggered quantum walk search on the two-dimensional torus"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string steps_text = "auto";
  std::string marked_text = "0,0";
  std::string sides_text;
  std::string format_text = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--unitarity-tol", cfg.tolerances.unitarity);
    sub->add_option("--sum-tol", cfg.tolerances.sum_identity);
    sub->add_option("--phase-tol", cfg.tolerances.phase_zero);
    sub->add_option("--degenerate-tol", cfg.tolerances.degenerate_norm);
  };

  auto* simulate = app.add_subcommand("simulate", "probability series p(t) of one walk");
  simulate->add_option("--side", cfg.side, "side length m")->required();
  simulate->add_option("--steps", steps_text, "number of steps, or auto for 8 t_pred");
  simulate->add_option("--marked", marked_text, "marked vertex x,y");
  add_common(simulate);

  auto* analytic = app.add_subcommand("analytic", "closed-form predictions for one grid");
  analytic->add_option("--side", cfg.side, "side length m")->required();
  analytic->add_flag("!--no-exact", cfg.exact_alpha, "skip the exact alpha solve");
  add_common(analytic);
  add_tolerances(analytic);

  auto* spectrum = app.add_subcommand("spectrum", "per-block eigenphases and overlaps");
  spectrum->add_option("--side", cfg.side, "side length m")->required();
  spectrum->add_option("--cap", cfg.cap, "largest N for the dense oracle");
  add_common(spectrum);
  add_tolerances(spectrum);

  auto* sweep_cmd = app.add_subcommand("sweep", "scaling sweep over several grid sizes");
  sweep_cmd->add_option("--sides", sides_text, "start:end:step or comma list");
  sweep_cmd->add_option("--factor", cfg.steps_factor, "walk window in units of t_pred")->check(CLI::Range(4.0, 1e6));
  sweep_cmd->add_flag("!--no-timing", cfg.timing, "write wall_time_ms as 0");
  sweep_cmd->add_flag("!--no-exact", cfg.exact_alpha, "leave alpha_exact empty");
  add_common(sweep_cmd);

  auto* amplify = app.add_subcommand("amplify", "simulated amplitude amplification");
  amplify->add_option("--side", cfg.side, "side length m")->required();
  amplify->add_option("--steps", steps_text, "walk steps per preparation, or auto for t_pred");
  amplify->add_option("--marked", marked_text, "marked vertex x,y");
  amplify->add_option("--max-rounds", cfg.max_rounds)->check(CLI::PositiveNumber);
  add_common(amplify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (simulate->parsed()) cfg.subcommand = Subcommand::simulate;
    if (analytic->parsed()) cfg.subcommand = Subcommand::analytic;
    if (spectrum->parsed()) cfg.subcommand = Subcommand::spectrum;
    if (sweep_cmd->parsed()) cfg.subcommand = Subcommand::sweep;
    if (amplify->parsed()) cfg.subcommand = Subcommand::amplify;

    cfg.format = format_text == "json" ? Format::json : Format::csv;
    cfg.marked = parse_marked(marked_text);
    if (steps_text == "auto") {
      cfg.steps.reset();
    } else {
      cfg.steps = parse_int_strict(steps_text, "--steps");
      if (*cfg.steps < 0) throw std::invalid_argument("--steps must be non-negative");
    }

    switch (cfg.subcommand) {
      case Subcommand::simulate:
        validate_even_side(cfg.side);
        if (!cfg.steps) validate_analytic_side(cfg.side);
        break;
      case Subcommand::amplify:
        validate_even_side(cfg.side);
        if (!cfg.steps) validate_analytic_side(cfg.side);
        if (cfg.steps && *cfg.steps < 1) throw std::invalid_argument("--steps must be positive for amplify");
        break;
      case Subcommand::analytic:
      case Subcommand::spectrum:
        validate_analytic_side(cfg.side);
        break;
      case Subcommand::sweep:
        if (!sides_text.empty()) cfg.sides = parse_sides(sides_text);
        for (int m : cfg.sides) validate_analytic_side(m);
        break;
    }
    if (cfg.subcommand == Subcommand::simulate || cfg.subcommand == Subcommand::amplify) {
      if (!GridSpec(cfg.side).contains(cfg.marked.x, cfg.marked.y)) {
        throw std::invalid_argument("--marked vertex lies outside the grid");
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }
  return {cfg, kExitOk};
}

std::string resolve_output_path(const std::string& path) {
  const std::filesystem::path p(path);
  const char* dir = std::getenv("QWSEARCH_OUTPUT_DIR");
  if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

int dispatch(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::simulate: return run_simulate(config, out, err);
      case Subcommand::analytic: return run_analytic(config, out, err);
      case Subcommand::spectrum: return run_spectrum(config, out, err);
      case Subcommand::sweep: return run_sweep(config, out, err);
      case Subcommand::amplify: return run_amplify(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const ParseOutcome parsed = parse_args(args, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return dispatch(*parsed.config, std::cout, std::cerr);
}

}  // namespace qwsearch::cli
