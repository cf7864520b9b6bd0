// hecke-density: CLI front end over the satake/sources/dirichlet/optimizer
// modules. One subcommand per concern; CSV or JSON reports on stdout or --out.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hecke/dirichlet.hpp"
#include "hecke/optimizer.hpp"
#include "hecke/report.hpp"
#include "hecke/satake.hpp"
#include "hecke/sources.hpp"

namespace {

using hecke::report::format_float;
using hecke::report::Report;

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write the report to this path");
}

int emit_report(const Report& rep, const OutputOptions& opts) {
  const std::string text = opts.format == "csv" ? hecke::report::to_csv(rep)
                                                : hecke::report::to_json(rep);
  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << opts.out_path << "'\n";
      return 2;
    }
    out << text;
  }
  return rep.all_pass() ? 0 : 1;
}

struct SourceOptions {
  std::string source = "tau";
  long long limit = 30000;
  std::size_t count = 100000;
  std::uint64_t seed = 1;
  std::string input;
};

void add_source_flags(CLI::App* cmd, SourceOptions& opts) {
  cmd->add_option("--source", opts.source, "Eigenvalue source")
      ->check(CLI::IsMember({"tau", "sato_tate", "dihedral", "csv"}))
      ->capture_default_str();
  cmd->add_option("--limit", opts.limit, "Prime limit for --source tau")
      ->capture_default_str();
  cmd->add_option("--count", opts.count, "Sample count for synthetic sources")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "RNG seed for synthetic sources")
      ->capture_default_str();
  cmd->add_option("--input", opts.input, "CSV path for --source csv");
}

hecke::sources::EigenvalueSequence load_source(const SourceOptions& opts,
                                               Report& rep) {
  rep.config_entry("source", opts.source);
  if (opts.source == "tau") {
    rep.config_entry("limit", std::to_string(opts.limit));
    return hecke::sources::tau_sequence(static_cast<int>(opts.limit));
  }
  if (opts.source == "sato_tate" || opts.source == "dihedral") {
    rep.config_entry("count", std::to_string(opts.count));
    rep.config_entry("seed", std::to_string(opts.seed));
    return opts.source == "sato_tate"
               ? hecke::sources::sample_sato_tate(opts.count, opts.seed)
               : hecke::sources::sample_dihedral(opts.count, opts.seed);
  }
  if (opts.input.empty())
    throw CLI::ValidationError("--source csv requires --input");
  rep.config_entry("input", opts.input);
  return hecke::sources::load_csv(opts.input);
}

struct GridOptions {
  std::string s_grid;  // comma-separated override
  double coupling = 3.0;
};

void add_grid_flags(CLI::App* cmd, GridOptions& opts) {
  cmd->add_option("--s-grid", opts.s_grid,
                  "Comma-separated s values overriding the default grid");
  cmd->add_option("--coupling", opts.coupling,
                  "Minimum (s-1) ln(truncation) for a usable grid point")
      ->capture_default_str();
}

hecke::dirichlet::SGrid make_grid(const GridOptions& opts, long long truncation,
                                  Report& rep) {
  rep.config_entry("coupling", format_float(opts.coupling));
  if (opts.s_grid.empty()) {
    auto grid = hecke::dirichlet::SGrid::standard(truncation, opts.coupling);
    std::string pts;
    for (double s : grid.points) {
      if (!pts.empty()) pts += ' ';
      pts += format_float(s);
    }
    rep.config_entry("s_grid", pts);
    return grid;
  }
  std::vector<double> points;
  std::stringstream ss(opts.s_grid);
  std::string tok;
  while (std::getline(ss, tok, ',')) points.push_back(std::stod(tok));
  rep.config_entry("s_grid", opts.s_grid);
  return hecke::dirichlet::SGrid(points, truncation, opts.coupling);
}

long long truncation_of(const hecke::sources::EigenvalueSequence& seq) {
  return seq.entries.empty() ? 2 : seq.entries.back().p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical instantiation of Hecke-eigenvalue density bounds"};
  app.require_subcommand(1);

  // --- sieve ---
  auto* sieve_cmd = app.add_subcommand("sieve", "List primes up to a limit");
  long long sieve_limit = 100;
  OutputOptions sieve_out;
  sieve_cmd->add_option("--limit", sieve_limit, "Upper bound")->required();
  add_output_flags(sieve_cmd, sieve_out);

  // --- tau ---
  auto* tau_cmd = app.add_subcommand(
      "tau", "Normalized Ramanujan tau eigenvalues for primes up to a limit");
  long long tau_limit = 1000;
  OutputOptions tau_out;
  tau_cmd->add_option("--limit", tau_limit, "Prime limit")->capture_default_str();
  add_output_flags(tau_cmd, tau_out);

  // --- sample ---
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw a synthetic eigenvalue sequence");
  SourceOptions sample_src;
  sample_src.source = "sato_tate";
  OutputOptions sample_out;
  add_source_flags(sample_cmd, sample_src);
  add_output_flags(sample_cmd, sample_out);

  // --- validate ---
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check a sequence against the Kim-Sarnak bound");
  SourceOptions validate_src;
  OutputOptions validate_out;
  add_source_flags(validate_cmd, validate_src);
  add_output_flags(validate_cmd, validate_out);

  // --- identities ---
  auto* ident_cmd = app.add_subcommand(
      "identities", "Verify the Clebsch-Gordan product identities numerically");
  std::size_t ident_samples = 1000;
  std::uint64_t ident_seed = 1;
  OutputOptions ident_out;
  ident_cmd->add_option("--samples", ident_samples, "Random Satake draws")
      ->capture_default_str();
  ident_cmd->add_option("--seed", ident_seed, "RNG seed")->capture_default_str();
  add_output_flags(ident_cmd, ident_out);

  // --- moments ---
  auto* moments_cmd = app.add_subcommand(
      "moments", "Self-normalized Dirichlet moment ratios vs pole orders");
  SourceOptions moments_src;
  moments_src.source = "sato_tate";
  GridOptions moments_grid;
  double moments_tol = 0.25;
  OutputOptions moments_out;
  add_source_flags(moments_cmd, moments_src);
  add_grid_flags(moments_cmd, moments_grid);
  moments_cmd
      ->add_option("--tol", moments_tol,
                   "Flagging tolerance for equality-target moments")
      ->capture_default_str();
  add_output_flags(moments_cmd, moments_out);

  // --- density ---
  auto* density_cmd = app.add_subcommand(
      "density", "Upper Dirichlet density estimate for a threshold set");
  SourceOptions density_src;
  GridOptions density_grid;
  double density_threshold = 0.7785;
  std::optional<double> density_delta;
  OutputOptions density_out;
  add_source_flags(density_cmd, density_src);
  add_grid_flags(density_cmd, density_grid);
  density_cmd
      ->add_option("--threshold", density_threshold, "Set is {p : a_p > c}")
      ->capture_default_str();
  density_cmd->add_option("--delta", density_delta,
                          "Verdict: density at least this value");
  add_output_flags(density_cmd, density_out);

  // --- theorem ---
  auto* theorem_cmd = app.add_subcommand(
      "theorem", "Density-theorem desk check: density of {a_p > c} vs delta");
  SourceOptions theorem_src;
  GridOptions theorem_grid;
  double theorem_threshold = 0.7785;
  double theorem_delta = 0.01;
  OutputOptions theorem_out;
  add_source_flags(theorem_cmd, theorem_src);
  add_grid_flags(theorem_cmd, theorem_grid);
  theorem_cmd->add_option("--threshold", theorem_threshold, "Threshold c")
      ->capture_default_str();
  theorem_cmd->add_option("--delta", theorem_delta, "Density lower bound")
      ->capture_default_str();
  add_output_flags(theorem_cmd, theorem_out);

  // --- solve ---
  auto* solve_cmd = app.add_subcommand(
      "solve", "Solve the simultaneous equations for (d, beta, alpha)");
  double solve_delta = 0.01;
  hecke::optimizer::MomentBounds solve_m;
  int solve_dichotomy_points = 10000;
  OutputOptions solve_out;
  solve_cmd->add_option("--delta", solve_delta, "Density constant")
      ->capture_default_str();
  solve_cmd->add_option("--m4", solve_m.M4, "Fourth-moment constant")
      ->capture_default_str();
  solve_cmd->add_option("--m6", solve_m.M6, "Sixth-moment constant")
      ->capture_default_str();
  solve_cmd->add_option("--m8", solve_m.M8, "Eighth-moment constant")
      ->capture_default_str();
  solve_cmd
      ->add_option("--dichotomy-points", solve_dichotomy_points,
                   "Grid size for the dichotomy verification")
      ->capture_default_str();
  add_output_flags(solve_cmd, solve_out);

  // --- sweep ---
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Threshold/density trade-off across a list of deltas");
  std::string sweep_deltas = "0.01,0.005,0.002";
  hecke::optimizer::MomentBounds sweep_m;
  OutputOptions sweep_out;
  sweep_cmd->add_option("--deltas", sweep_deltas, "Comma-separated deltas")
      ->capture_default_str();
  sweep_cmd->add_option("--m4", sweep_m.M4, "")->capture_default_str();
  sweep_cmd->add_option("--m6", sweep_m.M6, "")->capture_default_str();
  sweep_cmd->add_option("--m8", sweep_m.M8, "")->capture_default_str();
  add_output_flags(sweep_cmd, sweep_out);

  // --- audit ---
  auto* audit_cmd = app.add_subcommand(
      "audit", "Finite-sum Hoelder / Cauchy-Schwarz margins on a sequence");
  SourceOptions audit_src;
  GridOptions audit_grid;
  double audit_delta = 0.01;
  OutputOptions audit_out;
  add_source_flags(audit_cmd, audit_src);
  add_grid_flags(audit_cmd, audit_grid);
  audit_cmd->add_option("--delta", audit_delta, "Density constant for S/T sets")
      ->capture_default_str();
  add_output_flags(audit_cmd, audit_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 for --help, 2 for usage errors
  }

  try {
    if (*sieve_cmd) {
      Report rep;
      rep.subcommand = "sieve";
      rep.config_entry("limit", std::to_string(sieve_limit));
      const auto table = hecke::sources::sieve_primes(sieve_limit);
      rep.config_entry("count", std::to_string(table.primes.size()));
      rep.columns = {"p"};
      for (long long p : table.primes) rep.add_row({std::to_string(p)});
      return emit_report(rep, sieve_out);
    }

    if (*tau_cmd) {
      Report rep;
      rep.subcommand = "tau";
      rep.config_entry("limit", std::to_string(tau_limit));
      const auto tau = hecke::sources::tau_table(static_cast<int>(tau_limit));
      const auto seq = hecke::sources::tau_sequence(static_cast<int>(tau_limit));
      rep.columns = {"p", "a_p", "tau_p"};
      for (const auto& e : seq.entries)
        rep.add_row({std::to_string(e.p), format_float(e.a),
                     tau[static_cast<std::size_t>(e.p)].str()});
      return emit_report(rep, tau_out);
    }

    if (*sample_cmd) {
      Report rep;
      rep.subcommand = "sample";
      const auto seq = load_source(sample_src, rep);
      rep.columns = {"p", "a_p"};
      for (const auto& e : seq.entries)
        rep.add_row({std::to_string(e.p), format_float(e.a)});
      return emit_report(rep, sample_out);
    }

    if (*validate_cmd) {
      Report rep;
      rep.subcommand = "validate";
      const auto seq = load_source(validate_src, rep);
      const auto violations = hecke::sources::validate_kim_sarnak(seq);
      rep.columns = {"p", "a_p", "bound"};
      for (const auto& v : violations)
        rep.add_row({std::to_string(v.p), format_float(v.a), format_float(v.bound)});
      rep.add_verdict("kim_sarnak", violations.empty(),
                      std::to_string(violations.size()) + " violation(s)");
      return emit_report(rep, validate_out);
    }

    if (*ident_cmd) {
      Report rep;
      rep.subcommand = "identities";
      rep.config_entry("samples", std::to_string(ident_samples));
      rep.config_entry("seed", std::to_string(ident_seed));
      hecke::Rng rng(ident_seed);
      const int ks[] = {3, 4, 6, 8};
      double worst_disc[4] = {0, 0, 0, 0};
      double worst_trace[4] = {0, 0, 0, 0};
      constexpr double kPi = 3.14159265358979323846;
      for (std::size_t i = 0; i < ident_samples; ++i) {
        const double theta = kPi * rng.uniform();
        const auto sp = hecke::satake::satake_from_eigenvalue(
            2.0 * std::cos(theta), {1.0, 0.0});
        for (int j = 0; j < 4; ++j) {
          worst_disc[j] = std::max(worst_disc[j],
                                   hecke::satake::verify_cg_identity(sp, ks[j]));
          worst_trace[j] = std::max(
              worst_trace[j], hecke::satake::trace_moment_residual(sp, ks[j]));
        }
      }
      rep.columns = {"k", "max_multiset_discrepancy", "max_trace_residual"};
      bool ok = true;
      for (int j = 0; j < 4; ++j) {
        rep.add_row({std::to_string(ks[j]), format_float(worst_disc[j]),
                     format_float(worst_trace[j])});
        ok = ok && worst_disc[j] < 1e-12 && worst_trace[j] < 1e-10;
      }
      rep.add_verdict("clebsch_gordan", ok);
      return emit_report(rep, ident_out);
    }

    if (*moments_cmd) {
      Report rep;
      rep.subcommand = "moments";
      const auto seq = load_source(moments_src, rep);
      const auto grid = make_grid(moments_grid, truncation_of(seq), rep);
      rep.config_entry("tol", format_float(moments_tol));
      const auto rows = hecke::dirichlet::moment_profile(seq, grid);
      rep.columns = {"k", "s", "raw_ratio", "normalized", "expected", "target", "flag"};
      bool consistent = true;
      for (const auto& r : rows) {
        const bool flagged =
            !r.upper_bound_target &&
            std::abs(r.normalized - r.expected) >
                moments_tol * std::max(1.0, std::abs(r.expected));
        if (flagged) consistent = false;
        rep.add_row({std::to_string(r.k), format_float(r.s),
                     format_float(r.raw_ratio), format_float(r.normalized),
                     format_float(r.expected),
                     r.upper_bound_target ? "upper_bound" : "equality",
                     flagged ? "violates_expectation" : "ok"});
      }
      rep.add_verdict("moment_consistency", consistent);
      return emit_report(rep, moments_out);
    }

    if (*density_cmd) {
      Report rep;
      rep.subcommand = "density";
      const auto seq = load_source(density_src, rep);
      const auto grid = make_grid(density_grid, truncation_of(seq), rep);
      rep.config_entry("threshold", format_float(density_threshold));
      const auto est = hecke::dirichlet::upper_density_estimate(
          seq, hecke::dirichlet::ThresholdSet::greater_than(density_threshold),
          grid);
      rep.columns = {"s", "ratio"};
      for (const auto& [s, r] : est.per_point)
        rep.add_row({format_float(s), format_float(r)});
      rep.config_entry("density_estimate", format_float(est.value));
      rep.config_entry("subset_size", std::to_string(est.subset_size));
      if (density_delta) {
        rep.config_entry("delta", format_float(*density_delta));
        rep.add_verdict("density_at_least_delta", est.value >= *density_delta,
                        "estimate " + format_float(est.value));
      }
      return emit_report(rep, density_out);
    }

    if (*theorem_cmd) {
      Report rep;
      rep.subcommand = "theorem";
      const auto seq = load_source(theorem_src, rep);
      const auto grid = make_grid(theorem_grid, truncation_of(seq), rep);
      rep.config_entry("threshold", format_float(theorem_threshold));
      rep.config_entry("delta", format_float(theorem_delta));
      const auto check = hecke::dirichlet::theorem_check(seq, theorem_threshold,
                                                         theorem_delta, grid);
      rep.columns = {"s", "ratio"};
      for (const auto& [s, r] : check.estimate.per_point)
        rep.add_row({format_float(s), format_float(r)});
      rep.config_entry("density_estimate", format_float(check.estimate.value));
      rep.add_verdict("theorem", check.pass,
                      "estimate " + format_float(check.estimate.value) +
                          " vs delta " + format_float(theorem_delta));
      return emit_report(rep, theorem_out);
    }

    if (*solve_cmd) {
      Report rep;
      rep.subcommand = "solve";
      rep.config_entry("delta", format_float(solve_delta));
      rep.config_entry("m4", format_float(solve_m.M4));
      rep.config_entry("m6", format_float(solve_m.M6));
      rep.config_entry("m8", format_float(solve_m.M8));
      const auto sol = hecke::optimizer::solve_constants(solve_m, solve_delta);
      rep.columns = {"d", "beta", "alpha", "threshold_c", "delta", "residual",
                     "product", "check_eq1", "check_eq2"};
      rep.add_row(
          {format_float(sol.d), format_float(sol.beta), format_float(sol.alpha),
           format_float(sol.threshold_c), format_float(sol.delta),
           format_float(sol.residual),
           format_float((solve_m.M4 - sol.d) * sol.beta),
           format_float((solve_m.M4 - sol.d) * (1.0 - sol.beta)),
           format_float(hecke::optimizer::lemma_bound(sol.d, solve_m) *
                        (1.0 - sol.alpha))});
      std::vector<double> d_grid;
      d_grid.reserve(solve_dichotomy_points);
      for (int i = 0; i < solve_dichotomy_points; ++i)
        d_grid.push_back(0.01 + (solve_m.M4 - 0.02) * i /
                                    double(solve_dichotomy_points - 1));
      const auto dich = hecke::optimizer::dichotomy_check(sol, solve_m, d_grid);
      rep.add_verdict("solution_residual", sol.residual < 1e-9);
      rep.add_verdict("dichotomy", dich.pass, dich.detail);
      return emit_report(rep, solve_out);
    }

    if (*sweep_cmd) {
      Report rep;
      rep.subcommand = "sweep";
      rep.config_entry("deltas", sweep_deltas);
      std::vector<double> deltas;
      std::stringstream ss(sweep_deltas);
      std::string tok;
      while (std::getline(ss, tok, ',')) deltas.push_back(std::stod(tok));
      const auto rows = hecke::optimizer::tradeoff_sweep(sweep_m, deltas);
      rep.columns = {"delta", "feasible", "threshold_c", "d", "beta", "alpha", "error"};
      for (const auto& r : rows) {
        if (r.feasible)
          rep.add_row({format_float(r.delta), "yes",
                       format_float(r.solution.threshold_c),
                       format_float(r.solution.d), format_float(r.solution.beta),
                       format_float(r.solution.alpha), ""});
        else
          rep.add_row({format_float(r.delta), "no", "", "", "", "", r.error});
      }
      return emit_report(rep, sweep_out);
    }

    if (*audit_cmd) {
      Report rep;
      rep.subcommand = "audit";
      const auto seq = load_source(audit_src, rep);
      const auto grid = make_grid(audit_grid, truncation_of(seq), rep);
      rep.config_entry("delta", format_float(audit_delta));
      const auto audit =
          hecke::optimizer::inequality_audit(seq, grid, {}, audit_delta);
      rep.columns = {"inequality", "s", "lhs", "rhs", "margin", "ok"};
      for (const auto& m : audit.margins)
        rep.add_row({m.name, format_float(m.s), format_float(m.lhs),
                     format_float(m.rhs), format_float(m.margin),
                     m.ok ? "yes" : "no"});
      rep.add_verdict("inequality_audit", audit.pass);
      return emit_report(rep, audit_out);
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
