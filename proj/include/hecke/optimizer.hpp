#pragma once

// Constant machinery for the threshold/density trade-off: the simultaneous
// equations for (d, beta, alpha), the dichotomy verification, and the
// finite-sum inequality audit.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/dirichlet.hpp"

namespace hecke::optimizer {

using dirichlet::EigenvalueSequence;
using dirichlet::SGrid;
using dirichlet::ThresholdSet;

// Pole-order constants of the even product L-functions, plus the vanishing
// odd third moment. Defaults are the proven values (1, 0, 2, 5, 14).
struct MomentBounds {
  double M2 = 1.0;
  double M3 = 0.0;
  double M4 = 2.0;
  double M6 = 5.0;
  double M8 = 14.0;
};

// g(d) = d^{5/4} / (M8 - (M4-d)^2)^{1/4}, the lower bound on the normalized
// sum of |a_p|^3 over the positive set.
inline double lemma_bound(double d, const MomentBounds& m = {}) {
  if (!(d > 0.0)) throw std::domain_error("lemma_bound: d must be positive");
  const double den = m.M8 - (m.M4 - d) * (m.M4 - d);
  if (!(den > 0.0))
    throw std::domain_error("lemma_bound: (M4-d)^2 must be below M8");
  return std::pow(d, 1.25) / std::pow(den, 0.25);
}

struct ConstantSolution {
  double d = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double threshold_c = 0.0;  // ((M4-d) beta)^{1/4}
  double delta = 0.0;
  double residual = 0.0;     // matching residual of the alpha-equation at d
};

namespace detail {

inline double beta_of(double d, const MomentBounds& m, double delta) {
  return 1.0 - std::sqrt(m.M8 * delta) / (m.M4 - d);
}
inline double alpha_of(double d, const MomentBounds& m, double delta) {
  return 1.0 - std::sqrt(m.M6 * delta) / lemma_bound(d, m);
}
inline double match_residual(double d, const MomentBounds& m, double delta) {
  return std::pow((m.M4 - d) * beta_of(d, m, delta), 0.25) -
         std::cbrt(lemma_bound(d, m) * alpha_of(d, m, delta));
}

// Sub-interval of (0, M4) where all powers stay real and beta, alpha land in
// (0, 1): d below M4 - sqrt(M8 delta), above the point where g(d) passes
// sqrt(M6 delta), and with (M4-d)^2 < M8.
inline std::pair<double, double> feasible_interval(const MomentBounds& m,
                                                   double delta) {
  double hi = m.M4 - std::sqrt(m.M8 * delta);
  // keep (M4-d)^2 < M8 on the low side as well
  double lo = std::max(1e-9, m.M4 - std::sqrt(m.M8));
  // g is strictly increasing; bisect for g(d) = sqrt(M6 delta)
  const double target = std::sqrt(m.M6 * delta);
  double a = lo, b = hi;
  if (lemma_bound(b, m) <= target)
    throw std::invalid_argument("solve_constants: delta infeasible (alpha)");
  if (lemma_bound(a + 1e-12, m) < target) {
    for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
      const double mid = 0.5 * (a + b);
      (lemma_bound(mid, m) < target ? a : b) = mid;
    }
    lo = b;
  }
  if (!(lo < hi))
    throw std::invalid_argument("solve_constants: empty feasible interval");
  return {lo, hi};
}

}  // namespace detail

// Eliminate beta(d), alpha(d) from the two density equations, then find the
// root of the alpha-equation mismatch by a 512-cell bracket scan followed by
// bisection to 1e-12.
inline ConstantSolution solve_constants(const MomentBounds& m, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("solve_constants: delta must be in (0, 1)");
  const auto [lo, hi] = detail::feasible_interval(m, delta);
  const int cells = 512;
  const double step = (hi - lo) / cells;
  // small inset so beta, alpha stay strictly inside (0, 1)
  double a = lo + 1e-9 * (hi - lo), b = 0.0;
  double fa = detail::match_residual(a, m, delta);
  bool bracketed = false;
  for (int i = 1; i <= cells; ++i) {
    const double d = (i == cells) ? hi - 1e-9 * (hi - lo) : lo + i * step;
    const double fd = detail::match_residual(d, m, delta);
    if (fa * fd <= 0.0) {
      b = d;
      bracketed = true;
      break;
    }
    a = d;
    fa = fd;
  }
  if (!bracketed)
    throw std::invalid_argument(
        "solve_constants: no sign change in the feasible interval");
  while (b - a > 1e-12) {
    const double mid = 0.5 * (a + b);
    if (fa * detail::match_residual(mid, m, delta) <= 0.0)
      b = mid;
    else {
      a = mid;
      fa = detail::match_residual(a, m, delta);
    }
  }
  ConstantSolution sol;
  sol.d = 0.5 * (a + b);
  sol.beta = detail::beta_of(sol.d, m, delta);
  sol.alpha = detail::alpha_of(sol.d, m, delta);
  sol.delta = delta;
  sol.threshold_c = std::pow((m.M4 - sol.d) * sol.beta, 0.25);
  sol.residual = std::abs(detail::match_residual(sol.d, m, delta));
  if (!(sol.beta > 0.0 && sol.beta < 1.0 && sol.alpha > 0.0 && sol.alpha < 1.0))
    throw std::invalid_argument("solve_constants: root leaves (0,1) for beta/alpha");
  return sol;
}

struct DichotomyReport {
  bool pass = false;
  double d_star = 0.0;
  bool f1_decreasing = false;
  bool f2_increasing = false;
  // first grid point where the claimed strict inequality fails, if any
  std::optional<double> first_violation;
  std::string detail;
};

// With beta, alpha frozen at the solution: f1(d) = (M4-d)^2 (1-beta)^2 must
// exceed M8*delta for every d below d*, and f2(d) = g(d)^2 (1-alpha)^2 must
// exceed M6*delta for every d above d*. Both claims are checked over the grid
// together with the monotonicity that powers the case split.
inline DichotomyReport dichotomy_check(const ConstantSolution& sol,
                                       const MomentBounds& m,
                                       const std::vector<double>& d_grid) {
  DichotomyReport rep;
  rep.d_star = sol.d;
  rep.f1_decreasing = true;
  rep.f2_increasing = true;
  const double slack = 1e-12;
  const double one_minus_beta2 = (1.0 - sol.beta) * (1.0 - sol.beta);
  const double one_minus_alpha2 = (1.0 - sol.alpha) * (1.0 - sol.alpha);
  auto f1 = [&](double d) {
    return (m.M4 - d) * (m.M4 - d) * one_minus_beta2;
  };
  auto f2 = [&](double d) {
    const double g = lemma_bound(d, m);
    return g * g * one_minus_alpha2;
  };
  double prev_f1 = 0.0, prev_f2 = 0.0;
  bool have_prev = false;
  rep.pass = true;
  for (double d : d_grid) {
    if (!(d > 0.0) || !(d < m.M4)) continue;
    const double v1 = f1(d), v2 = f2(d);
    if (have_prev) {
      if (v1 >= prev_f1) rep.f1_decreasing = false;
      if (v2 <= prev_f2) rep.f2_increasing = false;
    }
    prev_f1 = v1;
    prev_f2 = v2;
    have_prev = true;
    const bool ok = (d <= sol.d) ? v1 > m.M8 * sol.delta - slack
                                 : v2 > m.M6 * sol.delta - slack;
    if (!ok && !rep.first_violation) {
      rep.first_violation = d;
      rep.pass = false;
      rep.detail = (d <= sol.d ? "f1 bound not refuted at d=" : "f2 bound not refuted at d=") +
                   std::to_string(d);
    }
  }
  if (!rep.f1_decreasing || !rep.f2_increasing) rep.pass = false;
  return rep;
}

struct SweepRow {
  double delta = 0.0;
  bool feasible = false;
  ConstantSolution solution;
  std::string error;
};

// solve_constants per delta; infeasible deltas are flagged, not fatal.
inline std::vector<SweepRow> tradeoff_sweep(const MomentBounds& m,
                                            const std::vector<double>& deltas) {
  std::vector<SweepRow> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    SweepRow row;
    row.delta = delta;
    try {
      row.solution = solve_constants(m, delta);
      row.feasible = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

struct InequalityMargin {
  std::string name;
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs, must be >= -1e-12 (scaled)
  bool ok = false;
};

struct AuditReport {
  bool pass = false;
  std::vector<InequalityMargin> margins;
};

// Every Cauchy-Schwarz and Hoelder instance from the bounding argument, recast as
// finite truncated-sum inequalities, plus the exact A/B splitting identity.
// A failure here indicates a summation bug: the inequalities hold
// unconditionally for finite sums.
inline AuditReport inequality_audit(const EigenvalueSequence& seq,
                                    const SGrid& grid,
                                    const MomentBounds& m = {},
                                    double delta = 0.01) {
  if (seq.entries.empty())
    throw std::invalid_argument("inequality_audit: empty sequence");
  const ConstantSolution sol = solve_constants(m, delta);
  const ThresholdSet A = ThresholdSet::positive();
  const ThresholdSet B = ThresholdSet::non_positive();
  const ThresholdSet all = ThresholdSet::all();
  const ThresholdSet s_beta =
      ThresholdSet::fourth_power_at_least((m.M4 - sol.d) * sol.beta);
  const ThresholdSet t_alpha =
      ThresholdSet::cube_at_least(lemma_bound(sol.d, m) * sol.alpha);

  AuditReport rep;
  rep.pass = true;
  auto sum = [&](const ThresholdSet& set, int k, double s) {
    return dirichlet::subset_power_sum(seq, set, k, false, s);
  };
  auto push = [&](const std::string& name, double s, double lhs, double rhs) {
    InequalityMargin mg;
    mg.name = name;
    mg.s = s;
    mg.lhs = lhs;
    mg.rhs = rhs;
    mg.margin = rhs - lhs;
    mg.ok = mg.margin >= -1e-12 * std::max(1.0, std::abs(rhs));
    if (!mg.ok) rep.pass = false;
    rep.margins.push_back(mg);
  };

  for (double s : grid.points) {
    // Cauchy-Schwarz (sum |a|^4)^2 <= (sum |a|^8)(sum 1) on each subset
    struct { const char* name; const ThresholdSet* set; } cs4[] = {
        {"cauchy_schwarz_4_8[S_beta]", &s_beta},
        {"cauchy_schwarz_4_8[A]", &A},
        {"cauchy_schwarz_4_8[B]", &B},
        {"cauchy_schwarz_4_8[all]", &all}};
    for (const auto& c : cs4) {
      const double l = sum(*c.set, 4, s);
      push(c.name, s, l * l, sum(*c.set, 8, s) * sum(*c.set, 0, s));
    }
    // Cauchy-Schwarz (sum |a|^3)^2 <= (sum |a|^6)(sum 1) on T_alpha
    {
      const double l = sum(t_alpha, 3, s);
      push("cauchy_schwarz_3_6[T_alpha]", s, l * l,
           sum(t_alpha, 6, s) * sum(t_alpha, 0, s));
    }
    // Hoelder with exponents (3/4, 1/4): sum |a|^3 <= (sum |a|^4)^{3/4}(sum 1)^{1/4}
    push("hoelder_3_4_1_4[A]", s, sum(A, 3, s),
         std::pow(sum(A, 4, s), 0.75) * std::pow(sum(A, 0, s), 0.25));
    // Hoelder with exponents (1/5, 4/5): sum |a|^4 <= (sum |a|^8)^{1/5}(sum |a|^3)^{4/5}
    push("hoelder_1_5_4_5[A]", s, sum(A, 4, s),
         std::pow(sum(A, 8, s), 0.2) * std::pow(sum(A, 3, s), 0.8));
    push("hoelder_1_5_4_5[B]", s, sum(B, 4, s),
         std::pow(sum(B, 8, s), 0.2) * std::pow(sum(B, 3, s), 0.8));
    // Splitting identity: sum_A |a|^3 - sum_all a^3 = sum_B |a|^3 (exact)
    {
      const double lhs = sum(A, 3, s) -
                         dirichlet::subset_power_sum(seq, all, 3, true, s);
      const double rhs = sum(B, 3, s);
      const double tol = 1e-10 * std::max(1.0, std::abs(rhs));
      InequalityMargin mg;
      mg.name = "split_identity[A,B]";
      mg.s = s;
      mg.lhs = lhs;
      mg.rhs = rhs;
      mg.margin = rhs - lhs;
      mg.ok = std::abs(mg.margin) <= tol;
      if (!mg.ok) rep.pass = false;
      rep.margins.push_back(mg);
    }
  }
  return rep;
}

}  // namespace hecke::optimizer
