#pragma once

// Partial Dirichlet-series machinery: subset power sums, the log(1/(s-1))
// normalization, finite-grid upper-density estimates, and moment profiles.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hecke/sources.hpp"

namespace hecke::dirichlet {

using sources::EigenvalueSequence;

// Predicate selecting a subset of primes by (p, a_p).
struct ThresholdSet {
  enum class Kind {
    All,
    Positive,        // A: a > 0
    NonPositive,     // B: a <= 0
    FourthPowerAtLeast,  // S_beta: |a|^4 >= t
    CubeAtLeast,         // T_alpha: |a|^3 >= t
    GreaterThan,     // a > c
    Custom,
  };

  Kind kind = Kind::All;
  double parameter = 0.0;
  std::function<bool(long long, double)> predicate;

  bool contains(long long p, double a) const {
    switch (kind) {
      case Kind::All: return true;
      case Kind::Positive: return a > 0.0;
      case Kind::NonPositive: return a <= 0.0;
      case Kind::FourthPowerAtLeast: {
        const double a2 = a * a;
        return a2 * a2 >= parameter;
      }
      case Kind::CubeAtLeast: {
        const double aa = std::abs(a);
        return aa * aa * aa >= parameter;
      }
      case Kind::GreaterThan: return a > parameter;
      case Kind::Custom: return predicate(p, a);
    }
    return false;
  }

  static ThresholdSet all() { return {}; }
  static ThresholdSet positive() { return {Kind::Positive, 0.0, nullptr}; }
  static ThresholdSet non_positive() { return {Kind::NonPositive, 0.0, nullptr}; }
  static ThresholdSet fourth_power_at_least(double t) {
    return {Kind::FourthPowerAtLeast, t, nullptr};
  }
  static ThresholdSet cube_at_least(double t) {
    return {Kind::CubeAtLeast, t, nullptr};
  }
  static ThresholdSet greater_than(double c) {
    return {Kind::GreaterThan, c, nullptr};
  }
  static ThresholdSet custom(std::function<bool(long long, double)> f) {
    ThresholdSet s;
    s.kind = Kind::Custom;
    s.predicate = std::move(f);
    return s;
  }
};

// Evaluation grid for the s -> 1+ surrogate. Every point must satisfy
// 1 < s < 2 (so log(1/(s-1)) is positive) and the truncation coupling
// (s-1) ln(X) >= coupling_constant; below that the truncated sum saturates
// and the ratio is meaningless.
struct SGrid {
  std::vector<double> points;  // descending
  long long truncation_limit = 0;
  double coupling_constant = 3.0;

  SGrid(std::vector<double> pts, long long truncation, double coupling = 3.0)
      : points(std::move(pts)),
        truncation_limit(truncation),
        coupling_constant(coupling) {
    if (truncation_limit < 2)
      throw std::invalid_argument("SGrid: truncation limit must be >= 2");
    std::sort(points.begin(), points.end(), std::greater<double>());
    for (double s : points) validate_point(s);
    if (points.empty()) throw std::invalid_argument("SGrid: no grid points");
  }

  void validate_point(double s) const {
    if (!(s > 1.0) || !(s < 2.0))
      throw std::invalid_argument("SGrid: s must lie in (1, 2), got " +
                                  std::to_string(s));
    if ((s - 1.0) * std::log(static_cast<double>(truncation_limit)) <
        coupling_constant)
      throw std::invalid_argument(
          "SGrid: coupling violated at s=" + std::to_string(s) +
          " (truncation too small for this s)");
  }

  // s = 1 + 10^{-j/2}, j = 0..max_j, keeping the points that satisfy the
  // coupling rule. j = 0 gives s = 2, where the normalizing log vanishes, so
  // the usable points start at j = 1.
  static SGrid standard(long long truncation, double coupling = 3.0,
                        int max_j = 4) {
    std::vector<double> pts;
    const double lnx = std::log(static_cast<double>(truncation));
    for (int j = 1; j <= max_j; ++j) {
      const double s = 1.0 + std::pow(10.0, -0.5 * j);
      if ((s - 1.0) * lnx >= coupling) pts.push_back(s);
    }
    if (pts.empty())
      throw std::invalid_argument(
          "SGrid: truncation limit too small for any standard grid point");
    return SGrid(std::move(pts), truncation, coupling);
  }
};

namespace detail {
struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}
}  // namespace detail

// Sum over the subset of a_p^k p^{-s} (|a_p|^k when not signed). Fixed
// ascending-prime order with compensated summation.
inline double subset_power_sum(const EigenvalueSequence& seq,
                               const ThresholdSet& set, int k, bool signed_sum,
                               double s) {
  if (s <= 1.0) throw std::invalid_argument("subset_power_sum: s must exceed 1");
  if (k < 0 || k > 8)
    throw std::invalid_argument("subset_power_sum: k must be in 0..8");
  detail::KahanSum acc;
  for (const auto& e : seq.entries) {
    if (std::binary_search(seq.excluded.begin(), seq.excluded.end(), e.p))
      continue;
    if (!set.contains(e.p, e.a)) continue;
    const double base = signed_sum ? e.a : std::abs(e.a);
    acc.add(detail::pow_int(base, k) * std::pow(static_cast<double>(e.p), -s));
  }
  return acc.sum;
}

// ratio(s) = subset_power_sum(..., s) / log(1/(s-1)) per grid point.
inline std::vector<std::pair<double, double>> ratio_profile(
    const EigenvalueSequence& seq, const ThresholdSet& set, int k,
    bool signed_sum, const SGrid& grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.points.size());
  for (double s : grid.points) {
    grid.validate_point(s);
    const double lg = std::log(1.0 / (s - 1.0));
    out.emplace_back(s, subset_power_sum(seq, set, k, signed_sum, s) / lg);
  }
  return out;
}

struct MomentProfileRow {
  int k;
  double s;                // grid point the ratios were taken at
  double raw_ratio;        // sum / log(1/(s-1))
  double normalized;       // ratio_k / ratio_0, the primary statistic
  double expected;         // asymptotic pole-order constant
  bool upper_bound_target; // true for k = 6, 8 (equality not guaranteed)
};

// Self-normalized moment ratios at the grid point closest to 1, compared to
// the pole-order constants (1, 0, 2, 5, 14). Odd k uses the signed sum.
inline std::vector<MomentProfileRow> moment_profile(
    const EigenvalueSequence& seq, const SGrid& grid) {
  const double s = grid.points.back();  // descending order: last is nearest 1
  grid.validate_point(s);
  const double lg = std::log(1.0 / (s - 1.0));
  const double ratio0 =
      subset_power_sum(seq, ThresholdSet::all(), 0, false, s) / lg;
  const int ks[] = {2, 3, 4, 6, 8};
  const double expected[] = {1.0, 0.0, 2.0, 5.0, 14.0};
  std::vector<MomentProfileRow> rows;
  for (int i = 0; i < 5; ++i) {
    const int k = ks[i];
    const double ratio =
        subset_power_sum(seq, ThresholdSet::all(), k, k % 2 == 1, s) / lg;
    rows.push_back({k, s, ratio, ratio0 != 0.0 ? ratio / ratio0 : 0.0,
                    expected[i], k >= 6});
  }
  return rows;
}

struct DensityEstimate {
  double value = 0.0;                               // max of per-point ratios
  std::vector<std::pair<double, double>> per_point; // (s, ratio)
  long long truncation_limit = 0;
  std::size_t subset_size = 0;
};

// Finite-grid surrogate for the upper Dirichlet density of the subset.
inline DensityEstimate upper_density_estimate(const EigenvalueSequence& seq,
                                              const ThresholdSet& set,
                                              const SGrid& grid) {
  DensityEstimate est;
  est.per_point = ratio_profile(seq, set, 0, false, grid);
  est.truncation_limit = grid.truncation_limit;
  for (const auto& e : seq.entries)
    if (set.contains(e.p, e.a)) ++est.subset_size;
  est.value = 0.0;
  for (const auto& [s, r] : est.per_point) est.value = std::max(est.value, r);
  return est;
}

struct TheoremCheck {
  bool pass = false;
  double threshold = 0.0;
  double delta = 0.0;
  DensityEstimate estimate;
};

// Does {p : a_p > c} have estimated upper density at least delta?
inline TheoremCheck theorem_check(const EigenvalueSequence& seq, double c,
                                  double delta, const SGrid& grid) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("theorem_check: delta must be in (0, 1)");
  TheoremCheck out;
  out.threshold = c;
  out.delta = delta;
  out.estimate = upper_density_estimate(seq, ThresholdSet::greater_than(c), grid);
  out.pass = out.estimate.value >= delta;
  return out;
}

}  // namespace hecke::dirichlet
