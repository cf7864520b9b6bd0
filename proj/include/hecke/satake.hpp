#pragma once

// Local Satake-parameter algebra: symmetric/tensor power eigenvalue multisets,
// Euler factors, and the k = 3,4,6,8 Clebsch-Gordan product identities.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hecke::satake {

using Complex = std::complex<double>;

struct SatakeParams {
  Complex alpha;
  Complex beta;
  Complex omega;   // central character value, alpha * beta
  bool tempered;   // |alpha| = |beta| = 1

  SatakeParams(Complex a, Complex b, Complex w) : alpha(a), beta(b), omega(w) {
    const double scale = std::max(std::abs(w), 1.0);
    if (std::abs(a * b - w) > 1e-12 * scale)
      throw std::invalid_argument("SatakeParams: alpha*beta != omega");
    tempered = std::abs(std::abs(a) - 1.0) < 1e-12 &&
               std::abs(std::abs(b) - 1.0) < 1e-12;
  }

  Complex trace() const { return alpha + beta; }
};

// alpha, beta are the roots of x^2 - a x + omega. Ordering is deterministic:
// the root with the larger (imag, real) pair comes first, so alpha carries the
// nonnegative imaginary part.
inline SatakeParams satake_from_eigenvalue(double a, Complex omega) {
  if (omega == Complex(0.0, 0.0))
    throw std::invalid_argument("satake_from_eigenvalue: omega must be nonzero");
  const Complex half(a / 2.0, 0.0);
  const Complex root = std::sqrt(half * half - omega);
  Complex r1 = half + root;
  Complex r2 = half - root;
  auto key = [](Complex z) { return std::make_pair(z.imag(), z.real()); };
  if (key(r1) < key(r2)) std::swap(r1, r2);
  return SatakeParams(r1, r2, omega);
}

// A representation piece appearing in a Clebsch-Gordan decomposition:
// either the k-fold tensor power itself, or Sym^m (x) omega^j, or a
// Rankin-Selberg pairing of two such twisted symmetric powers.
// Sym^0 (x) omega^j is the one-dimensional piece omega^j.
struct Label {
  enum class Kind { TensorPower, Sym, Pair };

  Kind kind = Kind::Sym;
  int k = 0;               // tensor power
  int sym_a = 1, tw_a = 0;
  int sym_b = 0, tw_b = 0;  // second factor when kind == Pair

  static Label tensor(int k) {
    Label l;
    l.kind = Kind::TensorPower;
    l.k = k;
    return l;
  }
  static Label sym(int m, int twist = 0) {
    Label l;
    l.sym_a = m;
    l.tw_a = twist;
    return l;
  }
  static Label character(int power) { return sym(0, power); }
  static Label pair(const Label& x, const Label& y) {
    if (x.kind != Kind::Sym || y.kind != Kind::Sym)
      throw std::invalid_argument("Label::pair: factors must be Sym labels");
    Label l;
    l.kind = Kind::Pair;
    l.sym_a = x.sym_a;
    l.tw_a = x.tw_a;
    l.sym_b = y.sym_a;
    l.tw_b = y.tw_a;
    return l;
  }

  int dimension() const {
    switch (kind) {
      case Kind::TensorPower: return 1 << k;
      case Kind::Sym: return sym_a + 1;
      case Kind::Pair: return (sym_a + 1) * (sym_b + 1);
    }
    return 0;
  }

  std::string str() const {
    auto one = [](int m, int tw) {
      std::string s;
      if (m == 0) {
        s = tw == 0 ? "1" : "w";
      } else if (m == 1) {
        s = "pi";
      } else {
        s = "Sym" + std::to_string(m);
      }
      if (m > 0 && tw != 0) s += "*w";
      if (tw > 1 || (m == 0 && tw > 1)) s += "^" + std::to_string(tw);
      return s;
    };
    switch (kind) {
      case Kind::TensorPower: return "pi^x" + std::to_string(k);
      case Kind::Sym: return one(sym_a, tw_a);
      case Kind::Pair: return one(sym_a, tw_a) + " x " + one(sym_b, tw_b);
    }
    return "?";
  }
};

struct EigenvalueMultiset {
  std::vector<Complex> values;
  Label label;

  Complex trace() const {
    Complex t(0.0, 0.0);
    for (const Complex& v : values) t += v;
    return t;
  }
};

inline Complex cpow(Complex z, int n) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

// Eigenvalues of A^(x)k: alpha^i beta^(k-i) with binomial multiplicity.
inline EigenvalueMultiset tensor_power_eigenvalues(const SatakeParams& sp, int k) {
  if (k < 1 || k > 8)
    throw std::invalid_argument("tensor_power_eigenvalues: k must be in 1..8");
  EigenvalueMultiset out;
  out.label = Label::tensor(k);
  out.values.reserve(std::size_t(1) << k);
  for (int i = 0; i <= k; ++i) {
    // C(k, i) without overflow concerns at k <= 8
    long long mult = 1;
    for (int j = 0; j < i; ++j) mult = mult * (k - j) / (j + 1);
    const Complex v = cpow(sp.alpha, i) * cpow(sp.beta, k - i);
    for (long long m = 0; m < mult; ++m) out.values.push_back(v);
  }
  return out;
}

inline EigenvalueMultiset component_eigenvalues(const SatakeParams& sp,
                                                const Label& label) {
  auto sym_values = [&](int m, int tw) {
    std::vector<Complex> vals;
    vals.reserve(m + 1);
    const Complex twist = cpow(sp.omega, tw);
    for (int i = 0; i <= m; ++i)
      vals.push_back(cpow(sp.alpha, m - i) * cpow(sp.beta, i) * twist);
    return vals;
  };
  EigenvalueMultiset out;
  out.label = label;
  switch (label.kind) {
    case Label::Kind::TensorPower:
      return tensor_power_eigenvalues(sp, label.k);
    case Label::Kind::Sym:
      out.values = sym_values(label.sym_a, label.tw_a);
      return out;
    case Label::Kind::Pair: {
      const auto xs = sym_values(label.sym_a, label.tw_a);
      const auto ys = sym_values(label.sym_b, label.tw_b);
      out.values.reserve(xs.size() * ys.size());
      for (const Complex& x : xs)
        for (const Complex& y : ys) out.values.push_back(x * y);
      return out;
    }
  }
  throw std::invalid_argument("component_eigenvalues: unsupported label");
}

struct CGDecomposition {
  int k;
  std::vector<std::pair<Label, int>> parts;

  int total_dimension() const {
    int d = 0;
    for (const auto& [label, mult] : parts) d += mult * label.dimension();
    return d;
  }
};

inline CGDecomposition cg_decomposition(int k) {
  CGDecomposition d;
  d.k = k;
  const Label pi = Label::sym(1);
  switch (k) {
    case 3:
      d.parts = {{Label::sym(3), 1}, {Label::sym(1, 1), 2}};
      break;
    case 4:
      d.parts = {{Label::sym(4), 1}, {Label::sym(2, 1), 3}, {Label::character(2), 2}};
      break;
    case 6:
      d.parts = {{Label::pair(Label::sym(3), Label::sym(3)), 1},
                 {Label::pair(Label::sym(3), Label::sym(1, 1)), 4},
                 {Label::pair(pi, Label::sym(1, 2)), 4}};
      break;
    case 8:
      d.parts = {{Label::pair(Label::sym(4), Label::sym(4)), 1},
                 {Label::pair(Label::sym(4), Label::sym(2, 1)), 6},
                 {Label::pair(Label::sym(2, 1), Label::sym(2, 1)), 9},
                 {Label::sym(4, 2), 4},
                 {Label::sym(2, 3), 12},
                 {Label::character(4), 4}};
      break;
    default:
      throw std::invalid_argument("cg_decomposition: k must be one of 3,4,6,8");
  }
  return d;
}

inline void canonical_sort(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Max absolute difference between the tensor-power eigenvalue multiset and the
// multiplicity-weighted union over the decomposition, after canonical sorting.
inline double verify_cg_identity(const SatakeParams& sp, int k) {
  auto lhs = tensor_power_eigenvalues(sp, k).values;
  std::vector<Complex> rhs;
  rhs.reserve(lhs.size());
  for (const auto& [label, mult] : cg_decomposition(k).parts) {
    const auto vals = component_eigenvalues(sp, label).values;
    for (int m = 0; m < mult; ++m)
      rhs.insert(rhs.end(), vals.begin(), vals.end());
  }
  if (lhs.size() != rhs.size())
    throw std::logic_error("verify_cg_identity: dimension mismatch");
  canonical_sort(lhs);
  canonical_sort(rhs);
  // Greedy nearest-neighbor matching instead of elementwise comparison:
  // rounding can reorder entries whose real parts tie (conjugate pairs), so
  // positional pairing after the sort would report spurious O(1) gaps.
  std::vector<char> used(rhs.size(), 0);
  auto less = [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  double worst = 0.0;
  for (const Complex& l : lhs) {
    const std::size_t lo =
        std::lower_bound(rhs.begin(), rhs.end(), l, less) - rhs.begin();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = rhs.size();
    auto consider = [&](std::size_t j) {
      if (used[j]) return;
      const double d2 = std::norm(l - rhs[j]);
      if (d2 < best) {
        best = d2;
        best_j = j;
      }
    };
    // sorted order: once the real-part gap alone exceeds the best distance,
    // no later candidate can win
    for (std::size_t j = lo; j < rhs.size(); ++j) {
      const double dr = rhs[j].real() - l.real();
      if (dr * dr > best) break;
      consider(j);
    }
    for (std::size_t j = lo; j-- > 0;) {
      const double dr = l.real() - rhs[j].real();
      if (dr * dr > best) break;
      consider(j);
    }
    used[best_j] = 1;
    worst = std::max(worst, std::sqrt(best));
  }
  return worst;
}

// |a^k - sum of mult * trace(part)|, the identity in log-derivative form.
inline double trace_moment_residual(const SatakeParams& sp, int k) {
  const Complex a = sp.trace();
  Complex rhs(0.0, 0.0);
  for (const auto& [label, mult] : cg_decomposition(k).parts)
    rhs += double(mult) * component_eigenvalues(sp, label).trace();
  return std::abs(cpow(a, k) - rhs);
}

// prod (1 - lambda p^-s)^-1 over the multiset.
inline Complex local_factor(const EigenvalueMultiset& ev, long long p, double s) {
  if (p < 2) throw std::invalid_argument("local_factor: p must be prime");
  if (s <= 1.0) throw std::invalid_argument("local_factor: s must exceed 1");
  const double ps = std::pow(static_cast<double>(p), -s);
  Complex prod(1.0, 0.0);
  for (const Complex& lambda : ev.values) {
    const Complex factor = Complex(1.0, 0.0) - lambda * ps;
    if (std::abs(factor) < 1e-12)
      throw std::domain_error("local_factor: pole, determinant vanishes at p=" +
                              std::to_string(p));
    prod *= factor;
  }
  return Complex(1.0, 0.0) / prod;
}

}  // namespace hecke::satake
