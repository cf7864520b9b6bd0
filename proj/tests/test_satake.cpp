#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstring>

#include "hecke/rng.hpp"
#include "hecke/satake.hpp"

using namespace hecke::satake;
using Catch::Approx;

namespace {
SatakeParams random_unit(hecke::Rng& rng) {
  const double theta = 3.14159265358979323846 * rng.uniform();
  return satake_from_eigenvalue(2.0 * std::cos(theta), {1.0, 0.0});
}
}  // namespace

TEST_CASE("satake_from_eigenvalue basic roots") {
  const auto sp = satake_from_eigenvalue(2.0, {1.0, 0.0});
  CHECK(std::abs(sp.alpha - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(sp.beta - Complex(1.0, 0.0)) < 1e-12);
  CHECK(sp.tempered);

  const auto sp0 = satake_from_eigenvalue(0.0, {1.0, 0.0});
  CHECK(std::abs(sp0.alpha - Complex(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(sp0.beta - Complex(0.0, -1.0)) < 1e-12);
}

TEST_CASE("satake_from_eigenvalue conjugate roots on the unit circle") {
  // quadratic-formula oracle for the roots of x^2 - ax + 1
  const double a = -0.132583;
  const auto sp = satake_from_eigenvalue(a, {1.0, 0.0});
  const double im = std::sqrt(4.0 - a * a) / 2.0;
  CHECK(sp.alpha.real() == Approx(a / 2.0).margin(1e-12));
  CHECK(sp.alpha.imag() == Approx(im).margin(1e-12));
  CHECK(std::abs(sp.beta - std::conj(sp.alpha)) < 1e-12);
  CHECK(std::abs(sp.alpha) == Approx(1.0).margin(1e-12));
  CHECK(sp.alpha.real() == Approx(-0.066291).margin(1e-6));
  CHECK(sp.alpha.imag() == Approx(0.997800).margin(1e-6));
}

TEST_CASE("satake_from_eigenvalue rejects omega = 0") {
  CHECK_THROWS_AS(satake_from_eigenvalue(1.0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("satake_from_eigenvalue non-tempered inputs are accepted") {
  const auto sp = satake_from_eigenvalue(3.0, {1.0, 0.0});
  CHECK_FALSE(sp.tempered);
  CHECK(sp.alpha.imag() == Approx(0.0).margin(1e-14));
  CHECK(sp.alpha.real() > sp.beta.real());
  CHECK((sp.alpha * sp.beta).real() == Approx(1.0).margin(1e-12));
}

TEST_CASE("root ordering is deterministic bit-for-bit") {
  const auto a = satake_from_eigenvalue(0.7321, {1.0, 0.0});
  const auto b = satake_from_eigenvalue(0.7321, {1.0, 0.0});
  CHECK(std::memcmp(&a.alpha, &b.alpha, sizeof a.alpha) == 0);
  CHECK(std::memcmp(&a.beta, &b.beta, sizeof a.beta) == 0);
}

TEST_CASE("tensor power eigenvalues") {
  const auto ones = satake_from_eigenvalue(2.0, {1.0, 0.0});
  const auto t3 = tensor_power_eigenvalues(ones, 3);
  REQUIRE(t3.values.size() == 8);
  for (const auto& v : t3.values) CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-12);

  const auto ii = satake_from_eigenvalue(0.0, {1.0, 0.0});
  const auto t4 = tensor_power_eigenvalues(ii, 4);
  REQUIRE(t4.values.size() == 16);
  CHECK(std::abs(t4.trace()) < 1e-12);  // a = 0

  CHECK_THROWS_AS(tensor_power_eigenvalues(ones, 0), std::invalid_argument);
  CHECK_THROWS_AS(tensor_power_eigenvalues(ones, 9), std::invalid_argument);
}

TEST_CASE("tensor power trace equals a^k") {
  hecke::Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sp = random_unit(rng);
    const Complex a = sp.trace();
    for (int k = 1; k <= 8; ++k) {
      const Complex expected = cpow(a, k);
      const Complex got = tensor_power_eigenvalues(sp, k).trace();
      CHECK(std::abs(got - expected) <=
            1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("component eigenvalues") {
  const auto ii = satake_from_eigenvalue(0.0, {1.0, 0.0});
  const auto sym2 = component_eigenvalues(ii, Label::sym(2));
  REQUIRE(sym2.values.size() == 3);
  auto vals = sym2.values;
  canonical_sort(vals);
  CHECK(std::abs(vals[0] - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(vals[1] - Complex(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(vals[2] - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(sym2.trace() - Complex(-1.0, 0.0)) < 1e-12);

  const auto ones = satake_from_eigenvalue(2.0, {1.0, 0.0});
  const auto sym3w = component_eigenvalues(ones, Label::sym(3, 1));
  REQUIRE(sym3w.values.size() == 4);
  for (const auto& v : sym3w.values) CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("pairing trace is the product of traces") {
  hecke::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sp = random_unit(rng);
    const auto paired =
        component_eigenvalues(sp, Label::pair(Label::sym(3), Label::sym(3)));
    REQUIRE(paired.values.size() == 16);
    const Complex t3 = component_eigenvalues(sp, Label::sym(3)).trace();
    CHECK(std::abs(paired.trace() - t3 * t3) <=
          1e-10 * std::max(1.0, std::abs(t3 * t3)));
  }
}

TEST_CASE("cg_decomposition dimensions") {
  CHECK(cg_decomposition(3).total_dimension() == 8);
  CHECK(cg_decomposition(4).total_dimension() == 16);
  CHECK(cg_decomposition(6).total_dimension() == 64);
  CHECK(cg_decomposition(8).total_dimension() == 256);
  CHECK_THROWS_AS(cg_decomposition(5), std::invalid_argument);
  CHECK_THROWS_AS(cg_decomposition(2), std::invalid_argument);

  // k=3 is Sym^3 plus two twisted copies of pi
  const auto d3 = cg_decomposition(3);
  REQUIRE(d3.parts.size() == 2);
  CHECK(d3.parts[0].first.dimension() == 4);
  CHECK(d3.parts[1].first.dimension() == 2);
  CHECK(d3.parts[1].second == 2);
}

TEST_CASE("verify_cg_identity trivial cases") {
  const auto ones = satake_from_eigenvalue(2.0, {1.0, 0.0});
  for (int k : {3, 4, 6, 8}) CHECK(verify_cg_identity(ones, k) < 1e-14);
  const auto ii = satake_from_eigenvalue(0.0, {1.0, 0.0});
  CHECK(verify_cg_identity(ii, 4) < 1e-14);
}

TEST_CASE("verify_cg_identity property over random unit draws") {
  hecke::Rng rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto sp = random_unit(rng);
    CHECK(verify_cg_identity(sp, 8) < 1e-12);
  }
  // other k at a smaller volume; k=8 dominates the numerics
  hecke::Rng rng2(2025);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto sp = random_unit(rng2);
    for (int k : {3, 4, 6}) CHECK(verify_cg_identity(sp, k) < 1e-12);
  }
}

TEST_CASE("trace moment residual") {
  const auto ii = satake_from_eigenvalue(0.0, {1.0, 0.0});
  CHECK(trace_moment_residual(ii, 3) < 1e-14);  // 0 = tr Sym^3 + 0
  CHECK(trace_moment_residual(ii, 4) < 1e-14);  // 0 = 1 + 3(-1) + 2

  hecke::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto sp = random_unit(rng);
    for (int k : {3, 4, 6, 8}) CHECK(trace_moment_residual(sp, k) < 1e-10);
  }
}

TEST_CASE("local factor values") {
  EigenvalueMultiset ones{{{1.0, 0.0}, {1.0, 0.0}}, Label::sym(1)};
  CHECK(std::abs(local_factor(ones, 2, 2.0) - Complex(16.0 / 9.0, 0.0)) < 1e-12);

  EigenvalueMultiset pair{{{0.0, 1.0}, {0.0, -1.0}}, Label::sym(1)};
  const Complex v = local_factor(pair, 3, 1.5);
  CHECK(v.real() == Approx(27.0 / 28.0).margin(1e-12));
  CHECK(std::abs(v.imag()) < 1e-12);

  EigenvalueMultiset single{{{1.0, 0.0}}, Label::character(0)};
  CHECK(std::abs(local_factor(single, 5, 1.0 + 1e-9) -
                 Complex(1.25, 0.0)) < 1e-7);
}

TEST_CASE("local factor conjugate pair is real at real s") {
  hecke::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sp = random_unit(rng);
    EigenvalueMultiset ev{{sp.alpha, sp.beta}, Label::sym(1)};
    CHECK(std::abs(local_factor(ev, 7, 1.25).imag()) < 1e-12);
  }
}

TEST_CASE("local factor pole is reported") {
  // lambda p^{-s} = 1 exactly: lambda = 2^{1.5} at p=2, s=1.5
  EigenvalueMultiset ev{{{std::pow(2.0, 1.5), 0.0}}, Label::character(0)};
  CHECK_THROWS_AS(local_factor(ev, 2, 1.5), std::domain_error);
  CHECK_THROWS_AS(local_factor(ev, 2, 0.5), std::invalid_argument);  // s <= 1
}
