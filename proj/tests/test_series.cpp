#include <random>

#include "doctest.h"
#include "qsym/series.hpp"

using namespace qsym;

namespace {

// Small-integer coefficients keep every product exact in double precision,
// so ring identities can be compared with ==.
TruncatedSeries random_series(std::mt19937& rng, int nvars, int order) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> deg(0, order);
  TruncatedSeries s(nvars, order);
  for (int t = 0; t < 8; ++t) {
    Exponent e{0, 0, 0};
    int budget = deg(rng);
    for (int a = 0; a < nvars && budget > 0; ++a) {
      std::uniform_int_distribution<int> take(0, budget);
      e[a] = a + 1 == nvars ? budget : take(rng);
      budget -= e[a];
    }
    s.set(e, cplx(coef(rng), coef(rng)));
  }
  return s;
}

}  // namespace

TEST_CASE("add: identity, inverse, truncation to the smaller order") {
  auto f = TruncatedSeries::from_coeffs(4, {1, 1});
  CHECK(f + TruncatedSeries(1, 4) == f);

  auto sq = TruncatedSeries::from_coeffs(4, {0, 0, 1});
  CHECK((sq + (-sq)).is_zero());

  auto a = TruncatedSeries::from_coeffs(2, {1, 2});
  auto b = TruncatedSeries::from_coeffs(3, {0, 1, 0, 1});
  auto sum = add(a, b);
  CHECK(sum.order() == 2);
  CHECK(sum == TruncatedSeries::from_coeffs(2, {1, 3}));
}

TEST_CASE("multiply: difference of squares, identity, geometric series") {
  auto p = TruncatedSeries::from_coeffs(5, {1, 1});
  auto m = TruncatedSeries::from_coeffs(5, {1, -1});
  CHECK(p * m == TruncatedSeries::from_coeffs(5, {1, 0, -1}));

  auto one = TruncatedSeries::constant(1, 5, 1.0);
  CHECK(p * one == p);

  const int n = 12;
  TruncatedSeries geo(1, n);
  for (int k = 0; k <= n; ++k) geo.set(k, 1.0);
  // (1 - x) * sum_{k<=N} x^k = 1 - x^{N+1}, and x^{N+1} is truncated away.
  CHECK(multiply(TruncatedSeries::from_coeffs(n, {1, -1}), geo) == TruncatedSeries::constant(1, n, 1.0));
}

TEST_CASE("multiply rejects mismatched variable counts") {
  CHECK_THROWS_AS(TruncatedSeries(1, 3) * TruncatedSeries(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedSeries(1, 3) + TruncatedSeries(2, 3), std::invalid_argument);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(TruncatedSeries::monomial(1, 5, {3, 0, 0}), 0) ==
        TruncatedSeries::monomial(1, 4, {2, 0, 0}, 3.0));
  CHECK(differentiate(TruncatedSeries::constant(1, 5, 7.0), 0).is_zero());
  auto f = TruncatedSeries::monomial(2, 6, {2, 2, 0});
  CHECK(differentiate(f, 1) == TruncatedSeries::monomial(2, 5, {2, 1, 0}, 2.0));
  CHECK(differentiate(f, 0).order() == 5);
  CHECK_THROWS(differentiate(f, 2));
}

TEST_CASE("scale_argument") {
  const cplx q = std::polar(1.0, 0.4);
  auto sq = TruncatedSeries::monomial(1, 4, {2, 0, 0});
  CHECK(std::abs(scale_argument(sq, 0, q).coeff(2) - q * q) < 1e-15);

  auto f = TruncatedSeries::from_coeffs(6, {1, -2, 3, 0.5});
  CHECK(scale_argument(f, 0, 1.0) == f);

  // 1/(1-x) truncated, scaled by 0.5, against the term-wise oracle 0.5^k.
  const int n = 30;
  TruncatedSeries geo(1, n);
  for (int k = 0; k <= n; ++k) geo.set(k, 1.0);
  auto scaled = scale_argument(geo, 0, 0.5);
  for (int k = 0; k <= n; ++k) CHECK(scaled.coeff(k) == std::ldexp(1.0, -k));
}

TEST_CASE("evaluate") {
  auto f = TruncatedSeries::from_coeffs(4, {1, 1, 1});
  CHECK(evaluate(f, 1.0) == cplx(3.0));
  auto g = TruncatedSeries::from_coeffs(4, {cplx(2, -1), 5, 7});
  CHECK(evaluate(g, 0.0) == cplx(2, -1));

  const int n = 40;
  TruncatedSeries geo(1, n);
  for (int k = 0; k <= n; ++k) geo.set(k, 1.0);
  CHECK(std::abs(evaluate(geo, 0.5) - 2.0) < 1e-11);

  auto h = TruncatedSeries::monomial(3, 4, {1, 1, 1}, 2.0);
  const cplx pt[3] = {2.0, 3.0, cplx(0, 1)};
  CHECK(evaluate(h, pt) == cplx(0, 12));
  CHECK_THROWS(evaluate(h, std::span<const cplx>(pt, 2)));
}

TEST_CASE("pruning never alters retained coefficients") {
  auto f = TruncatedSeries::from_coeffs(5, {1, 1e-20, 3, 1e-9});
  auto p = f.pruned(1e-12);
  CHECK(p.coeff(0) == f.coeff(0));
  CHECK(p.coeff(2) == f.coeff(2));
  CHECK(p.coeff(3) == f.coeff(3));
  CHECK(p.coeff(1) == cplx{});
  CHECK(f.pruned(0.0) == f);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(20241016);
  for (int nvars = 1; nvars <= 3; ++nvars) {
    for (int trial = 0; trial < 60; ++trial) {
      auto a = random_series(rng, nvars, 6);
      auto b = random_series(rng, nvars, 6);
      auto c = random_series(rng, nvars, 6);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
    }
  }
}

TEST_CASE("Leibniz rule through order N-1") {
  std::mt19937 rng(7);
  for (int nvars = 1; nvars <= 3; ++nvars) {
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_series(rng, nvars, 7);
      auto g = random_series(rng, nvars, 7);
      for (int axis = 0; axis < nvars; ++axis) {
        auto lhs = differentiate(f * g, axis);
        auto rhs = differentiate(f, axis) * g + f * differentiate(g, axis);
        CHECK(lhs == rhs.truncated(lhs.order()));
      }
    }
  }
}

TEST_CASE("scale_argument is multiplicative") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_series(rng, 2, 6);
    auto g = random_series(rng, 2, 6);
    // lambda = i keeps every power exact.
    const cplx lambda(0, 1);
    for (int axis = 0; axis < 2; ++axis) {
      CHECK(scale_argument(f, axis, lambda) * scale_argument(g, axis, lambda) ==
            scale_argument(f * g, axis, lambda));
    }
  }
}
