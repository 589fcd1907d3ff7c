#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsym/error.hpp"
#include "qsym/qcore.hpp"

using namespace qsym;
using std::numbers::pi;

TEST_CASE("deformation accessors") {
  auto d = Deformation::unimodular(pi / 2);
  CHECK(d.q() == cplx(0, 1));
  CHECK(std::abs(d.q()) == 1.0);
  CHECK(d.is_root_of_unity(4));
  CHECK_FALSE(d.is_root_of_unity(2));
  CHECK(Deformation::unimodular(pi).q() == cplx(-1, 0));
  CHECK_THROWS(Deformation::general(0.0));
  CHECK(std::abs(Deformation::real_exp(-0.5).q() - std::exp(-0.5)) < 1e-16);
  CHECK_FALSE(Deformation::unimodular(0.7).is_root_of_unity(50));
}

TEST_CASE("qnumber examples") {
  for (double s : {0.1, 0.7, 2.5}) {
    CHECK(qnumber(1, Deformation::unimodular(s)) == cplx(1.0));
    CHECK(std::abs(qnumber(2, Deformation::unimodular(s)) - 2 * std::cos(s)) < 1e-15);
  }
  const auto d = Deformation::unimodular(0.7);
  const cplx q = std::polar(1.0, 0.7);
  const cplx quotient = (std::pow(q, 3) - std::pow(q, -3)) / (q - 1.0 / q);
  CHECK(std::abs(qnumber(3, d) - std::sin(2.1) / std::sin(0.7)) < 1e-15);
  CHECK(std::abs(qnumber(3, d) - quotient) < 1e-14);
}

TEST_CASE("qnumber limits are analytic") {
  for (int n = -5; n <= 12; ++n) {
    CHECK(qnumber(n, Deformation::unimodular(0.0)) == cplx(n));
    CHECK(qnumber(n, Deformation::general(1.0)) == cplx(n));
    const double at_pi = (std::abs(n) % 2 == 1) ? n : -n;
    CHECK(qnumber(n, Deformation::unimodular(pi)) == cplx(at_pi));
    CHECK(qnumber(n, Deformation::general(-1.0)) == cplx(at_pi));
  }
  CHECK_THROWS_AS(qnumber(0.5, Deformation::unimodular(pi)), Error);
  // Real n away from the limits: [1/2] at s = 0.3.
  CHECK(std::abs(qnumber(0.5, Deformation::unimodular(0.3)) - std::sin(0.15) / std::sin(0.3)) <
        1e-15);
}

TEST_CASE("qnumber symmetry under q -> 1/q and sine/quotient consistency") {
  const cplx general_qs[] = {0.5, cplx(0.3, 0.8), std::polar(1.0, 0.7), std::polar(1.3, 2.0)};
  for (const cplx q : general_qs) {
    const auto d = Deformation::general(q);
    const auto inv = d.inverse();
    for (int n = 0; n <= 50; ++n) {
      const cplx a = qnumber(n, d);
      CHECK(std::abs(a - qnumber(n, inv)) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
  for (double s : {0.1, 0.7, 2.5}) {
    const auto uni = Deformation::unimodular(s);
    const auto gen = Deformation::general(std::polar(1.0, s));
    for (int n = 0; n <= 50; ++n) {
      CHECK(std::abs(qnumber(n, uni) - qnumber(n, gen)) < 1e-12);
      CHECK(std::abs(qnumber(n, uni) - qnumber(n, uni.inverse())) < 1e-12);
    }
  }
}

TEST_CASE("q_derivative") {
  const auto d = Deformation::unimodular(0.9);
  const cplx q = d.q();
  auto sq = TruncatedSeries::monomial(1, 6, {2, 0, 0});
  CHECK(std::abs(q_derivative(sq, d).coeff(1) - (q + 1.0 / q)) < 1e-15);
  CHECK(q_derivative(TruncatedSeries::constant(1, 6, 4.0), d).is_zero());

  auto f = TruncatedSeries::from_coeffs(8, {1, -2, 3, 0.25, 5, cplx(0, 1), 7, 8, 9});
  CHECK(q_derivative(f, Deformation::general(1.0)) == differentiate(f, 0));
  CHECK(q_derivative(f, Deformation::unimodular(0.0)) == differentiate(f, 0));

  // Against the defining quotient (f(qx) - f(x/q)) / ((q - 1/q) x).
  for (const cplx qv : {cplx(0.6), std::polar(1.0, 0.4), cplx(0.9, 0.5)}) {
    const auto dg = Deformation::general(qv);
    for (const cplx x : {cplx(0.3), cplx(-0.2, 0.4)}) {
      const cplx quotient = (evaluate(f, qv * x) - evaluate(f, x / qv)) / ((qv - 1.0 / qv) * x);
      CHECK(std::abs(evaluate(q_derivative(f, dg), x) - quotient) < 1e-12);
    }
  }
}

TEST_CASE("jackson_integral examples") {
  const auto d = Deformation::general(0.5);
  auto x = TruncatedSeries::monomial(1, 4, {1, 0, 0});
  auto j = jackson_integral(x, d);
  CHECK(j.order() == 5);
  CHECK(std::abs(j.coeff(2) - 0.4) < 1e-15);
  CHECK(std::abs(jackson_integral(x, d, JacksonMethod::PartialSums).coeff(2) - 0.4) < 1e-14);

  const auto near_one = Deformation::general(1.0 - 1e-6);
  CHECK(std::abs(jackson_integral(x, near_one).coeff(2) - 0.5) < 1e-5);
  CHECK(std::abs(jackson_integral(x, near_one, JacksonMethod::PartialSums).coeff(2) - 0.5) < 1e-5);

  CHECK(jackson_integral(TruncatedSeries(1, 5), d).is_zero());
  CHECK_THROWS_AS(jackson_integral(x, Deformation::general(1.0)), NonConvergence);
  CHECK_THROWS_AS(jackson_integral(x, Deformation::unimodular(0.4)), NonConvergence);
  CHECK_THROWS_AS(jackson_integral(x, Deformation::general(cplx(0, -1.2))), NonConvergence);
}

TEST_CASE("jackson closed form, partial sums and pointwise sum agree") {
  auto f = TruncatedSeries::from_coeffs(9, {1, -1, 0.5, 2, 0, cplx(0, 3), 1, 0, 0, -4});
  for (const cplx q : {cplx(0.5), cplx(0.9), cplx(0.4, 0.5)}) {
    const auto d = Deformation::general(q);
    auto closed = jackson_integral(f, d);
    auto sums = jackson_integral(f, d, JacksonMethod::PartialSums);
    CHECK(max_coeff_diff(closed, sums) < 1e-12);
    for (const cplx x : {cplx(0.7), cplx(-0.3, 0.2)}) {
      CHECK(std::abs(jackson_integral_at(f, d, x) - evaluate(closed, x)) < 1e-12);
    }
  }
}

TEST_CASE("q-derivative inverts the Jackson integral exactly") {
  // D_q x^k (1/q - q) q^k / (1 - q^2k) = [k](1/q - q) q^k / (1 - q^2k) x^{k-1} = x^{k-1}:
  // no rescaling by a power of q survives.
  TruncatedSeries f(1, 20);
  for (int k = 0; k <= 20; ++k) f.set(k, cplx(std::cos(k), std::sin(3.0 * k)));
  for (const cplx q : {cplx(0.7), std::polar(0.7, 0.3), std::polar(0.7, -2.0)}) {
    const auto d = Deformation::general(q);
    for (auto method : {JacksonMethod::ClosedForm, JacksonMethod::PartialSums}) {
      auto back = q_derivative(jackson_integral(f, d, method), d);
      CHECK(back.order() == f.order());
      CHECK(max_coeff_diff(back, f) < 1e-10);
    }
  }
}

TEST_CASE("q_exponential") {
  auto e = q_exponential(1.0, Deformation::general(1.0), 10);
  double fact = 1.0;
  for (int n = 0; n <= 10; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(e.coeff(n) - 1.0 / fact) < 1e-16);
  }
  CHECK(q_exponential(0.0, Deformation::unimodular(0.3), 10) ==
        TruncatedSeries::constant(1, 10, 1.0));

  const auto d = Deformation::unimodular(0.3);
  auto eq = q_exponential(1.0, d, 12);
  auto residual = q_derivative(eq, d) - eq.truncated(11);
  CHECK(residual.order() == 11);
  CHECK(residual.max_abs() < 1e-15);

  // [3] vanishes at s = pi/3.
  try {
    q_exponential(1.0, Deformation::unimodular(pi / 3), 5);
    FAIL("expected a degenerate deformation");
  } catch (const DegenerateDeformation& err) {
    CHECK(err.index() == 3);
  }
}
