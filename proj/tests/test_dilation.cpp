#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsym/dilation.hpp"
#include "qsym/error.hpp"

using namespace qsym;
using std::numbers::pi;

namespace {

TruncatedSeries xyz_linear() {
  TruncatedSeries f(3, 1);
  f.set({1, 0, 0}, 1.0);
  f.set({0, 1, 0}, 1.0);
  f.set({0, 0, 1}, 1.0);
  return f;
}

// Coefficients of x, y, z after applying op to x + y + z.
std::array<cplx, 3> image_of_xyz(const DiagonalOperator& op) {
  auto img = op.apply(xyz_linear());
  return {img.coeff({1, 0, 0}), img.coeff({0, 1, 0}), img.coeff({0, 0, 1})};
}

}  // namespace

TEST_CASE("dilation_op spectra") {
  auto id = dilation_op(Deformation::unimodular(0.0));
  auto inv = dilation_op(Deformation::unimodular(pi));
  for (int j = 0; j <= 20; ++j) {
    CHECK(id.eigenvalue(j) == cplx(1.0));
    CHECK(inv.eigenvalue(j) == cplx(j % 2 == 0 ? 1.0 : -1.0));
  }
  auto d = dilation_op(Deformation::unimodular(0.5));
  CHECK(std::abs(d.eigenvalue(3) - std::polar(1.0, 1.5)) < 1e-15);
  auto gen = dilation_op(Deformation::general(-1.0));
  CHECK(gen.eigenvalue(5) == cplx(-1.0));
}

TEST_CASE("diagonal operators: linearity, composition, commutativity") {
  auto a = dilation_op(Deformation::unimodular(0.4));
  auto b = sqrt_realization(Deformation::unimodular(1.1));
  auto f = TruncatedSeries::from_coeffs(6, {1, cplx(0, 2), -3, 0.5});
  auto g = TruncatedSeries::from_coeffs(6, {0, 4, 1, 0, 0, 2});
  const cplx alpha(0.3, -1.0);
  CHECK(max_coeff_diff(a.apply(alpha * f + g), alpha * a.apply(f) + a.apply(g)) < 1e-15);
  CHECK(max_coeff_diff(a.apply(b.apply(f)), b.apply(a.apply(f))) < 1e-14);
  CHECK(max_coeff_diff(a.compose(b).apply(f), a.apply(b.apply(f))) < 1e-14);
}

TEST_CASE("realization spectrum: base values and recursion steps") {
  for (const cplx q : {cplx(0.5), std::polar(1.0, 0.7), cplx(0.2, 1.4)}) {
    const auto d = Deformation::general(q);
    CHECK(realization_squared(d, 0) == cplx(1.0));
    CHECK(std::abs(realization_squared(d, 1) - (1.0 + q * q) / 2.0) < 1e-15);
    CHECK(std::abs(realization_squared(d, 2) - (1.0 + q * q + std::pow(q, 4)) / 3.0) < 1e-14);
  }
}

TEST_CASE("realization recursion residual for j <= 50") {
  // (j+1) Q^2(j) = 1 + q^2 j Q^2(j-1)
  const Deformation ds[] = {Deformation::general(0.5), Deformation::unimodular(0.7),
                            Deformation::unimodular(2.5)};
  for (const auto& d : ds) {
    const cplx q2 = d.q() * d.q();
    for (int j = 1; j <= 50; ++j) {
      const cplx lhs = static_cast<double>(j + 1) * realization_squared(d, j);
      const cplx rhs = 1.0 + q2 * static_cast<double>(j) * realization_squared(d, j - 1);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("both branches square to Q^2") {
  for (double s : {0.2, 1.0, 1.9, 2.8, -0.6}) {
    const auto d = Deformation::unimodular(s);
    for (int j = 0; j <= 30; ++j) {
      for (auto branch : {SqrtBranch::Principal, SqrtBranch::Winding}) {
        const cplx v = realization_value(d, j, branch);
        CHECK(std::abs(v * v - realization_squared(d, j)) < 1e-12);
      }
    }
  }
}

TEST_CASE("winding branch is continuous in s on [0, pi]") {
  for (int j = 0; j <= 12; ++j) {
    cplx prev = realization_value(Deformation::unimodular(0.0), j, SqrtBranch::Winding);
    const int steps = 20000;
    for (int k = 1; k <= steps; ++k) {
      const double s = pi * k / steps;
      const cplx cur = realization_value(Deformation::unimodular(s), j, SqrtBranch::Winding);
      // |dQ/ds| is bounded except near zeros where Q ~ sqrt; allow a sqrt-sized jump.
      CHECK(std::abs(cur - prev) < 0.05);
      prev = cur;
    }
    CHECK(prev == cplx(j % 2 == 0 ? 1.0 : -1.0));
  }
}

TEST_CASE("sqrt_realization at s = pi is the inversion, at s = 0 the identity") {
  auto at_pi = sqrt_realization(Deformation::unimodular(pi));
  auto at_zero = sqrt_realization(Deformation::unimodular(0.0));
  for (int j = 0; j <= 30; ++j) {
    CHECK(at_pi.eigenvalue(j) == cplx(j % 2 == 0 ? 1.0 : -1.0));
    CHECK(at_zero.eigenvalue(j) == cplx(1.0));
  }
}

TEST_CASE("sqrt_realization rejects vanishing q-numbers") {
  // [3] = 0 at s = pi/3, reached at j = 2.
  auto op = sqrt_realization(Deformation::unimodular(pi / 3));
  CHECK_NOTHROW(op.eigenvalue(1));
  CHECK_THROWS_AS(op.eigenvalue(2), DegenerateDeformation);
}

TEST_CASE("three-axis realization: mirror and projector tables") {
  auto at_pi = q3_realization(Deformation::unimodular(pi));
  auto at_half = q3_realization(Deformation::unimodular(pi / 2));
  auto at_zero = q3_realization(Deformation::unimodular(0.0));
  using A = std::array<cplx, 3>;
  const cplx i(0, 1);
  CHECK(image_of_xyz(at_pi.qx) == A{1.0, -1.0, -1.0});
  CHECK(image_of_xyz(at_pi.qy) == A{1.0, 1.0, -1.0});
  CHECK(image_of_xyz(at_pi.qz) == A{1.0, 1.0, 1.0});
  CHECK(image_of_xyz(at_half.qx) == A{0.0, i, i});
  CHECK(image_of_xyz(at_half.qy) == A{1.0, 0.0, i});
  CHECK(image_of_xyz(at_half.qz) == A{1.0, 1.0, 0.0});
  for (int a = 0; a < 3; ++a) CHECK(image_of_xyz(at_zero[a]) == A{1.0, 1.0, 1.0});
}

TEST_CASE("three-axis realization: mutual commutativity through degree 20") {
  auto r = q3_realization(Deformation::unimodular(1.3));
  TruncatedSeries f(3, 20);
  for (int a = 0; a <= 20; ++a)
    for (int b = 0; a + b <= 20; ++b)
      for (int c = 0; a + b + c <= 20; ++c) f.set({a, b, c}, cplx(1.0 + a, b - c));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(max_coeff_diff(r[i].apply(r[j].apply(f)), r[j].apply(r[i].apply(f))) < 1e-13);
}

TEST_CASE("limit_spectrum") {
  auto inv = limit_spectrum(OperatorFamily::SqrtWinding, pi);
  auto dil_pi = limit_spectrum(OperatorFamily::Dilation, pi);
  auto principal_pi = limit_spectrum(OperatorFamily::SqrtPrincipal, pi);
  for (int j = 0; j <= 30; ++j) {
    const cplx sign = j % 2 == 0 ? 1.0 : -1.0;
    CHECK(inv.eigenvalue(j) == sign);
    CHECK(dil_pi.eigenvalue(j) == sign);
    CHECK(principal_pi.eigenvalue(j) == cplx(1.0));
  }
  for (auto fam : {OperatorFamily::Dilation, OperatorFamily::SqrtWinding,
                   OperatorFamily::SqrtPrincipal}) {
    auto at0 = limit_spectrum(fam, 0.0);
    for (int j = 0; j <= 30; ++j) CHECK(at0.eigenvalue(j) == cplx(1.0));
  }
  CHECK_THROWS(limit_spectrum(OperatorFamily::Dilation, 1.0));
}

TEST_CASE("first-order expansion residual is O(eps^2)") {
  struct Case {
    OperatorFamily family;
    double s0;
  };
  const Case cases[] = {{OperatorFamily::SqrtPrincipal, 0.0},
                        {OperatorFamily::SqrtPrincipal, pi},
                        {OperatorFamily::SqrtWinding, 0.0},
                        {OperatorFamily::SqrtWinding, pi},
                        {OperatorFamily::Dilation, 0.0},
                        {OperatorFamily::Dilation, pi}};
  for (const auto& c : cases) {
    for (double eps : {1e-2, 1e-3}) {
      const double s = c.s0 == 0.0 ? eps : pi - eps;
      auto exact = family_member(c.family, s);
      auto approx = first_order_expansion(c.family, c.s0, eps);
      for (int j = 0; j <= 10; ++j) {
        const double residual = std::abs(exact.eigenvalue(j) - approx.eigenvalue(j));
        // Second-order coefficient is at most ~ j^2/2 for these families.
        CHECK(residual / (eps * eps) <= 0.5 * (j * j + 1));
      }
    }
    auto at_endpoint = first_order_expansion(c.family, c.s0, 0.0);
    auto limit = limit_spectrum(c.family, c.s0);
    for (int j = 0; j <= 10; ++j) CHECK(at_endpoint.eigenvalue(j) == limit.eigenvalue(j));
    CHECK(first_order_expansion(c.family, c.s0, 0.37).eigenvalue(0) == cplx(1.0));
  }
}
