#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsym/ncplane.hpp"
#include "qsym/series.hpp"

using namespace qsym;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("Bessel functions against Boost") {
  for (double u : {0.01, 0.1, 0.5, 1.0, 1.99, 2.01, 3.7, 8.0, 14.99, 15.01, 22.0, 40.0}) {
    CAPTURE(u);
    CHECK(rel(bessel_quarter(BesselKind::I, u), boost::math::cyl_bessel_i(0.25, u)) < 1e-12);
    CHECK(rel(bessel_quarter(BesselKind::K, u), boost::math::cyl_bessel_k(0.25, u)) < 1e-12);
    CHECK(rel(bessel_i(-0.75, u), boost::math::cyl_bessel_i(-0.75, u)) < 1e-12);
    CHECK(rel(bessel_k(0.75, u), boost::math::cyl_bessel_k(0.75, u)) < 1e-12);
    const auto ji = bessel_quarter_scaled_jet(BesselKind::I, u);
    const auto jk = bessel_quarter_scaled_jet(BesselKind::K, u);
    CHECK(rel(ji.derivative * std::exp(u), boost::math::cyl_bessel_i_prime(0.25, u)) < 1e-11);
    CHECK(rel(jk.derivative * std::exp(-u), boost::math::cyl_bessel_k_prime(0.25, u)) < 1e-11);
  }
}

TEST_CASE("Bessel limits") {
  const double u = 1e-4;
  CHECK(rel(bessel_quarter(BesselKind::I, u), std::pow(u / 2, 0.25) / std::tgamma(1.25)) < 1e-6);
  CHECK(rel(bessel_i_scaled(0.25, 30.0) * std::sqrt(2 * pi * 30.0), 1.0) < 1e-2);
  CHECK_THROWS_AS(bessel_quarter(BesselKind::I, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_quarter(BesselKind::K, -1.0), std::domain_error);
}

TEST_CASE("large-argument asymptotics") {
  // e^{-u} I(u) sqrt(2 pi u) = 1 - (4 nu^2 - 1) / (8u) + ...
  const double u = 30.0;
  const double lead = bessel_i_scaled(0.25, u) * std::sqrt(2 * pi * u);
  CHECK(std::abs(lead - 1.0) < 1e-2);
  CHECK(std::abs(lead - (1 + 0.75 / (8 * u))) < 1e-4);
}

TEST_CASE("Wronskian") {
  for (double u : {0.5, 2.0, 10.0}) {
    const auto i = bessel_quarter_scaled_jet(BesselKind::I, u);
    const auto k = bessel_quarter_scaled_jet(BesselKind::K, u);
    CHECK(std::abs((i.value * k.derivative - i.derivative * k.value) * u + 1.0) < 1e-9);
  }
}

TEST_CASE("modified Bessel equation") {
  for (BesselKind kind : {BesselKind::I, BesselKind::K})
    for (double u : linspace(0.1, 20.0, 60)) {
      const double h = 2e-3 * std::min(u, 1.0);
      // Unscaled jets; the second derivative by central differences of the first.
      auto jet = [&](double v) {
        auto j = bessel_quarter_scaled_jet(kind, v);
        const double e = kind == BesselKind::I ? std::exp(v) : std::exp(-v);
        return std::pair{j.value * e, j.derivative * e};
      };
      const auto [w, dw] = jet(u);
      const double d2w =
          (-jet(u + 2 * h).second + 8 * jet(u + h).second - 8 * jet(u - h).second + jet(u - 2 * h).second) /
          (12 * h);
      const double terms[] = {u * u * d2w, u * dw, (u * u + 1.0 / 16) * w};
      const double scale = std::max({std::abs(terms[0]), std::abs(terms[1]), std::abs(terms[2])});
      CAPTURE(u);
      CHECK(std::abs(terms[0] + terms[1] - terms[2]) / scale < 1e-9);
    }
}

TEST_CASE("Gaussian substitution reduces the separated equation") {
  // f = e^{alpha y^2 / 2} w gives f'' - 2 alpha y f' - alpha f = e^{alpha y^2 / 2} (w'' - alpha^2 y^2 w).
  const int N = 24;
  const double alpha = 0.5;
  TruncatedSeries gauss(1, N);
  double c = 1.0;
  for (int n = 0; 2 * n <= N; ++n) {
    gauss.set(2 * n, c);
    c *= alpha / 2 / (n + 1);
  }
  const auto y = TruncatedSeries::monomial(1, N, {1, 0, 0});
  for (const auto& w : {TruncatedSeries::from_coeffs(N, {1, -2, 0, 3, 0.5, -1}),
                        TruncatedSeries::from_coeffs(N, {0, 0, 0, 0, 0, 0, 0, 1})}) {
    const auto f = gauss * w;
    const auto f1 = differentiate(f, 0), f2 = differentiate(f1, 0);
    const auto lhs = f2 - cplx(2 * alpha) * (y * f1) - cplx(alpha) * f;
    const auto w2 = differentiate(differentiate(w, 0), 0);
    const auto rhs = gauss * (w2 - cplx(alpha * alpha) * (y * y * w));
    CHECK(max_coeff_diff(lhs.truncated(N - 2), rhs.truncated(N - 2)) < 1e-14);
  }

  const auto ys = linspace(0.5, 3.0, 51);
  CHECK(separated_ode_residual([](double) { return Jet1{}; }, 1.0, ys) == std::vector<double>(51, 0.0));
  const SolutionCandidate growing{1.0, -1, 1, BesselKind::I, 1.0};
  const auto res = separated_ode_residual([&](double v) { return candidate_y_factor(growing, v); }, 1.0, ys);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto f = candidate_y_factor(growing, ys[i]);
    const double scale = std::max({std::abs(f.d2), 2 * ys[i] * std::abs(f.d1), std::abs(f.value)});
    CHECK(std::abs(res[i]) / scale < 1e-8);
  }
}

TEST_CASE("candidate derivatives against finite differences") {
  for (int sy : {-1, 1})
    for (BesselKind k : {BesselKind::I, BesselKind::K}) {
      const SolutionCandidate c{0.8, -1, sy, k, 1.0};
      for (auto [x, y] : {std::pair{0.3, 0.7}, {-0.9, 2.5}, {0.0, 1.4}}) {
        const auto a = candidate_derivatives(c, x, y);
        const auto fd = candidate_derivatives_fd(c, x, y, 1e-3, 4);
        const double scale = std::max({std::abs(a.dxx), std::abs(a.dyy), std::abs(a.dxy), std::abs(a.value)});
        CHECK(std::abs(a.dx - fd.dx) / scale < 1e-8);
        CHECK(std::abs(a.dy - fd.dy) / scale < 1e-8);
        CHECK(std::abs(a.dxy - fd.dxy) / scale < 1e-7);
        CHECK(std::abs(a.dxx - fd.dxx) / scale < 1e-7);
        CHECK(std::abs(a.dyy - fd.dyy) / scale < 1e-7);
      }
    }
}

TEST_CASE("pde residual basics") {
  const auto op = eq37_operator();
  SolutionCandidate zero = SolutionCandidate::printed();
  zero.amplitude = 0.0;
  const auto z = pde_residual(op, zero);
  CHECK(z.max_residual == 0.0);
  CHECK(z.relative() == 0.0);

  auto scaled = SolutionCandidate::printed();
  scaled.amplitude = 2.0;
  const auto r1 = pde_residual(op, SolutionCandidate::printed());
  const auto r2 = pde_residual(op, scaled);
  REQUIRE(r1.samples.size() == 41u * 41u);
  for (std::size_t i = 0; i < r1.samples.size(); ++i)
    CHECK(r2.samples[i].residual == 2.0 * r1.samples[i].residual);

  Grid bad;
  bad.y0 = 0.0;
  CHECK_THROWS_AS(pde_residual(op, SolutionCandidate::printed(), bad), std::invalid_argument);
}

TEST_CASE("separable reduction of the q = -1 equation") {
  const auto op = eq37_operator();
  for (int sy : {-1, 1})
    for (BesselKind k : {BesselKind::I, BesselKind::K}) {
      const SolutionCandidate c{1.0, -1, sy, k, 1.0};
      const auto field = pde_residual(op, c);
      for (const auto& s : field.samples) {
        const auto g = candidate_x_factor(c, s.x);
        const auto f = candidate_y_factor(c, s.y);
        const double reduced = 2 * s.x * g.value * (f.d2 - 2 * c.alpha * s.y * f.d1 - c.alpha * f.value);
        CHECK(std::abs(s.residual - reduced) <= 1e-9 * std::max(1.0, s.max_term));
      }
    }
}

TEST_CASE("variant scan") {
  const auto scan = scan_variants(eq37_operator());
  REQUIRE(scan.size() == 4);
  CHECK(scan.front().relative_residual < 1e-8);
  CHECK(scan.front().candidate.sigma_y == 1);
  int good = 0;
  for (const auto& v : scan) {
    if (v.relative_residual < 1e-8) {
      ++good;
      CHECK(v.candidate.sigma_y == 1);
    }
    if (v.printed) CHECK(v.relative_residual > 0.1);
  }
  CHECK(good == 2);
}

TEST_CASE("analytic and finite-difference residuals agree") {
  const SolutionCandidate c{1.0, -1, -1, BesselKind::I, 1.0};
  const auto op = eq37_operator();
  const auto exact = pde_residual(op, c);
  auto gap = [&](double h) {
    const auto fd = pde_residual(op, c, {}, DerivativeMethod::FiniteDifference, h, 2);
    double worst = 0;
    for (std::size_t i = 0; i < fd.samples.size(); ++i)
      worst = std::max(worst, std::abs(fd.samples[i].residual - exact.samples[i].residual));
    return worst;
  };
  const double g1 = gap(4e-3), g2 = gap(2e-3);
  CHECK(g1 / g2 > 3.5);
  CHECK(g1 / g2 < 4.5);
  const auto fd4 = pde_residual(op, c, {}, DerivativeMethod::FiniteDifference, 1e-3, 4);
  CHECK(std::abs(fd4.relative() - exact.relative()) < 1e-7);
}

TEST_CASE("general-q operator") {
  const auto classical = general_q_operator(Deformation::unimodular(0.0));
  CHECK(classical.coeff[0].near({-1.0, 0, 0}));
  for (int t = 1; t < 4; ++t) CHECK(classical.coeff[t].near({}));

  const auto table = compare_with_eq37(general_q_operator(Deformation::unimodular(pi)));
  REQUIRE(table.size() == 4);
  CHECK(table[0].match);
  CHECK(table[1].match);
  CHECK(table[2].match);
  CHECK_FALSE(table[3].match);
  CHECK(table[3].general.near({2.0, 0, 0}, 1e-12));
  CHECK(table[3].reference.near({0, 2.0, 0}));

  // The limit operator leaves a nonzero residual on the separated solution.
  const SolutionCandidate best{1.0, -1, 1, BesselKind::K, 1.0};
  CHECK(pde_residual(eq37_operator(), best).relative() < 1e-8);
  CHECK(pde_residual(general_q_operator(Deformation::unimodular(pi)), best).relative() > 1e-3);
}

TEST_CASE("asymptotic profiles") {
  std::vector<double> ys;
  for (double y = 0.5; y <= 8.0 + 1e-12; y += 0.25) ys.push_back(y);
  const auto bounded = asymptotic_profile({1.0, -1, 1, BesselKind::K, 1.0}, 0.3, ys);
  // sqrt(y) K(y^2/2) e^{y^2/2} ~ sqrt(pi / y): ratio 1/sqrt(2) between y = 4 and 8.
  CHECK(std::abs(bounded.ratio - 1 / std::sqrt(2.0)) < 0.02);
  CHECK(bounded.behavior == "decays");
  CHECK(asymptotic_profile({1.0, -1, 1, BesselKind::I, 1.0}, 0.3, ys).behavior == "grows");
  const auto printed = asymptotic_profile(SolutionCandidate::printed(), 0.3, ys);
  CHECK(printed.behavior == "decays");

  const auto c = SolutionCandidate::printed(0.7);
  const double y0 = 1.3, ref = candidate_value(c, 0.0, y0);
  for (double x : linspace(-2, 2, 17)) CHECK(rel(candidate_value(c, x, y0), ref * std::exp(-0.7 * x * x)) < 1e-8);
  SolutionCandidate flat = c;
  flat.alpha = 0.0;
  for (double x : linspace(-2, 2, 9)) CHECK(candidate_x_factor(flat, x).value == 1.0);
}
