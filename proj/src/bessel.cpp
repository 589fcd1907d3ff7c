#include "qsym/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsym {

namespace {

constexpr double kSeriesLimit = 15.0;
constexpr double kReflectionLimit = 2.0;

void require_positive(double u) {
  if (!(u > 0.0)) throw std::domain_error("Bessel argument must be positive, got " + std::to_string(u));
}

double series_i(double nu, double u) {
  const double half = u / 2, h2 = half * half;
  double term = std::pow(half, nu) / std::tgamma(nu + 1);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= h2 / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// e^{-u} I_nu(u) ~ (2 pi u)^{-1/2} sum_k (-1)^k a_k(nu) / u^k.
double asymptotic_i_scaled(double nu, double u) {
  const double mu = 4 * nu * nu;
  double term = 1.0, sum = 1.0, prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1;
    term *= -(mu - odd * odd) / (k * 8.0 * u);
    if (std::abs(term) > std::abs(prev)) break;
    sum += term;
    prev = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2 * std::numbers::pi * u);
}

// e^{u} K_nu(u) = int_0^inf e^{-u (cosh t - 1)} cosh(nu t) dt, trapezoid rule
// (exponentially convergent for this analytic, rapidly decaying integrand).
double integral_k_scaled(double nu, double u) {
  const double tmax = std::acosh(1.0 + 745.0 / u);
  double h = 0.25, prev = 0.0;
  for (int level = 0; level < 12; ++level) {
    double sum = 0.5;
    for (double t = h; t <= tmax; t += h) {
      const double e = std::exp(-u * (std::cosh(t) - 1.0));
      sum += e * std::cosh(nu * t);
      if (e < 1e-18) break;
    }
    const double value = sum * h;
    if (level > 0 && std::abs(value - prev) < 1e-15 * std::abs(value)) return value;
    prev = value;
    h /= 2;
  }
  return prev;
}

}  // namespace

double bessel_i(double nu, double u) {
  require_positive(u);
  if (u <= kSeriesLimit) return series_i(nu, u);
  return std::exp(u) * asymptotic_i_scaled(nu, u);
}

double bessel_i_scaled(double nu, double u) {
  require_positive(u);
  if (u <= kSeriesLimit) return std::exp(-u) * series_i(nu, u);
  return asymptotic_i_scaled(nu, u);
}

double bessel_k_scaled(double nu, double u) {
  require_positive(u);
  if (u <= kReflectionLimit) {
    return std::exp(u) * std::numbers::pi * (series_i(-nu, u) - series_i(nu, u)) /
           (2 * std::sin(nu * std::numbers::pi));
  }
  return integral_k_scaled(nu, u);
}

double bessel_k(double nu, double u) { return std::exp(-u) * bessel_k_scaled(nu, u); }

double bessel_quarter(BesselKind kind, double u) {
  return kind == BesselKind::I ? bessel_i(0.25, u) : bessel_k(0.25, u);
}

BesselJet bessel_quarter_scaled_jet(BesselKind kind, double u) {
  constexpr double nu = 0.25;
  if (kind == BesselKind::I) {
    const double z = bessel_i_scaled(nu, u);
    return {z, bessel_i_scaled(nu - 1, u) - nu / u * z};
  }
  const double z = bessel_k_scaled(nu, u);
  // K_{-3/4} = K_{3/4}
  return {z, -bessel_k_scaled(1 - nu, u) - nu / u * z};
}

}  // namespace qsym
