#include "qsym/perturb.hpp"

#include <cmath>
#include <stdexcept>

#include "qsym/dilation.hpp"
#include "qsym/series.hpp"

namespace qsym {

double WaveVector::omega(const Units& u) const {
  return u.hbar * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) / (2 * u.m);
}

double GaugeField::prefactor() const { return (branch == Branch::NearZero ? -1.0 : 1.0) * eps * hbar; }

std::array<Vec3, 3> GaugeField::matrix() const {
  const double p = prefactor();
  const auto& [kx, ky, kz] = k;
  return {Vec3{p * kx * kx / 2, p * kx * ky, p * kx * kz}, Vec3{0, p * ky * ky / 2, p * ky * kz},
          Vec3{0, 0, p * kz * kz / 2}};
}

Vec3 GaugeField::at(const Vec3& r) const {
  const auto M = matrix();
  Vec3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i] += M[i][j] * r[j];
  return a;
}

Vec3 vector_potential(const Vec3& k, double eps, Branch branch, const Vec3& r, double hbar) {
  return GaugeField{k, eps, branch, hbar}.at(r);
}

Vec3 curl_vector_potential(const GaugeField& A) {
  const double p = A.prefactor();
  const auto& [kx, ky, kz] = A.k;
  return {-p * ky * kz, p * kx * kz, -p * kx * ky};
}

Vec3 printed_curl(const GaugeField& A) {
  const double p = A.prefactor();
  const auto& [kx, ky, kz] = A.k;
  return {-p * ky * kz, p * kx * kz, p * kx * ky};
}

Vec3 curl_finite_difference(const GaugeField& A, const Vec3& r, double h) {
  // d[j][i] = dA_i / dx_j
  double d[3][3];
  for (int j = 0; j < 3; ++j) {
    Vec3 rp = r, rm = r;
    rp[j] += h;
    rm[j] -= h;
    const Vec3 ap = A.at(rp), am = A.at(rm);
    for (int i = 0; i < 3; ++i) d[j][i] = (ap[i] - am[i]) / (2 * h);
  }
  return {d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]};
}

PhaseResult phase_integral(const GaugeField& A, const std::vector<Vec3>& path) {
  if (path.size() < 2) throw std::invalid_argument("phase path needs at least two vertices");
  double phase = 0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    Vec3 mid, step;
    for (int i = 0; i < 3; ++i) {
      mid[i] = (path[s][i] + path[s + 1][i]) / 2;
      step[i] = path[s + 1][i] - path[s][i];
    }
    const Vec3 a = A.at(mid);
    phase += a[0] * step[0] + a[1] * step[1] + a[2] * step[2];
  }
  return {phase, std::polar(1.0, phase)};
}

std::vector<Vec3> rectangle_loop(const Vec3& origin, int axis_a, double side_a, int axis_b,
                                 double side_b) {
  if (axis_a == axis_b || axis_a < 0 || axis_a > 2 || axis_b < 0 || axis_b > 2)
    throw std::invalid_argument("rectangle needs two distinct axes");
  std::vector<Vec3> loop(5, origin);
  loop[1][axis_a] += side_a;
  loop[2][axis_a] += side_a;
  loop[2][axis_b] += side_b;
  loop[3][axis_b] += side_b;
  return loop;
}

Vec3 effective_field(const Vec3& k, double eps, const Units& u) {
  if (u.e == 0) throw std::invalid_argument("effective field needs a nonzero charge");
  const double p = -u.hbar * u.c / u.e * eps;
  return {p * k[1] * k[2], p * k[0] * k[2], p * k[0] * k[1]};
}

FieldComparison compare_field_with_curl(const Vec3& k, double eps, Branch branch, const Units& u) {
  FieldComparison out;
  out.printed = effective_field(k, eps, u);
  const Vec3 curl = curl_vector_potential(GaugeField{k, eps, branch, u.hbar});
  for (int i = 0; i < 3; ++i) {
    out.from_curl[i] = -u.c / u.e * curl[i];
    const double a = out.printed[i], b = out.from_curl[i];
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    out.verdict[i] = std::abs(a - b) <= tol ? "confirmed" : std::abs(a + b) <= tol ? "sign-flip" : "mismatch";
  }
  return out;
}

DerivativeCheck perturbed_derivative_check(int axis, double eps, Branch branch, const Vec3& k,
                                           const Vec3& r) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1 or 2");
  // First-order operator: d_axis + sign i eps sum_t c_t x_{coord_t} d_axis d_{other_t}.
  struct Term {
    double c;
    int coord;
    int other;
  };
  std::vector<Term> terms{{0.5, axis, axis}};
  for (int j = axis + 1; j < 3; ++j) terms.push_back({1.0, j, j});
  const double sign = branch == Branch::NearZero ? 1.0 : -1.0;
  const cplx I(0, 1);
  // On e^{ik.r} every derivative d_j contributes a factor i k_j.
  cplx value = I * k[axis];
  for (const auto& t : terms) value += sign * I * eps * t.c * r[t.coord] * (I * k[axis]) * (I * k[t.other]);

  const Vec3 a = GaugeField{k, eps, branch, 1.0}.at(r);
  const cplx shifted = I * k[axis] + I * a[axis];
  const double scale = std::max(std::abs(value), std::abs(shifted));
  return {value, shifted, scale > 0 ? std::abs(value - shifted) / scale : 0.0};
}

PlaneWaveCheck q_planewave_check(double k, const Deformation& d, int N) {
  if (N < 3) throw std::invalid_argument("plane-wave check needs N >= 3");
  const cplx ik(0, k);
  const auto e = q_exponential(ik, d, N);
  // d^ x^n = n Q^2(n - 1) x^{n-1}.
  TruncatedSeries de(1, N - 1);
  for (int n = 1; n <= N; ++n) de.set(n - 1, cplx(n) * realization_squared(d, n - 1) * e.coeff(n));

  PlaneWaveCheck out{1.0, 0.0, N};
  if (k != 0 && std::abs(e.coeff(1)) > 0) out.lambda = de.coeff(1) / (ik * e.coeff(1));
  cplx power = 1.0;
  for (int m = 0; m <= N - 2; ++m) {
    const cplx expected = ik * e.coeff(m) * power;
    const double scale = std::max(1.0, std::abs(expected));
    out.max_residual = std::max(out.max_residual, std::abs(de.coeff(m) - expected) / scale);
    power *= out.lambda;
  }
  return out;
}

}  // namespace qsym
