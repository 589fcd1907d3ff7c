#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsym/qcore.hpp"

namespace qsym {

using Vec3 = std::array<double, 3>;

/// s near 0 (upper sign, eps = s) or s near pi (lower sign, eps = pi - s).
enum class Branch { NearZero, NearPi };

struct Units {
  double hbar = 1.0, c = 1.0, e = 1.0, m = 1.0;
};

struct WaveVector {
  Vec3 k{};
  /// Free-particle dispersion |k|^2 hbar / (2m).
  double omega(const Units& u = {}) const;
};

/// The induced potential of the first-order momentum shift, linear in r.
struct GaugeField {
  Vec3 k{};
  double eps = 0.0;
  Branch branch = Branch::NearZero;
  double hbar = 1.0;

  /// -eps hbar on the upper branch, +eps hbar on the lower.
  double prefactor() const;
  /// A(r) = prefactor * (k_x^2 x/2 + k_x k_y y + k_x k_z z, k_y^2 y/2 + k_y k_z z, k_z^2 z/2).
  Vec3 at(const Vec3& r) const;
  /// The linear map r -> A(r) as a matrix.
  std::array<Vec3, 3> matrix() const;
};

Vec3 vector_potential(const Vec3& k, double eps, Branch branch, const Vec3& r, double hbar = 1.0);

/// Exact curl: prefactor * (-k_y k_z, k_x k_z, -k_x k_y).
Vec3 curl_vector_potential(const GaugeField& A);
/// The curl formula as printed: prefactor * (-k_y k_z, k_x k_z, k_x k_y).
Vec3 printed_curl(const GaugeField& A);
/// Central-difference curl at r.
Vec3 curl_finite_difference(const GaugeField& A, const Vec3& r, double h = 1e-3);

struct PhaseResult {
  double phase;  // integral of A . dl along the polyline
  cplx factor;   // exp(i phase)
};

/// Exact for the linear field: each segment contributes A(midpoint) . (b - a).
/// Throws std::invalid_argument for fewer than two vertices.
PhaseResult phase_integral(const GaugeField& A, const std::vector<Vec3>& path);

/// Counter-clockwise rectangle with corner `origin`, sides along axes (a, b).
std::vector<Vec3> rectangle_loop(const Vec3& origin, int axis_a, double side_a, int axis_b,
                                 double side_b);

/// B_m = -(hbar c / e) eps k_j k_l for (m, j, l) a permutation of (1, 2, 3).
/// Throws std::invalid_argument when e = 0.
Vec3 effective_field(const Vec3& k, double eps, const Units& u = {});

struct FieldComparison {
  Vec3 printed;                       // effective_field
  Vec3 from_curl;                     // -(c/e) curl A
  std::array<std::string, 3> verdict;  // per component: confirmed, sign-flip, mismatch
};

/// Compares the printed field with -(c/e) times the exact curl on the given branch.
FieldComparison compare_field_with_curl(const Vec3& k, double eps, Branch branch, const Units& u = {});

struct DerivativeCheck {
  cplx operator_value;  // first-order deformed derivative applied to e^{ik.r}, divided by e^{ik.r}
  cplx shifted_value;   // i k_axis + i A_axis / hbar
  double relative_residual;
};

/// Applies the first-order deformed derivative along `axis` term by term to
/// e^{ik.r} and compares with the momentum shifted by the induced potential.
DerivativeCheck perturbed_derivative_check(int axis, double eps, Branch branch, const Vec3& k,
                                           const Vec3& r);

struct PlaneWaveCheck {
  cplx lambda;          // measured argument rescaling
  double max_residual;  // max coefficient gap through order N - 2
  int order;
};

/// Checks d^ e_q(ikx) = ik e_q(ik lambda x) on truncated series, where d^ = Q d
/// and Q multiplies x^j by q^j [j+1]/(j+1). Throws DegenerateDeformation when
/// a q-factorial vanishes.
PlaneWaveCheck q_planewave_check(double k, const Deformation& d, int N);

}  // namespace qsym
