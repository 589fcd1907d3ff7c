#pragma once

#include <functional>
#include <memory>
#include <string>

#include "qsym/qcore.hpp"
#include "qsym/series.hpp"

namespace qsym {

/// Operator diagonal on monomials: x^a y^b z^c -> Q(a, b, c) x^a y^b z^c.
///
/// Spectrum values are memoized behind a mutex, so one operator may be
/// applied from several threads. Copies share the memo table.
class DiagonalOperator {
public:
  using Spectrum = std::function<cplx(const Exponent&)>;
  using AxisSpectrum = std::function<cplx(int)>;

  DiagonalOperator(Spectrum spectrum, std::string label, int axis = -1);

  /// Spectrum reading the degree along one axis.
  static DiagonalOperator on_axis(int axis, AxisSpectrum spectrum, std::string label);
  static DiagonalOperator identity(int axis = 0);

  cplx eigenvalue(const Exponent& e) const;
  /// Eigenvalue on the pure power of the designated axis (axis 0 if none).
  cplx eigenvalue(int j) const;

  TruncatedSeries apply(const TruncatedSeries& f) const;

  /// Pointwise product of spectra; the result acts as (*this) * other.
  DiagonalOperator compose(const DiagonalOperator& other) const;

  const std::string& label() const noexcept { return label_; }
  /// Designated axis, or -1 for a genuinely multi-axis spectrum.
  int axis() const noexcept { return axis_; }

private:
  struct Memo;

  Spectrum spectrum_;
  std::string label_;
  int axis_;
  std::shared_ptr<Memo> memo_;
};

/// Branch of the square root in Q(j) = sqrt(q^j [j+1]/(j+1)).
///   Principal: principal root of the whole product. Reproduces the
///     three-axis mirror table (Q(j) -> 1 at s = pi).
///   Winding: q^{j/2} times i^m sqrt|[j+1]/(j+1)| where m counts the sign
///     changes of sin((j+1)t) for t in (0, s]. Continuous in s on [0, pi]
///     (Q vanishes at each crossing) and tends to (-1)^j at s = pi.
///     Unimodular deformations only; general q falls back to Principal.
enum class SqrtBranch { Principal, Winding };

/// D(s) = q^{x d/dx}: spectrum q^j.
DiagonalOperator dilation_op(const Deformation& d, int axis = 0);

/// Q^2(j) = q^j [j+1] / (j+1), the closed-form solution of
/// (j+1) Q^2(j) = 1 + q^2 j Q^2(j-1), Q^2(0) = 1.
cplx realization_squared(const Deformation& d, int j);

/// Q(j) for the selected branch, without degeneracy checks.
cplx realization_value(const Deformation& d, int j, SqrtBranch branch);

/// Coordinate realization x_hat = x Q(x d/dx). Evaluating a degree j with
/// |[j+1]| < 1e-12 throws DegenerateDeformation.
DiagonalOperator sqrt_realization(const Deformation& d, SqrtBranch branch = SqrtBranch::Winding,
                                  int axis = 0);

/// Q_x = Q(d_x) q^{d_y + d_z}, Q_y = Q(d_y) q^{d_z}, Q_z = Q(d_z) on three
/// variables. Zeros of Q are legitimate here (projector endpoints).
struct Q3Realization {
  DiagonalOperator qx;
  DiagonalOperator qy;
  DiagonalOperator qz;

  const DiagonalOperator& operator[](int axis) const;
};

Q3Realization q3_realization(const Deformation& d, SqrtBranch branch = SqrtBranch::Principal);

/// Families whose s -> 0, pi limits are known in closed form.
enum class OperatorFamily { Dilation, SqrtWinding, SqrtPrincipal };

std::string to_string(OperatorFamily family);

/// Analytic limit of a unimodular family at s0 in {0, pi}. The analytic
/// spectrum is cross-checked against one-sided evaluations approaching s0
/// from inside [0, pi]; a mismatch throws Error naming j.
DiagonalOperator limit_spectrum(OperatorFamily family, double s0, int max_degree = 64);

/// First-order expansion around s0 in {0, pi} with eps = s (s0 = 0) or
/// eps = pi - s (s0 = pi):
///   realizations: 1 + i eps j / 2 (s0 = 0), 1 - i eps j / 2 (s0 = pi),
///   dilation:     1 + i eps j,      (-1)^j (1 - i eps j).
/// The winding branch carries its (-1)^j endpoint factor at pi.
DiagonalOperator first_order_expansion(OperatorFamily family, double s0, double eps);

/// The family member at angle s.
DiagonalOperator family_member(OperatorFamily family, double s);

}  // namespace qsym
