#pragma once

#include "qsym/series.hpp"

namespace qsym {

/// The deformation parameter. Unimodular mode stores the angle s and
/// guarantees |q| = 1 with q = e^{is}; general mode stores any nonzero q.
///
/// Trigonometric values at integer multiples of pi/2 are returned exactly
/// (e.g. q = i at s = pi/2), so endpoint tables come out without rounding
/// noise.
class Deformation {
public:
  static Deformation unimodular(double s);
  static Deformation general(cplx q);
  /// Real deformation q = e^{s}.
  static Deformation real_exp(double s);

  bool is_unimodular() const noexcept { return unimodular_; }
  /// Angle s; only meaningful in unimodular mode.
  double s() const;
  cplx q() const noexcept { return q_; }

  /// q^n. Integer n uses exact powers; unimodular mode uses e^{isn}.
  cplx pow(double n) const;
  cplx pow(int n) const;

  /// q^n == 1 within 1e-12.
  bool is_root_of_unity(int n) const;

  Deformation squared() const;
  Deformation inverse() const;

  std::string describe() const;

private:
  Deformation(bool unimodular, double s, cplx q) : unimodular_(unimodular), s_(s), q_(q) {}

  bool unimodular_;
  double s_;
  cplx q_;
};

/// sin/cos that return exact 0, +-1 when the argument is an integer multiple
/// of pi/2 up to rounding.
double exact_sin(double x);
double exact_cos(double x);
cplx unit_phase(double x);

/// Symmetric q-number [n] = (q^n - q^-n)/(q - q^-1) = sin(sn)/sin(s).
/// At q = 1 returns n, at q = -1 the limit (-1)^{n+1} n (integer n only).
cplx qnumber(double n, const Deformation& d);
cplx qnumber(int n, const Deformation& d);

/// [n]! = [1][2]...[n].
cplx qfactorial(int n, const Deformation& d);

/// D_q f(x) = (f(qx) - f(x/q)) / ((q - 1/q) x), term-wise x^n -> [n] x^{n-1}.
TruncatedSeries q_derivative(const TruncatedSeries& f, const Deformation& d);

enum class JacksonMethod { ClosedForm, PartialSums };

/// Jackson q-integral
///   int f d_q x = (1/q - q) x sum_{n>=0} q^{2n+1} f(q^{2n+1} x),
/// applied term-wise: x^{k-1} -> (1/q - q) q^k / (1 - q^{2k}) x^k.
/// PartialSums sums the geometric series explicitly until the tail bound
/// drops below tail_tol. Requires |q| < 1. The result carries order N + 1.
TruncatedSeries jackson_integral(const TruncatedSeries& f, const Deformation& d,
                                 JacksonMethod method = JacksonMethod::ClosedForm,
                                 double tail_tol = 1e-14);

/// Pointwise evaluation of the Jackson sum at x, truncated on a tail bound.
cplx jackson_integral_at(const TruncatedSeries& f, const Deformation& d, cplx x,
                         double tail_tol = 1e-14);

/// e_q(kx) = sum_{n<=N} k^n x^n / [n]!. Throws DegenerateDeformation naming the
/// first n <= N with [n] = 0.
TruncatedSeries q_exponential(cplx k, const Deformation& d, int order);

}  // namespace qsym
