#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <map>
#include <span>
#include <string>

namespace qsym {

using cplx = std::complex<double>;

/// Exponent multi-index. Unused trailing axes stay zero.
using Exponent = std::array<int, 3>;

int total_degree(const Exponent& e);

/// Truncated power series in one to three commuting variables with complex
/// coefficients. Every stored exponent has total degree <= order(); binary
/// arithmetic truncates to the smaller order of the two operands.
///
/// Values are immutable once built through the public operations; the only
/// mutating entry point is set(), intended for construction.
class TruncatedSeries {
public:
  TruncatedSeries(int nvars, int order);

  static TruncatedSeries constant(int nvars, int order, cplx c);
  static TruncatedSeries monomial(int nvars, int order, const Exponent& e, cplx c = 1.0);
  /// One-variable series from a dense coefficient list c[0] + c[1] x + ...
  static TruncatedSeries from_coeffs(int order, std::initializer_list<cplx> coeffs);
  static TruncatedSeries from_coeffs(int order, std::span<const cplx> coeffs);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  const std::map<Exponent, cplx>& terms() const noexcept { return coeffs_; }

  cplx coeff(const Exponent& e) const;
  cplx coeff(int j) const { return coeff(Exponent{j, 0, 0}); }

  /// Sets a coefficient; exponents beyond the order are ignored.
  void set(const Exponent& e, cplx c);
  void set(int j, cplx c) { set(Exponent{j, 0, 0}, c); }

  TruncatedSeries truncated(int order) const;
  /// Drops coefficients with magnitude <= threshold. Retained values are untouched.
  TruncatedSeries pruned(double threshold) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Largest |coefficient| over all stored terms (0 for the zero series).
  double max_abs() const;

  std::string to_string() const;

  friend TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g);
  friend TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g);
  friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g);
  friend TruncatedSeries operator*(cplx a, const TruncatedSeries& f);
  friend TruncatedSeries operator-(const TruncatedSeries& f);
  friend bool operator==(const TruncatedSeries& f, const TruncatedSeries& g);

private:
  void put(const Exponent& e, cplx c);

  int nvars_;
  int order_;
  std::map<Exponent, cplx> coeffs_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g);

/// Term-wise partial derivative along `axis`; the order drops by one.
TruncatedSeries differentiate(const TruncatedSeries& f, int axis);

/// x^j -> lambda^j x^j along `axis` (the action of lambda^{x d/dx}).
TruncatedSeries scale_argument(const TruncatedSeries& f, int axis, cplx lambda);

/// Partial-sum value at a point; point.size() must equal nvars.
cplx evaluate(const TruncatedSeries& f, std::span<const cplx> point);
cplx evaluate(const TruncatedSeries& f, cplx x);

/// Max coefficient-wise |f - g| over the shared order.
double max_coeff_diff(const TruncatedSeries& f, const TruncatedSeries& g);

}  // namespace qsym
