#pragma once

#include <complex>
#include <map>
#include <string>

namespace qsym {

/// Gaussian integer a + bi.
struct GaussInt {
  long long re = 0;
  long long im = 0;

  bool is_zero() const noexcept { return re == 0 && im == 0; }
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
  friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(GaussInt a, GaussInt b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussInt operator-() const { return {-re, -im}; }
};

/// Finite Laurent polynomial in q with Gaussian-integer coefficients. Used
/// as an exact coefficient ring for identity verification.
class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(long long n);  // NOLINT: implicit integer constants
  LaurentPoly(GaussInt c);   // NOLINT

  static LaurentPoly q_power(int k, GaussInt c = {1, 0});

  const std::map<int, GaussInt>& terms() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  GaussInt coeff(int k) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::complex<double> evaluate(std::complex<double> q) const;
  std::string to_string() const;

private:
  void add(int k, GaussInt c);
  std::map<int, GaussInt> c_;
};

}  // namespace qsym
