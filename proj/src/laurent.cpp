#include "qsym/laurent.hpp"

#include <sstream>

namespace qsym {

LaurentPoly::LaurentPoly(long long n) { add(0, {n, 0}); }

LaurentPoly::LaurentPoly(GaussInt c) { add(0, c); }

LaurentPoly LaurentPoly::q_power(int k, GaussInt c) {
  LaurentPoly p;
  p.add(k, c);
  return p;
}

GaussInt LaurentPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? GaussInt{} : it->second;
}

void LaurentPoly::add(int k, GaussInt c) {
  if (c.is_zero()) return;
  auto [it, inserted] = c_.emplace(k, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.c_) add(k, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.c_) add(k, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [i, x] : a.c_)
    for (const auto& [j, y] : b.c_) out.add(i + j, x * y);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [k, c] : c_) out.c_.emplace(k, -c);
  return out;
}

std::complex<double> LaurentPoly::evaluate(std::complex<double> q) const {
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : c_)
    sum += std::complex<double>(static_cast<double>(c.re), static_cast<double>(c.im)) * std::pow(q, k);
  return sum;
}

namespace {

std::string gauss_to_string(GaussInt c) {
  std::ostringstream os;
  if (c.im == 0) {
    os << c.re;
  } else if (c.re == 0) {
    os << c.im << "i";
  } else {
    os << "(" << c.re << (c.im < 0 ? "-" : "+") << (c.im < 0 ? -c.im : c.im) << "i)";
  }
  return os.str();
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto [k, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << gauss_to_string(c);
    if (k != 0) os << "*q^" << k;
  }
  return os.str();
}

}  // namespace qsym
