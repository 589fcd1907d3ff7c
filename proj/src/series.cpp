#include "qsym/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qsym {

int total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

namespace {

void require_same_nvars(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.nvars() != g.nvars()) {
    throw std::invalid_argument("series variable count mismatch: " + std::to_string(f.nvars()) +
                                " vs " + std::to_string(g.nvars()));
  }
}

void require_axis(const TruncatedSeries& f, int axis) {
  if (axis < 0 || axis >= f.nvars()) {
    throw std::invalid_argument("axis " + std::to_string(axis) + " out of range for " +
                                std::to_string(f.nvars()) + "-variable series");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || nvars > 3) throw std::invalid_argument("series supports 1 to 3 variables");
  if (order < 0) throw std::invalid_argument("truncation order must be non-negative");
}

TruncatedSeries TruncatedSeries::constant(int nvars, int order, cplx c) {
  TruncatedSeries s(nvars, order);
  s.set(Exponent{0, 0, 0}, c);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int nvars, int order, const Exponent& e, cplx c) {
  TruncatedSeries s(nvars, order);
  s.set(e, c);
  return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(int order, std::initializer_list<cplx> coeffs) {
  return from_coeffs(order, std::span<const cplx>(coeffs.begin(), coeffs.size()));
}

TruncatedSeries TruncatedSeries::from_coeffs(int order, std::span<const cplx> coeffs) {
  TruncatedSeries s(1, order);
  for (std::size_t j = 0; j < coeffs.size(); ++j) s.set(static_cast<int>(j), coeffs[j]);
  return s;
}

cplx TruncatedSeries::coeff(const Exponent& e) const {
  auto it = coeffs_.find(e);
  return it == coeffs_.end() ? cplx{} : it->second;
}

void TruncatedSeries::set(const Exponent& e, cplx c) {
  for (int a = 0; a < 3; ++a) {
    if (e[a] < 0) throw std::invalid_argument("negative exponent");
    if (a >= nvars_ && e[a] != 0) throw std::invalid_argument("exponent on unused axis");
  }
  if (total_degree(e) > order_) return;
  if (c == cplx{}) {
    coeffs_.erase(e);
  } else {
    coeffs_[e] = c;
  }
}

void TruncatedSeries::put(const Exponent& e, cplx c) {
  if (total_degree(e) > order_ || c == cplx{}) return;
  auto [it, inserted] = coeffs_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) coeffs_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries s(nvars_, std::min(order, order_));
  for (const auto& [e, c] : coeffs_) s.put(e, c);
  return s;
}

TruncatedSeries TruncatedSeries::pruned(double threshold) const {
  TruncatedSeries s(nvars_, order_);
  for (const auto& [e, c] : coeffs_) {
    if (std::abs(c) > threshold) s.coeffs_.emplace(e, c);
  }
  return s;
}

double TruncatedSeries::max_abs() const {
  double m = 0.0;
  for (const auto& [e, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::string TruncatedSeries::to_string() const {
  static constexpr const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (int a = 0; a < nvars_; ++a) {
      if (e[a] == 1) os << "*" << names[a];
      if (e[a] > 1) os << "*" << names[a] << "^" << e[a];
    }
  }
  if (first) os << "0";
  os << " + O(" << order_ + 1 << ")";
  return os.str();
}

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_nvars(f, g);
  TruncatedSeries s(f.nvars(), std::min(f.order(), g.order()));
  for (const auto& [e, c] : f.coeffs_) s.put(e, c);
  for (const auto& [e, c] : g.coeffs_) s.put(e, c);
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& f) {
  TruncatedSeries s(f.nvars(), f.order());
  for (const auto& [e, c] : f.coeffs_) s.coeffs_.emplace(e, -c);
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return f + (-g); }

TruncatedSeries operator*(cplx a, const TruncatedSeries& f) {
  TruncatedSeries s(f.nvars(), f.order());
  for (const auto& [e, c] : f.coeffs_) s.put(e, a * c);
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_nvars(f, g);
  const int order = std::min(f.order(), g.order());
  TruncatedSeries s(f.nvars(), order);
  for (const auto& [ef, cf] : f.coeffs_) {
    const int df = total_degree(ef);
    if (df > order) continue;
    for (const auto& [eg, cg] : g.coeffs_) {
      if (df + total_degree(eg) > order) continue;
      s.put(Exponent{ef[0] + eg[0], ef[1] + eg[1], ef[2] + eg[2]}, cf * cg);
    }
  }
  return s;
}

bool operator==(const TruncatedSeries& f, const TruncatedSeries& g) {
  return f.nvars_ == g.nvars_ && f.order_ == g.order_ && f.coeffs_ == g.coeffs_;
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) { return f + g; }
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g) { return f * g; }

TruncatedSeries differentiate(const TruncatedSeries& f, int axis) {
  require_axis(f, axis);
  TruncatedSeries s(f.nvars(), std::max(f.order() - 1, 0));
  for (const auto& [e, c] : f.terms()) {
    if (e[axis] == 0) continue;
    Exponent d = e;
    --d[axis];
    s.set(d, c * static_cast<double>(e[axis]));
  }
  return s;
}

TruncatedSeries scale_argument(const TruncatedSeries& f, int axis, cplx lambda) {
  require_axis(f, axis);
  TruncatedSeries s(f.nvars(), f.order());
  for (const auto& [e, c] : f.terms()) {
    // Integer powers by repeated multiplication keep lambda = +-1, +-i exact.
    cplx p = 1.0;
    for (int k = 0; k < e[axis]; ++k) p *= lambda;
    s.set(e, c * p);
  }
  return s;
}

cplx evaluate(const TruncatedSeries& f, std::span<const cplx> point) {
  if (static_cast<int>(point.size()) != f.nvars()) {
    throw std::invalid_argument("evaluation point dimension does not match series");
  }
  if (f.nvars() == 1) return evaluate(f, point[0]);
  std::array<std::vector<cplx>, 3> powers;
  for (int a = 0; a < f.nvars(); ++a) {
    powers[a].assign(f.order() + 1, 1.0);
    for (int k = 1; k <= f.order(); ++k) powers[a][k] = powers[a][k - 1] * point[a];
  }
  cplx sum = 0.0;
  for (const auto& [e, c] : f.terms()) {
    cplx t = c;
    for (int a = 0; a < f.nvars(); ++a) t *= powers[a][e[a]];
    sum += t;
  }
  return sum;
}

cplx evaluate(const TruncatedSeries& f, cplx x) {
  if (f.nvars() != 1) throw std::invalid_argument("scalar evaluation needs a 1-variable series");
  cplx acc = 0.0;
  for (int j = f.order(); j >= 0; --j) acc = acc * x + f.coeff(j);
  return acc;
}

double max_coeff_diff(const TruncatedSeries& f, const TruncatedSeries& g) {
  return (f.truncated(g.order()) - g.truncated(f.order())).max_abs();
}

}  // namespace qsym
