#include "qsym/qcore.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

namespace {

constexpr double kRootTol = 1e-12;

// Returns k if x = k*pi/2 up to relative rounding, else nullopt-like sentinel.
bool quarter_turns(double x, long long& k) {
  const double r = x / (std::numbers::pi / 2);
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-13 * std::max(1.0, std::abs(r))) {
    k = static_cast<long long>(nearest);
    return true;
  }
  return false;
}

int mod4(long long k) { return static_cast<int>(((k % 4) + 4) % 4); }

bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

}  // namespace

double exact_sin(double x) {
  long long k;
  if (quarter_turns(x, k)) {
    static constexpr double table[4] = {0.0, 1.0, 0.0, -1.0};
    return table[mod4(k)];
  }
  return std::sin(x);
}

double exact_cos(double x) {
  long long k;
  if (quarter_turns(x, k)) {
    static constexpr double table[4] = {1.0, 0.0, -1.0, 0.0};
    return table[mod4(k)];
  }
  return std::cos(x);
}

cplx unit_phase(double x) { return {exact_cos(x), exact_sin(x)}; }

Deformation Deformation::unimodular(double s) { return Deformation(true, s, unit_phase(s)); }

Deformation Deformation::general(cplx q) {
  if (q == cplx{}) throw std::invalid_argument("deformation parameter q must be nonzero");
  return Deformation(false, 0.0, q);
}

Deformation Deformation::real_exp(double s) { return general(std::exp(s)); }

double Deformation::s() const {
  if (!unimodular_) throw std::logic_error("angle requested from a general deformation");
  return s_;
}

cplx Deformation::pow(double n) const {
  if (n == std::floor(n) && std::abs(n) < 1e9) return pow(static_cast<int>(n));
  if (unimodular_) return unit_phase(s_ * n);
  return std::exp(n * std::log(q_));
}

cplx Deformation::pow(int n) const {
  if (unimodular_) return unit_phase(s_ * n);
  cplx base = n >= 0 ? q_ : 1.0 / q_;
  unsigned e = static_cast<unsigned>(n >= 0 ? n : -n);
  cplx r = 1.0;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool Deformation::is_root_of_unity(int n) const { return std::abs(pow(n) - 1.0) < kRootTol; }

Deformation Deformation::squared() const {
  return unimodular_ ? unimodular(2 * s_) : general(q_ * q_);
}

Deformation Deformation::inverse() const {
  return unimodular_ ? unimodular(-s_) : general(1.0 / q_);
}

std::string Deformation::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (unimodular_) {
    os << "q=exp(i*" << s_ << ")";
  } else {
    os << "q=(" << q_.real() << "," << q_.imag() << ")";
  }
  return os.str();
}

cplx qnumber(double n, const Deformation& d) {
  const bool integral = n == std::floor(n);
  if (d.is_unimodular()) {
    const double s = d.s();
    const double den = exact_sin(s);
    if (den == 0.0) {
      if (exact_cos(s) > 0) return n;
      if (!integral) throw Error("q-number [" + std::to_string(n) + "] has no limit at q = -1");
      return std::fmod(std::abs(n), 2.0) == 1.0 ? n : -n;
    }
    return exact_sin(n * s) / den;
  }
  const cplx q = d.q();
  if (near(q, 1.0)) return n;
  if (near(q, -1.0)) {
    if (!integral) throw Error("q-number [" + std::to_string(n) + "] has no limit at q = -1");
    return std::fmod(std::abs(n), 2.0) == 1.0 ? n : -n;
  }
  return (d.pow(n) - d.pow(-n)) / (q - 1.0 / q);
}

cplx qnumber(int n, const Deformation& d) { return qnumber(static_cast<double>(n), d); }

cplx qfactorial(int n, const Deformation& d) {
  cplx r = 1.0;
  for (int m = 1; m <= n; ++m) r *= qnumber(m, d);
  return r;
}

TruncatedSeries q_derivative(const TruncatedSeries& f, const Deformation& d) {
  if (f.nvars() != 1) throw std::invalid_argument("q-derivative needs a 1-variable series");
  TruncatedSeries out(1, std::max(f.order() - 1, 0));
  for (const auto& [e, c] : f.terms()) {
    if (e[0] == 0) continue;
    out.set(e[0] - 1, qnumber(e[0], d) * c);
  }
  return out;
}

namespace {

void require_inside_unit_disk(const Deformation& d) {
  if (std::abs(d.q()) >= 1.0) {
    throw NonConvergence("Jackson integral needs |q| < 1, got |q| = " +
                         std::to_string(std::abs(d.q())));
  }
}

// (1/q - q) sum_{n>=0} q^{(2n+1)k}, summed until the geometric tail is below tol.
cplx jackson_weight_partial(const Deformation& d, int k, double tol) {
  const cplx q = d.q();
  const cplx ratio = d.pow(2 * k);
  const double r = std::abs(ratio);
  cplx term = d.pow(k);
  cplx sum = 0.0;
  for (long n = 0;; ++n) {
    sum += term;
    term *= ratio;
    if (std::abs(term) / (1.0 - r) < tol) break;
    if (n > 2'000'000'000L) throw NonConvergence("Jackson partial sum did not settle");
  }
  return (1.0 / q - q) * sum;
}

cplx jackson_weight_closed(const Deformation& d, int k) {
  const cplx q = d.q();
  return (1.0 / q - q) * d.pow(k) / (1.0 - d.pow(2 * k));
}

}  // namespace

TruncatedSeries jackson_integral(const TruncatedSeries& f, const Deformation& d,
                                 JacksonMethod method, double tail_tol) {
  if (f.nvars() != 1) throw std::invalid_argument("Jackson integral needs a 1-variable series");
  require_inside_unit_disk(d);
  TruncatedSeries out(1, f.order() + 1);
  for (const auto& [e, c] : f.terms()) {
    const int k = e[0] + 1;
    const cplx w = method == JacksonMethod::ClosedForm ? jackson_weight_closed(d, k)
                                                       : jackson_weight_partial(d, k, tail_tol);
    out.set(k, w * c);
  }
  return out;
}

cplx jackson_integral_at(const TruncatedSeries& f, const Deformation& d, cplx x,
                         double tail_tol) {
  if (f.nvars() != 1) throw std::invalid_argument("Jackson integral needs a 1-variable series");
  require_inside_unit_disk(d);
  const cplx q = d.q();
  const double aq = std::abs(q);
  double bound = 0.0;
  for (const auto& [e, c] : f.terms()) bound += std::abs(c) * std::pow(std::abs(x), e[0]);
  cplx sum = 0.0;
  cplx node = q;  // q^{2n+1}
  for (long n = 0;; ++n) {
    sum += node * evaluate(f, node * x);
    node *= q * q;
    // |node f(node x)| <= |node| * bound for every later n since |node| < 1.
    if (bound * std::abs(node) / (1.0 - aq * aq) < tail_tol) break;
    if (n > 2'000'000'000L) throw NonConvergence("Jackson pointwise sum did not settle");
  }
  return (1.0 / q - q) * x * sum;
}

TruncatedSeries q_exponential(cplx k, const Deformation& d, int order) {
  TruncatedSeries out(1, order);
  cplx c = 1.0;
  out.set(0, c);
  for (int n = 1; n <= order; ++n) {
    const cplx qn = qnumber(n, d);
    if (std::abs(qn) < kRootTol) {
      throw DegenerateDeformation("q-exponential: [" + std::to_string(n) + "] = 0 at " +
                                      d.describe(),
                                  n);
    }
    c *= k / qn;
    out.set(n, c);
  }
  return out;
}

}  // namespace qsym
