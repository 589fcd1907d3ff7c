#include "qsym/ncplane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsym {

std::string to_string(PdeTerm t) {
  static const char* names[] = {"dx", "dxdy", "dx^2", "dy^2"};
  return names[static_cast<int>(t)];
}

bool AffineCoeff::near(const AffineCoeff& o, double tol) const {
  return std::abs(c0 - o.c0) <= tol && std::abs(cx - o.cx) <= tol && std::abs(cy - o.cy) <= tol;
}

std::string AffineCoeff::to_string() const {
  std::ostringstream os;
  auto part = [&](cplx c, const char* var) {
    if (std::abs(c) < 1e-15) return;
    if (os.tellp() > 0) os << " + ";
    if (std::abs(c.imag()) < 1e-15)
      os << c.real();
    else
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    os << var;
  };
  part(c0, "");
  part(cx, "*x");
  part(cy, "*y");
  return os.tellp() > 0 ? os.str() : "0";
}

PdeOperator eq37_operator() {
  PdeOperator op{"q=-1 equation as printed", {}};
  op.coeff[int(PdeTerm::Dx)] = {1.0, 0, 0};
  op.coeff[int(PdeTerm::Dxy)] = {0, 0, 2.0};
  op.coeff[int(PdeTerm::Dyy)] = {0, 2.0, 0};
  return op;
}

PdeOperator general_q_operator(const Deformation& d) {
  const cplx q = d.q(), q2 = d.pow(2), q3 = d.pow(3);
  PdeOperator op{"general q: " + d.describe(), {}};
  op.coeff[int(PdeTerm::Dx)] = {-q, 0, 0};
  op.coeff[int(PdeTerm::Dxy)] = {0, 0, q * (q3 - 1.0)};
  op.coeff[int(PdeTerm::Dxx)] = {0, -(q2 - 1.0), 0};
  op.coeff[int(PdeTerm::Dyy)] = {-q2 * (q - 1.0), -(q2 - 1.0), 0};
  return op;
}

std::vector<CoefficientComparison> compare_with_eq37(const PdeOperator& op) {
  const auto ref = eq37_operator();
  std::vector<CoefficientComparison> out;
  for (int t = 0; t < 4; ++t)
    out.push_back({PdeTerm(t), op.coeff[t], ref.coeff[t], op.coeff[t].near(ref.coeff[t], 1e-12)});
  return out;
}

std::string SolutionCandidate::label() const {
  std::ostringstream os;
  os << "sigma_x=" << (sigma_x > 0 ? "+" : "-") << " sigma_y=" << (sigma_y > 0 ? "+" : "-")
     << " kind=" << (kind == BesselKind::I ? "I" : "K");
  return os.str();
}

Jet1 candidate_x_factor(const SolutionCandidate& c, double x) {
  const double a = c.sigma_x * c.alpha;
  const double g = std::exp(a * x * x), l1 = 2 * a * x;
  return {g, l1 * g, (2 * a + l1 * l1) * g};
}

Jet1 candidate_y_factor(const SolutionCandidate& c, double y) {
  if (!(y > 0)) throw std::invalid_argument("candidate needs y > 0");
  if (!(c.alpha > 0)) throw std::invalid_argument("candidate needs alpha > 0");
  constexpr double nu = 0.25;
  const double u = c.alpha * y * y / 2, du = c.alpha * y;
  const auto jet = bessel_quarter_scaled_jet(c.kind, u);
  // Z = e^{+-u} * scaled value; fold that exponential into the Gaussian.
  const double shift = c.kind == BesselKind::I ? 1.0 : -1.0;
  const double f = c.amplitude * std::sqrt(y) * std::exp((c.sigma_y + shift) * u) * jet.value;
  // Logarithmic derivatives of sqrt(y) e^{sigma_y u} Z(u).
  const double r1 = jet.derivative / jet.value;
  const double r2 = -r1 / u + 1 + nu * nu / (u * u);
  const double l1 = 1 / (2 * y) + (c.sigma_y + r1) * du;
  const double l2 = -1 / (2 * y * y) + c.sigma_y * c.alpha + (r2 - r1 * r1) * du * du + r1 * c.alpha;
  return {f, l1 * f, (l2 + l1 * l1) * f};
}

double candidate_value(const SolutionCandidate& c, double x, double y) {
  return candidate_x_factor(c, x).value * candidate_y_factor(c, y).value;
}

PartialJet candidate_derivatives(const SolutionCandidate& c, double x, double y) {
  const Jet1 g = candidate_x_factor(c, x), f = candidate_y_factor(c, y);
  return {g.value * f.value, g.d1 * f.value, g.value * f.d1,
          g.d1 * f.d1,       g.d2 * f.value, g.value * f.d2};
}

PartialJet candidate_derivatives_fd(const SolutionCandidate& c, double x, double y, double h,
                                    int order) {
  if (order != 2 && order != 4) throw std::invalid_argument("finite-difference order must be 2 or 4");
  // Stencil offsets and weights for d/dt and d^2/dt^2.
  std::vector<int> off;
  std::vector<double> w1, w2;
  if (order == 2) {
    off = {-1, 0, 1};
    w1 = {-0.5, 0, 0.5};
    w2 = {1, -2, 1};
  } else {
    off = {-2, -1, 0, 1, 2};
    w1 = {1.0 / 12, -8.0 / 12, 0, 8.0 / 12, -1.0 / 12};
    w2 = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
  }
  auto psi = [&](int i, int j) { return candidate_value(c, x + i * h, y + j * h); };
  PartialJet out;
  out.value = psi(0, 0);
  for (std::size_t a = 0; a < off.size(); ++a) {
    const double px = psi(off[a], 0), py = psi(0, off[a]);
    out.dx += w1[a] * px / h;
    out.dxx += w2[a] * px / (h * h);
    out.dy += w1[a] * py / h;
    out.dyy += w2[a] * py / (h * h);
    for (std::size_t b = 0; b < off.size(); ++b)
      if (w1[a] != 0 && w1[b] != 0) out.dxy += w1[a] * w1[b] * psi(off[a], off[b]) / (h * h);
  }
  return out;
}

namespace {

std::array<cplx, 4> operator_terms(const PdeOperator& op, const PartialJet& j, double x, double y) {
  return {op.coeff[0].at(x, y) * j.dx, op.coeff[1].at(x, y) * j.dxy, op.coeff[2].at(x, y) * j.dxx,
          op.coeff[3].at(x, y) * j.dyy};
}

}  // namespace

cplx apply_operator(const PdeOperator& op, const PartialJet& j, double x, double y) {
  const auto t = operator_terms(op, j, x, y);
  return t[0] + t[1] + t[2] + t[3];
}

ResidualField pde_residual(const PdeOperator& op, const SolutionCandidate& c, const Grid& grid,
                           DerivativeMethod method, double h, int fd_order) {
  const double reach = method == DerivativeMethod::FiniteDifference ? (fd_order / 2) * h : 0.0;
  if (grid.y0 - reach <= 0 || grid.y1 - reach <= 0)
    throw std::invalid_argument("residual grid must stay in y > 0");
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("empty residual grid");
  ResidualField field;
  for (int i = 0; i < grid.nx; ++i) {
    const double x = grid.nx == 1 ? grid.x0 : grid.x0 + (grid.x1 - grid.x0) * i / (grid.nx - 1);
    for (int j = 0; j < grid.ny; ++j) {
      const double y = grid.ny == 1 ? grid.y0 : grid.y0 + (grid.y1 - grid.y0) * j / (grid.ny - 1);
      const PartialJet d = method == DerivativeMethod::Analytic
                               ? candidate_derivatives(c, x, y)
                               : candidate_derivatives_fd(c, x, y, h, fd_order);
      const auto terms = operator_terms(op, d, x, y);
      double biggest = 0;
      for (const auto& t : terms) biggest = std::max(biggest, std::abs(t));
      const cplx r = terms[0] + terms[1] + terms[2] + terms[3];
      field.samples.push_back({x, y, r, biggest});
      field.max_residual = std::max(field.max_residual, std::abs(r));
      field.max_term = std::max(field.max_term, biggest);
    }
  }
  return field;
}

std::vector<double> separated_ode_residual(const std::function<Jet1(double)>& f, double alpha,
                                           const std::vector<double>& y_grid) {
  std::vector<double> out;
  out.reserve(y_grid.size());
  for (double y : y_grid) {
    const Jet1 j = f(y);
    out.push_back(j.d2 - 2 * alpha * y * j.d1 - alpha * j.value);
  }
  return out;
}

std::vector<VariantResult> scan_variants(const PdeOperator& op, double alpha, const Grid& grid) {
  std::vector<VariantResult> out;
  for (int sy : {-1, 1})
    for (BesselKind k : {BesselKind::I, BesselKind::K}) {
      SolutionCandidate c{alpha, -1, sy, k, 1.0};
      out.push_back({c, pde_residual(op, c, grid).relative(), sy == -1 && k == BesselKind::I});
    }
  std::stable_sort(out.begin(), out.end(), [](const VariantResult& a, const VariantResult& b) {
    return a.relative_residual < b.relative_residual;
  });
  return out;
}

ProfileResult asymptotic_profile(const SolutionCandidate& c, double x0,
                                 const std::vector<double>& y_values) {
  if (y_values.empty()) throw std::invalid_argument("empty profile range");
  ProfileResult p;
  for (double y : y_values) p.samples.push_back({y, std::abs(candidate_value(c, x0, y))});
  const double last_y = p.samples.back().first, half = last_y / 2;
  const auto mid = std::min_element(p.samples.begin(), p.samples.end(), [&](auto& a, auto& b) {
    return std::abs(a.first - half) < std::abs(b.first - half);
  });
  p.ratio = mid->second > 0 ? p.samples.back().second / mid->second : 0.0;
  p.behavior = p.ratio < 0.9 ? "decays" : p.ratio > 1.1 ? "grows" : "constant";
  return p;
}

}  // namespace qsym
