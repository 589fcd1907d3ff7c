#include "qsym/symmetry1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qsym/error.hpp"

namespace qsym {

namespace {

void require_1d(const TruncatedSeries& f, const char* what) {
  if (f.nvars() != 1) throw std::invalid_argument(std::string(what) + ": one-variable series");
}

double kin(int k) { return static_cast<double>(k + 1) * (k + 2); }

}  // namespace

TruncatedSeries apply_hamiltonian(const HamiltonianSpec& H, const TruncatedSeries& f) {
  require_1d(f, "apply_hamiltonian");
  const int order = std::max(f.order() - 2, 0);
  TruncatedSeries out = -differentiate(differentiate(f, 0), 0);
  out = out.truncated(order) + (H.V * f).truncated(order);
  if (H.W) {
    TruncatedSeries w(1, order);
    for (const auto& [e, c] : f.terms())
      if (e[0] <= order) w.set(e, H.W(e[0]) * c);
    out = out + w;
  }
  return out;
}

TruncatedSeries invariance_residual(const DiagonalOperator& Q, const HamiltonianSpec& H,
                                    const TruncatedSeries& f) {
  return Q.apply(apply_hamiltonian(H, f)) - apply_hamiltonian(H, Q.apply(f));
}

RecursionResult recursion_invariance(cplx f0, cplx f1, const PotentialSpec& V,
                                     const DiagonalOperator& Q, int order, double tol) {
  require_1d(V, "recursion_invariance");
  RecursionResult r{TruncatedSeries(1, order), {}, {}, {}, true, {}};
  std::vector<cplx> f(order + 1);
  if (order >= 0) f[0] = f0;
  if (order >= 1) f[1] = f1;
  for (int k = 0; k + 2 <= order; ++k) {
    cplx rhs = 0.0;
    for (int j = 0; j < k; ++j) rhs += V.coeff(k - j) * f[j] * (Q.eigenvalue(k) - Q.eigenvalue(j));
    const cplx lead = Q.eigenvalue(k) - Q.eigenvalue(k + 2);
    if (std::abs(lead) < tol) {
      r.step_constraints.push_back({k, rhs});
      r.free_indices.push_back(k + 2);
      f[k + 2] = 0.0;
    } else {
      r.kinetic_invariant = false;
      f[k + 2] = rhs / (kin(k) * lead);
    }
  }
  for (int k = 0; k <= order; ++k) r.f.set(k, f[k]);

  bool all_satisfied = true;
  for (const auto& [e, c] : V.terms()) {
    const int m = e[0];
    if (m == 0 || m > order) continue;
    double gap = 0.0;
    for (int k = m; k <= order; ++k)
      gap = std::max(gap, std::abs(Q.eigenvalue(k) - Q.eigenvalue(k - m)));
    r.potential_constraints.push_back({m, gap < tol, gap});
    all_satisfied = all_satisfied && gap < tol;
  }
  const bool free_particle = std::none_of(V.terms().begin(), V.terms().end(),
                                          [](const auto& t) { return t.first[0] > 0; });
  if (free_particle) {
    r.classification = "inversion-only symmetry";
  } else if (all_satisfied) {
    r.classification = r.kinetic_invariant ? "operator invariant" : "potential invariant";
  } else {
    r.classification = "potential constraints violated";
  }
  return r;
}

TruncatedSeries recursion_dilation(cplx f0, cplx f1, const PotentialSpec& V, const Deformation& d,
                                   int order) {
  require_1d(V, "recursion_dilation");
  const cplx den = 1.0 - d.pow(2);
  if (std::abs(den) < 1e-12) {
    std::vector<SingularModeInfo> modes;
    for (int k = 0; k + 2 <= order; ++k) modes.push_back({k, "1 - q^2 = 0"});
    throw SingularMode("dilation recursion: q^2 = 1", std::move(modes));
  }
  std::vector<cplx> f(order + 1);
  if (order >= 0) f[0] = f0;
  if (order >= 1) f[1] = f1;
  for (int k = 0; k + 2 <= order; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < k; ++j) sum += V.coeff(k - j) * f[j] * (1.0 - d.pow(j - k));
    f[k + 2] = sum / (den * kin(k));
  }
  TruncatedSeries out(1, order);
  for (int k = 0; k <= order; ++k) out.set(k, f[k]);
  return out;
}

std::optional<cplx> gauge_factor(int k, const Deformation& d) {
  if (k <= 0) throw std::invalid_argument("gauge_factor: k >= 1");
  const cplx num = d.pow(2) - 1.0;
  const cplx den = 1.0 - d.pow(-k);
  if (std::abs(den) < 1e-12) {
    // q^k = 1: finite only if q^2 = 1 as well, where the limit is 1.
    if (std::abs(num) < 1e-12) return cplx{1.0};
    return std::nullopt;
  }
  return 0.5 * k * num / den;
}

PotentialSpec gauge_transform_potential(const PotentialSpec& V0, const Deformation& d) {
  require_1d(V0, "gauge_transform_potential");
  PotentialSpec out(1, V0.order());
  std::vector<SingularModeInfo> singular;
  for (const auto& [e, c] : V0.terms()) {
    if (e[0] == 0) {
      out.set(e, c);
      continue;
    }
    if (auto g = gauge_factor(e[0], d)) {
      out.set(e, *g * c);
    } else {
      singular.push_back({e[0], "q^" + std::to_string(e[0]) + " = 1 with q^2 != 1"});
    }
  }
  if (!singular.empty()) throw SingularMode("gauge transform at " + d.describe(), singular);
  return out;
}

PotentialSpec qprimitive_transform(const PotentialSpec& V0, const Deformation& d,
                                   JacksonMethod method) {
  require_1d(V0, "qprimitive_transform");
  const cplx q = d.q();
  auto integral = jackson_integral(differentiate(V0, 0), d, method);
  PotentialSpec out = (q * q * (q + 1.0 / q) / 2.0) * scale_argument(integral, 0, q);
  out.set(0, V0.coeff(0));
  return out;
}

void complete_with_schrodinger(InvariantSolution& sol, double tol) {
  const auto& f = sol.f;
  const int top = f.order() - 2;
  sol.W.assign(std::max(top + 1, 0), std::nullopt);
  sol.schrodinger_defects.clear();
  // W(k) - E = [f_{k+2}(k+1)(k+2) - sum_l f_l V_{k-l}] / f_k.
  std::vector<std::optional<cplx>> shifted(sol.W.size());
  const double scale = std::max(f.max_abs(), 1.0);
  for (int k = 0; k <= top; ++k) {
    cplx lhs = f.coeff(k + 2) * kin(k);
    for (int l = 0; l <= k; ++l) lhs -= f.coeff(l) * sol.V.coeff(k - l);
    if (std::abs(f.coeff(k)) > tol * scale) {
      shifted[k] = lhs / f.coeff(k);
    } else if (std::abs(lhs) > 1e-12 * scale) {
      sol.schrodinger_defects.emplace_back(k, lhs);
    }
  }
  sol.E = 0.0;
  for (const auto& w : shifted) {
    if (w) {
      sol.E = -*w;
      break;
    }
  }
  for (std::size_t k = 0; k < shifted.size(); ++k)
    if (shifted[k]) sol.W[k] = *shifted[k] + sol.E;
}

TruncatedSeries q_independent_coefficients(const PotentialSpec& V0, cplx f0, cplx f1, int order) {
  require_1d(V0, "q_independent_coefficients");
  std::vector<cplx> f(order + 1);
  if (order >= 0) f[0] = f0;
  if (order >= 1) f[1] = f1;
  for (int k = 0; k + 2 <= order; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < k; ++j) sum += 0.5 * (k - j) * V0.coeff(k - j) * f[j];
    f[k + 2] = -sum / kin(k);
  }
  TruncatedSeries out(1, order);
  for (int k = 0; k <= order; ++k) out.set(k, f[k]);
  return out;
}

TruncatedSeries printed_q_independent_coefficients(const PotentialSpec& V0, cplx f0, cplx f1,
                                                   int order) {
  require_1d(V0, "printed_q_independent_coefficients");
  std::vector<cplx> f(order + 1);
  if (order >= 0) f[0] = f0;
  if (order >= 1) f[1] = f1;
  for (int k = 0; k + 2 <= order; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < k; ++j) sum += V0.coeff(k - j) * f[j];
    f[k + 2] = sum / kin(k);
  }
  TruncatedSeries out(1, order);
  for (int k = 0; k <= order; ++k) out.set(k, f[k]);
  return out;
}

InvariantSolution solve_q_independent(const PotentialSpec& V0, cplx f0, cplx f1,
                                      const Deformation& d, int order) {
  if (std::abs(1.0 - d.pow(2)) < 1e-12 && std::abs(d.q() - 1.0) > 1e-12) {
    std::vector<SingularModeInfo> modes;
    for (int k = 0; k + 2 <= order; ++k) modes.push_back({k, "Q(k) = Q(k+2) at q = -1"});
    throw SingularMode("invariance recursion is singular at " + d.describe(), std::move(modes));
  }
  InvariantSolution sol;
  sol.V = gauge_transform_potential(V0.truncated(std::min(V0.order(), order)), d);
  sol.f = q_independent_coefficients(V0, f0, f1, order);
  sol.q = d.q();
  sol.method = "gauge-substituted invariance recursion";
  complete_with_schrodinger(sol);
  return sol;
}

PotentialSpec partition_potential(const PartitionPotentialSpec& spec) {
  if (spec.N < 1) throw std::invalid_argument("partition size N must be >= 1");
  PotentialSpec V(1, spec.order);
  auto put = [&](int exponent, cplx c) {
    if (c == cplx{}) return;
    if (exponent > spec.order)
      throw std::invalid_argument("partition exponent " + std::to_string(exponent) +
                                  " exceeds order " + std::to_string(spec.order));
    V.set(exponent, V.coeff(exponent) + c);
  };
  const int N = spec.N;
  for (std::size_t j = 0; j < spec.A.size(); ++j) put(2 * static_cast<int>(j) * N, spec.A[j]);
  for (std::size_t j = 0; j < spec.B.size(); ++j) put((4 * static_cast<int>(j) + 1) * N, spec.B[j]);
  for (std::size_t j = 0; j < spec.C.size(); ++j) put((4 * static_cast<int>(j) + 3) * N, spec.C[j]);
  return V;
}

PartitionResult partition_recursion(const PartitionPotentialSpec& spec, int n, cplx f0, cplx f1,
                                    int order) {
  if (n < 1 || n > spec.N - 1)
    throw Error("partition index n = " + std::to_string(n) + " outside 1..N-1 (sin(s) = 0)");
  PartitionResult r;
  r.s = n * std::numbers::pi / spec.N;
  const auto d = Deformation::unimodular(r.s);
  const cplx den0 = unit_phase(r.s) * exact_sin(r.s);
  auto coeff = [](const std::vector<cplx>& v, int j) { return j < static_cast<int>(v.size()) ? v[j] : cplx{}; };

  std::vector<cplx> f(order + 1);
  if (order >= 0) f[0] = f0;
  if (order >= 1) f[1] = f1;
  for (int k = 0; k + 2 <= order; ++k) {
    cplx sum = 0.0;
    const int top = static_cast<int>(std::floor((k - 3) / 4.0));
    for (int j = 0; j <= top; ++j) {
      const int ib = k - 4 * j - 1, ic = k - 4 * j - 3;
      if (ib >= 0) sum += coeff(spec.B, j) * f[ib];
      if (ic >= 0) sum -= coeff(spec.C, j) * f[ic];
    }
    f[k + 2] = sum / (den0 * kin(k));
  }
  r.f_printed = TruncatedSeries(1, order);
  for (int k = 0; k <= order; ++k) r.f_printed.set(k, f[k]);

  auto pspec = spec;
  pspec.order = order;
  const auto V = partition_potential(pspec);
  const auto Q = dilation_op(d);
  r.f_direct = recursion_invariance(f0, f1, V, Q, order).f;
  r.max_difference = max_coeff_diff(r.f_printed, r.f_direct);
  const HamiltonianSpec H{V, {}, 0.0};
  r.residual_printed = invariance_residual(Q, H, r.f_printed).max_abs();
  r.residual_direct = invariance_residual(Q, H, r.f_direct).max_abs();
  return r;
}

cplx coulomb_rescaling(const Deformation& d) {
  return d.is_unimodular() ? d.q() : d.pow(0.5);
}

namespace {

cplx partial_sum(cplx z, int terms) {
  cplx sum = 0.0, p = 1.0;
  for (int k = 0; k < terms; ++k) {
    sum -= p;
    p *= z;
  }
  return sum;
}

}  // namespace

CoulombCurve deform_coulomb_curve(const Deformation& d, std::span<const double> x_grid,
                                  int terms) {
  if (terms < 1) throw std::invalid_argument("terms must be >= 1");
  CoulombCurve curve;
  curve.lambda = coulomb_rescaling(d);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double x_max = 1.0;
  for (double x : x_grid) {
    const cplx z = curve.lambda * x;
    const cplx den = z - 1.0;
    CurvePoint p{x, std::abs(den) < 1e-12 ? cplx(nan, nan) : 1.0 / den, partial_sum(z, terms),
                 false};
    const double r = std::abs(z);
    p.converged = r < 1.0 && std::pow(r, terms) / (1.0 - r) < 1e-8;
    curve.points.push_back(p);
    x_max = std::max(x_max, std::abs(x));
  }

  // Divergence scan: first |x| at which the last retained term reaches 1.
  const double step = 1e-4;
  const double lam = std::abs(curve.lambda);
  curve.convergence_radius = std::numeric_limits<double>::infinity();
  for (double x = step; x <= 4.0 * x_max; x += step) {
    if (std::pow(lam * x, terms - 1) >= 1.0) {
      curve.convergence_radius = x;
      break;
    }
  }
  if (std::isfinite(curve.convergence_radius)) {
    // The pole side is where the partial sums grow like 1/(1 - |lambda x|).
    const double probe = curve.convergence_radius * 0.98;
    const double right = std::abs(partial_sum(curve.lambda * probe, terms));
    const double left = std::abs(partial_sum(-curve.lambda * probe, terms));
    if (right > 10.0 * left) curve.pole = curve.convergence_radius;
    else if (left > 10.0 * right) curve.pole = -curve.convergence_radius;
  }
  const cplx inv = 1.0 / curve.lambda;
  if (std::abs(inv.imag()) < 1e-12) curve.closed_form_pole = inv.real();
  return curve;
}

}  // namespace qsym
