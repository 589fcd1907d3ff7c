#include "qsym/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsym/dilation.hpp"
#include "qsym/ncalgebra.hpp"
#include "qsym/ncplane.hpp"
#include "qsym/perturb.hpp"
#include "qsym/symmetry1d.hpp"

namespace qsym {

namespace {

using std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string fmt(cplx v) {
  std::ostringstream os;
  os.precision(6);
  os << v.real();
  if (v.imag() != 0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

LedgerEntry within(std::string id, std::string expected, double residual, double tol) {
  return {std::move(id), std::move(expected), "max residual " + fmt(residual), residual,
          residual < tol ? "confirmed" : "mismatch"};
}

void matrix_entries(std::vector<LedgerEntry>& out) {
  const auto base = matrix_algebra_check({1, 1, 1});
  out.push_back({"Eq.1", "[v, r_y] = 2P, [P, v] = 2r_y, [P, r_y] = 2v",
                 "convention " + base.convention.to_string() + (base.all_lie() ? " satisfies all three" : " fails"),
                 std::nullopt, base.all_lie() && base.squares_ok ? "confirmed" : "mismatch"});
  for (const auto& c : base.q_commutators)
    out.push_back({c.id, to_string(c.expected), to_string(c.achieved), std::nullopt, c.verdict});
}

void dilation_entries(std::vector<LedgerEntry>& out) {
  double worst = 0;
  for (const auto& d : {Deformation::general(0.5), Deformation::unimodular(0.7), Deformation::unimodular(2.5)}) {
    const cplx q2 = d.pow(2);
    for (int j = 1; j <= 50; ++j) {
      const cplx lhs = cplx(j + 1) * realization_squared(d, j);
      const cplx rhs = 1.0 + q2 * cplx(j) * realization_squared(d, j - 1);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  out.push_back(within("Eq.9-solves-Eq.8", "(j+1) Q^2(j) = 1 + q^2 j Q^2(j-1), j <= 50", worst, 1e-12));

  const auto inv = limit_spectrum(OperatorFamily::SqrtWinding, pi);
  double gap = 0;
  for (int j = 0; j <= 30; ++j) gap = std::max(gap, std::abs(inv.eigenvalue(j) - cplx(j % 2 ? -1.0 : 1.0)));
  out.push_back({"Eq.10-limit-pi", "Q(j) -> (-1)^j as s -> pi, j <= 30", "max gap " + fmt(gap), gap,
                 gap == 0 ? "confirmed" : "mismatch"});

  // Images of (x, y, z) under the three-axis operators.
  auto image = [](const DiagonalOperator& op) {
    return std::array<cplx, 3>{op.eigenvalue(Exponent{1, 0, 0}), op.eigenvalue(Exponent{0, 1, 0}),
                               op.eigenvalue(Exponent{0, 0, 1})};
  };
  const cplx i(0, 1);
  const auto at_pi = q3_realization(Deformation::unimodular(pi));
  const auto at_half = q3_realization(Deformation::unimodular(pi / 2));
  const bool tables = image(at_pi.qx) == std::array<cplx, 3>{1.0, -1.0, -1.0} &&
                      image(at_pi.qy) == std::array<cplx, 3>{1.0, 1.0, -1.0} &&
                      image(at_pi.qz) == std::array<cplx, 3>{1.0, 1.0, 1.0} &&
                      image(at_half.qx) == std::array<cplx, 3>{0.0, i, i} &&
                      image(at_half.qy) == std::array<cplx, 3>{1.0, 0.0, i} &&
                      image(at_half.qz) == std::array<cplx, 3>{1.0, 1.0, 0.0};
  out.push_back({"Eq.25-tables", "mirror table at s = pi and projector table at s = pi/2",
                 tables ? "exact match" : "table differs", std::nullopt, tables ? "confirmed" : "mismatch"});
}

void symmetry_entries(std::vector<LedgerEntry>& out, const VerifyOptions& opt) {
  const int K = std::max(opt.order, 4);
  TruncatedSeries V0(1, K);
  for (int k = 0; k <= K; ++k) V0.set(k, cplx(1.0 / (1 + k), 0.1 * k));
  double worst = 0;
  for (double r : {0.5, 0.7, 0.9})
    for (double phase : {0.0, 0.4, 2.2}) {
      const auto d = Deformation::general(std::polar(r, phase));
      const auto gauge = gauge_transform_potential(V0, d.squared());
      const auto prim = qprimitive_transform(V0, d);
      for (int k = 1; k <= K; ++k)
        worst = std::max(worst, std::abs(gauge.coeff(k) - prim.coeff(k)) / std::max(1.0, std::abs(gauge.coeff(k))));
    }
  out.push_back(within("Eq.18=Eq.20", "gauge transform at q^2 equals the q-primitive route, k <= " + std::to_string(K),
                       worst, 1e-10));

  const int N = K + 2;
  const auto x2 = TruncatedSeries::monomial(1, N, {2, 0, 0});
  std::vector<TruncatedSeries> fs;
  double commutant = 0;
  for (double s : {0.3, 1.1, 2.0}) {
    const auto d = Deformation::unimodular(s);
    const auto sol = solve_q_independent(x2, 1.0, 0.0, d, N);
    fs.push_back(sol.f);
    const auto res = invariance_residual(dilation_op(d), HamiltonianSpec{sol.V, {}, 0.0}, sol.f);
    commutant = std::max(commutant, res.truncated(N - 4).max_abs());
  }
  double spread = 0;
  for (int k = 0; k <= K; ++k)
    spread = std::max({spread, std::abs(fs[0].coeff(k) - fs[1].coeff(k)), std::abs(fs[0].coeff(k) - fs[2].coeff(k))});
  out.push_back(within("Eq.19-q-independence", "f_k identical for s in {0.3, 1.1, 2.0}", spread, opt.tolerance));
  out.push_back(within("Eq.16-commutant", "[Q, H] f = 0 for V0 = x^2", commutant, opt.tolerance));

  const auto printed = printed_q_independent_coefficients(x2, 1.0, 0.0, N);
  const auto derived = q_independent_coefficients(x2, 1.0, 0.0, N);
  const double gap = max_coeff_diff(printed, derived);
  out.push_back({"Eq.19", "f_{k+2} = sum V0_{k-j} f_j / ((k+1)(k+2))",
                 "printed f_4 = " + fmt(printed.coeff(4)) + ", invariant f_4 = " + fmt(derived.coeff(4)), gap,
                 gap < opt.tolerance ? "confirmed" : "mismatch"});

  const auto sol = solve_q_independent(TruncatedSeries::monomial(1, 12, {2, 0, 0}), 1.0, 0.0,
                                       Deformation::unimodular(0.3), 12);
  std::string defects = sol.schrodinger_defects.empty() ? "none" : "";
  for (const auto& [k, v] : sol.schrodinger_defects) defects += (defects.empty() ? "k=" : ", k=") + std::to_string(k) + ": " + fmt(v);
  out.push_back({"Eq.15-completion", "W(k) and E determined for every k", "defects " + defects, std::nullopt,
                 sol.schrodinger_defects.empty() ? "confirmed" : "mismatch"});

  PartitionPotentialSpec spec{2, {}, {1.0}, {}, 16};
  const auto part = partition_recursion(spec, 1, 1.0, 0.0, 16);
  out.push_back({"Eq.23", "partition recursion agrees with the invariance recursion at q = i",
                 "max difference " + fmt(part.max_difference) + ", printed commutant residual " +
                     fmt(part.residual_printed),
                 part.max_difference, part.max_difference < opt.tolerance ? "confirmed" : "mismatch"});
}

void algebra_entries(std::vector<LedgerEntry>& out) {
  const auto rep = confluence_fuzz(numeric_system(Deformation::unimodular(0.7), 3), 1000, 6, 1);
  out.push_back({"Eq.28-confluence", "exchange rules normal-order uniquely",
                 std::to_string(rep.divergences) + " divergences in " + std::to_string(rep.trials) + " words",
                 rep.max_difference, rep.divergences == 0 ? "confirmed" : "mismatch"});
  for (const auto& c : plane_identity_checks()) {
    bool holds = c.residual.is_zero();
    std::string measured = "residual " + c.residual.to_string();
    if (c.at_q) {
      const auto v = evaluate_at(c.residual, *c.at_q);
      holds = true;
      for (const auto& [w, x] : v.terms())
        if (std::abs(x) > 1e-12) holds = false;
      measured = "at q = " + fmt(*c.at_q) + ": " + (holds ? std::string("0") : v.to_string());
    }
    out.push_back({c.id, c.expected, measured, std::nullopt, holds ? "confirmed" : "mismatch"});
  }
}

void plane_entries(std::vector<LedgerEntry>& out) {
  const auto table = compare_with_eq37(general_q_operator(Deformation::unimodular(pi)));
  std::string measured;
  bool all = true;
  for (const auto& c : table) {
    if (!measured.empty()) measured += "; ";
    measured += to_string(c.term) + ": " + c.general.to_string() + " vs " + c.reference.to_string();
    all = all && c.match;
  }
  out.push_back({"Eq.37-limit", "general-q operator at q = -1 equals dx + 2y dxdy + 2x dy^2", measured,
                 std::nullopt, all ? "confirmed" : "mismatch"});

  const auto scan = scan_variants(eq37_operator());
  const auto& best = scan.front();
  double printed = 0;
  for (const auto& v : scan)
    if (v.printed) printed = v.relative_residual;
  const bool printed_ok = printed < 1e-8;
  const bool flipped = best.relative_residual < 1e-8 && best.candidate.sigma_y == 1;
  out.push_back({"Eq.38-variant", "sigma_y = -, kind I solves the q = -1 equation",
                 "best " + best.candidate.label() + " residual " + fmt(best.relative_residual) +
                     "; printed residual " + fmt(printed),
                 printed, printed_ok ? "confirmed" : flipped ? "sign-flip" : "mismatch"});
}

void perturb_entries(std::vector<LedgerEntry>& out) {
  const GaugeField A{{1, 2, 3}, 0.01, Branch::NearZero};
  const Vec3 exact = curl_vector_potential(A), printed = printed_curl(A);
  std::string verdict = "confirmed";
  for (int i = 0; i < 3; ++i) {
    if (exact[i] == printed[i]) continue;
    verdict = exact[i] == -printed[i] && verdict != "mismatch" ? "sign-flip" : "mismatch";
  }
  out.push_back({"Eq.41-curl", "curl A = -+ eps hbar (-k_y k_z, k_x k_z, k_x k_y)",
                 "exact (" + fmt(exact[0]) + ", " + fmt(exact[1]) + ", " + fmt(exact[2]) + ") at k = (1, 2, 3)",
                 std::nullopt, verdict});

  const auto field = compare_field_with_curl({1, 2, 3}, 0.01, Branch::NearZero);
  std::string fv = "confirmed", comps;
  for (int i = 0; i < 3; ++i) {
    comps += (i ? ", " : "") + field.verdict[i];
    if (field.verdict[i] == "mismatch") fv = "mismatch";
    else if (field.verdict[i] == "sign-flip" && fv == "confirmed") fv = "sign-flip";
  }
  out.push_back({"Eq.44-field", "B = -(c/e) curl A", "components: " + comps, std::nullopt, fv});

  double worst = 0;
  for (int axis = 0; axis < 3; ++axis)
    for (Branch br : {Branch::NearZero, Branch::NearPi})
      worst = std::max(worst, perturbed_derivative_check(axis, 1e-3, br, {0.7, -1.2, 0.4}, {1.1, 0.3, -2.0})
                                  .relative_residual);
  out.push_back(within("Eq.31-vs-Eq.40", "deformed derivative on e^{ik.r} equals the shifted momentum", worst, 1e-15));

  const auto d = Deformation::unimodular(0.3);
  const auto pw = q_planewave_check(1.0, d, 14);
  out.push_back({"q-planewave", "d^ e_q(ikx) = ik e_q(ik lambda x)",
                 "lambda = " + fmt(pw.lambda) + ", residual " + fmt(pw.max_residual), pw.max_residual,
                 pw.max_residual < 1e-12 && std::abs(pw.lambda - d.q()) < 1e-12 ? "confirmed" : "mismatch"});
}

}  // namespace

std::vector<LedgerEntry> run_verification(const VerifyOptions& opt) {
  std::vector<LedgerEntry> out;
  matrix_entries(out);
  dilation_entries(out);
  symmetry_entries(out, opt);
  algebra_entries(out);
  plane_entries(out);
  perturb_entries(out);
  return out;
}

const std::map<std::string, std::string>& documented_discrepancies() {
  static const std::map<std::string, std::string> known{
      {"Eq.2-RyP", "sign-flip"},          {"Eq.2-VP", "sign-flip"},
      {"Eq.2-RyV", "mismatch"},           {"Eq.19", "mismatch"},
      {"Eq.15-completion", "mismatch"},   {"Eq.23", "mismatch"},
      {"Eq.33-px-x", "mismatch"},         {"Eq.35-line2", "mismatch"},
      {"Eq.35-line3", "mismatch"},        {"Eq.36-line1", "mismatch"},
      {"Eq.36-line2", "mismatch"},        {"Eq.36-line3", "mismatch"},
      {"Eq.36-line2@q=-1", "mismatch"},   {"Eq.36-line3@q=-1", "mismatch"},
      {"Eq.37-limit", "mismatch"},        {"Eq.38-variant", "sign-flip"},
      {"Eq.41-curl", "sign-flip"},        {"Eq.44-field", "sign-flip"},
  };
  return known;
}

LedgerAssessment assess_ledger(const std::vector<LedgerEntry>& entries,
                               const std::map<std::string, std::string>& baseline) {
  LedgerAssessment a;
  for (const auto& e : entries) {
    const auto it = baseline.find(e.id);
    const std::string want = it == baseline.end() ? "confirmed" : it->second;
    if (e.verdict == want) continue;
    if (e.verdict == "confirmed")
      a.improvements.push_back(e.id);
    else
      a.regressions.push_back(e.id);
  }
  return a;
}

}  // namespace qsym
