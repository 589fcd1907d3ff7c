#include "qsym/ncalgebra.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qsym {

std::string to_string(Letter l) {
  static const char* names[] = {"x", "y", "z", "dx", "dy", "dz"};
  return names[static_cast<int>(l)];
}

std::string to_string(const Word& w) {
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += " ";
    s += to_string(l);
  }
  return s;
}

std::string coeff_to_string(const cplx& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

RewriteSystem<cplx> numeric_system(const Deformation& d, int dim) {
  return RewriteSystem<cplx>(dim, d.q(), d.pow(-1));
}

RewriteSystem<LaurentPoly> symbolic_system(int dim) {
  return RewriteSystem<LaurentPoly>(dim, LaurentPoly::q_power(1), LaurentPoly::q_power(-1));
}

NCPoly<cplx> evaluate_at(const NCPoly<LaurentPoly>& p, cplx q) {
  NCPoly<cplx> out;
  for (const auto& [w, c] : p.terms()) out.add_term(w, c.evaluate(q));
  return out;
}

namespace {

double difference(const NCPoly<cplx>& a, const NCPoly<cplx>& b) {
  double scale = 1.0, diff = 0.0;
  for (const auto& [w, c] : a.terms()) scale = std::max(scale, std::abs(c));
  const auto delta = a - b;
  for (const auto& [w, c] : delta.terms()) diff = std::max(diff, std::abs(c));
  return diff / scale;
}

double difference(const NCPoly<LaurentPoly>& a, const NCPoly<LaurentPoly>& b) {
  return a == b ? 0.0 : 1.0;
}

template <class C>
ConfluenceReport fuzz(const RewriteSystem<C>& R, int trials, int max_degree, std::uint64_t seed,
                      double threshold) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(0, 2 * R.dim() - 1);
  std::uniform_int_distribution<int> degree(1, std::max(max_degree, 1));
  ConfluenceReport rep;
  for (int t = 0; t < trials; ++t) {
    Word w;
    const int n = degree(rng);
    for (int i = 0; i < n; ++i) {
      const int g = letter(rng);
      w.push_back(g < R.dim() ? coordinate(g) : derivative(g - R.dim()));
    }
    const auto p = NCPoly<C>::word(w);
    NormalOrderStats left_stats, right_stats;
    const auto left = normal_order(p, R, Strategy::Leftmost, &left_stats);
    const auto right = normal_order(p, R, Strategy::Rightmost, &right_stats);
    rep.max_rewrites = std::max({rep.max_rewrites, left_stats.rewrites, right_stats.rewrites});
    const double d = difference(left, right);
    rep.max_difference = std::max(rep.max_difference, d);
    if (d > threshold) {
      ++rep.divergences;
      if (rep.examples.size() < 5) rep.examples.push_back(to_string(w));
    }
    ++rep.trials;
  }
  return rep;
}

}  // namespace

ConfluenceReport confluence_fuzz(const RewriteSystem<cplx>& R, int trials, int max_degree,
                                 std::uint64_t seed) {
  return fuzz(R, trials, max_degree, seed, 1e-12);
}

ConfluenceReport confluence_fuzz(const RewriteSystem<LaurentPoly>& R, int trials, int max_degree,
                                 std::uint64_t seed) {
  return fuzz(R, trials, max_degree, seed, 0.0);
}

std::vector<IdentityCheck> plane_identity_checks() {
  using P = NCPoly<LaurentPoly>;
  const auto R = symbolic_system(2);
  const auto ops = plane_operators(R);
  const LaurentPoly q = LaurentPoly::q_power(1), one = 1, two = 2;
  const LaurentPoly i = GaussInt{0, 1};
  const auto& [x, y, px, py, Lz] = ops;
  auto comm = [](const P& a, const P& b) { return a * b - b * a; };
  auto check = [&](std::string id, std::string expected, const P& lhs, const P& rhs,
                   std::optional<cplx> at = std::nullopt) {
    return IdentityCheck{std::move(id), std::move(expected), verify_identity(lhs, rhs, R), at};
  };

  std::vector<IdentityCheck> out;
  out.push_back(check("Eq.33-px-y", "p_x y = q y p_x", px * y, q * (y * px)));
  out.push_back(check("Eq.33-py-x", "p_y x = q x p_y", py * x, q * (x * py)));
  out.push_back(check("Eq.33-py-px", "p_y p_x = q p_x p_y", py * px, q * (px * py)));
  out.push_back(check("Eq.33-px-x", "p_x x = -i q^2 + q^2 x p_x + q(q-1) y p_y", px * x,
                      P::scalar(-i * q * q) + (q * q) * (x * px) + (q * (q - one)) * (y * py)));
  out.push_back(check("Eq.33-py-y", "p_y y = -i q + q^2 y p_y", py * y,
                      P::scalar(-i * q) + (q * q) * (y * py)));

  const P line1_rhs = (one - q) * (px * py);
  const P line2_rhs = (i * q) * py + (q - one) * (Lz * px) - (q * (q * q - one)) * (y * py * py);
  const P line3_rhs = (-i * q) * px - (q * q * q - one) * (Lz * py) + (q * (q * q - one)) * (x * py * py);
  out.push_back(check("Eq.35-line1", "[p_x, p_y] = (1-q) p_x p_y", comm(px, py), line1_rhs));
  out.push_back(check("Eq.35-line2", "[p_x, L_z] = i q p_y + (q-1) L_z p_x - q(q^2-1) y p_y^2",
                      comm(px, Lz), line2_rhs));
  out.push_back(check("Eq.35-line3", "[p_y, L_z] = -i q p_x - (q^3-1) L_z p_y + q(q^2-1) x p_y^2",
                      comm(py, Lz), line3_rhs));
  // Forms closed by the exchange rules: i q^2 p_y in line 2, +(q^3 - 1) L_z p_y in line 3.
  out.push_back(check("Eq.35-line2-derived",
                      "[p_x, L_z] = i q^2 p_y + (q-1) L_z p_x - q(q^2-1) y p_y^2", comm(px, Lz),
                      line2_rhs + (i * q * (q - one)) * py));
  out.push_back(check("Eq.35-line3-derived",
                      "[p_y, L_z] = -i q p_x + (q^3-1) L_z p_y + q(q^2-1) x p_y^2", comm(py, Lz),
                      line3_rhs + (two * (q * q * q - one)) * (Lz * py)));
  for (int k = 0; k < 3; ++k) {
    auto c = out[out.size() - 5];
    c.id += "@q=1";
    c.expected = "reduces to the E(2) relation at q = 1";
    c.at_q = cplx(1.0);
    out.push_back(c);
  }

  const std::string eq36[] = {"[p_x, p_y] = 2 p_x p_y", "[p_x, L_z] = -i p_y - 2 L_z p_x",
                              "[p_y, L_z] = i p_x + 2 L_z p_y"};
  const P eq36_rhs[] = {two * (px * py), -i * py - two * (Lz * px), i * px + two * (Lz * py)};
  const P eq36_lhs[] = {comm(px, py), comm(px, Lz), comm(py, Lz)};
  for (int k = 0; k < 3; ++k) {
    out.push_back(check("Eq.36-line" + std::to_string(k + 1), eq36[k] + " at q = 1", eq36_lhs[k],
                        eq36_rhs[k], cplx(1.0)));
    out.push_back(check("Eq.36-line" + std::to_string(k + 1) + "@q=-1", eq36[k] + " at q = -1",
                        eq36_lhs[k], eq36_rhs[k], cplx(-1.0)));
  }

  const P dx = P::letter(Letter::DX), dy = P::letter(Letter::DY);
  const P rot = y * dx - x * dy;
  out.push_back(check("Eq.34-R-Px", "[R, P_x] = P_y", comm(rot, dx), dy, cplx(1.0)));
  out.push_back(check("Eq.34-R-Py", "[R, P_y] = -P_x", comm(rot, dy), -one * dx, cplx(1.0)));
  out.push_back(check("Eq.34-Px-Py", "[P_x, P_y] = 0", comm(dx, dy), P{}, cplx(1.0)));
  return out;
}

std::string MatrixConvention::to_string() const {
  auto sign = [](int s) { return s > 0 ? "+" : "-"; };
  return std::string("v:") + sign(sv) + " r_y:" + sign(sr) + " P:" + sign(sp);
}

namespace {

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix lin(long long a, const IntMatrix& x, long long b, const IntMatrix& y) {
  IntMatrix c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a * x[i][j] + b * y[i][j];
  return c;
}

IntMatrix scaled(long long a, const IntMatrix& x) { return lin(a, x, 0, x); }

constexpr IntMatrix kOne{{{1, 0}, {0, 1}}};
constexpr IntMatrix kV{{{0, 1}, {-1, 0}}};
constexpr IntMatrix kR{{{-1, 0}, {0, 1}}};
constexpr IntMatrix kP{{{0, 1}, {1, 0}}};

// Coordinates of m in the signed basis {1, sv v, sr r, sp P}.
std::array<double, 4> decompose(const IntMatrix& m, const MatrixConvention& c) {
  const double a = m[0][0], b = m[0][1], cc = m[1][0], d = m[1][1];
  return {(a + d) / 2, c.sv * (b - cc) / 2, c.sr * (d - a) / 2, c.sp * (b + cc) / 2};
}

// [A, B]_q = AB - q BA in the signed basis.
QBasisCoeffs q_commutator(const IntMatrix& A, const IntMatrix& B, const MatrixConvention& c) {
  const auto c0 = decompose(mul(A, B), c);
  const auto c1 = decompose(scaled(-1, mul(B, A)), c);
  QBasisCoeffs out{};
  for (int k = 0; k < 4; ++k) out[k] = {c0[k], c1[k]};
  return out;
}

QBasisCoeffs negated(QBasisCoeffs c) {
  for (auto& row : c)
    for (auto& x : row) x = -x;
  return c;
}

}  // namespace

std::string to_string(const QBasisCoeffs& c) {
  static const char* names[] = {"1", "v", "r_y", "P"};
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < 4; ++b) {
    if (c[b][0] == 0 && c[b][1] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c[b][0] << (c[b][1] < 0 ? " - " : " + ") << std::abs(c[b][1]) << "q)" << names[b];
  }
  return first ? "0" : os.str();
}

MatrixCheckReport matrix_algebra_check(const MatrixConvention& conv) {
  MatrixCheckReport rep;
  rep.convention = conv;
  rep.v = scaled(conv.sv, kV);
  rep.r = scaled(conv.sr, kR);
  rep.p = scaled(conv.sp, kP);
  const auto& v = rep.v;
  const auto& r = rep.r;
  const auto& p = rep.p;
  auto comm = [](const IntMatrix& a, const IntMatrix& b) { return lin(1, mul(a, b), -1, mul(b, a)); };
  rep.lie_relations = {comm(v, r) == scaled(2, p), comm(p, v) == scaled(2, r),
                       comm(p, r) == scaled(2, v)};
  rep.squares_ok = mul(r, r) == kOne && mul(p, p) == kOne && mul(v, v) == scaled(-1, kOne);

  const IntMatrix Ry = lin(1, r, 1, v), V = lin(1, r, -1, v);
  // Basis order {1, v, r_y, P}; entries {constant, q}.
  const QBasisCoeffs exp1{{{0, 0}, {1, 1}, {1, 1}, {0, 0}}};
  const QBasisCoeffs exp2{{{0, 0}, {1, 1}, {-1, -1}, {0, 0}}};
  const QBasisCoeffs exp3{{{2, -2}, {0, 0}, {0, 0}, {-2, -2}}};
  const std::pair<IntMatrix, IntMatrix> pairs[] = {{Ry, p}, {V, p}, {Ry, V}};
  const QBasisCoeffs expected[] = {exp1, exp2, exp3};
  const char* ids[] = {"Eq.2-RyP", "Eq.2-VP", "Eq.2-RyV"};
  for (int k = 0; k < 3; ++k) {
    auto& res = rep.q_commutators[k];
    res.id = ids[k];
    res.expected = expected[k];
    res.achieved = q_commutator(pairs[k].first, pairs[k].second, conv);
    res.verdict = res.achieved == res.expected            ? "confirmed"
                  : res.achieved == negated(res.expected) ? "sign-flip"
                                                          : "mismatch";
  }
  return rep;
}

std::vector<MatrixCheckReport> matrix_algebra_scan() {
  std::vector<MatrixCheckReport> out;
  for (int sv : {1, -1})
    for (int sr : {1, -1})
      for (int sp : {1, -1}) out.push_back(matrix_algebra_check({sv, sr, sp}));
  return out;
}

}  // namespace qsym
