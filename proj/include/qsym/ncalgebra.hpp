#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsym/laurent.hpp"
#include "qsym/qcore.hpp"

namespace qsym {

/// Generators, in canonical order: coordinates x < y < z, then derivatives.
enum class Letter : std::uint8_t { X = 0, Y = 1, Z = 2, DX = 3, DY = 4, DZ = 5 };
using Word = std::vector<Letter>;

constexpr bool is_coordinate(Letter l) noexcept { return static_cast<int>(l) < 3; }
constexpr int axis_of(Letter l) noexcept { return static_cast<int>(l) % 3; }
constexpr Letter coordinate(int axis) noexcept { return static_cast<Letter>(axis); }
constexpr Letter derivative(int axis) noexcept { return static_cast<Letter>(axis + 3); }
std::string to_string(Letter l);
std::string to_string(const Word& w);

// Coefficient-ring helpers, overloaded for cplx and LaurentPoly.
inline bool coeff_is_zero(const cplx& c) { return c == cplx{}; }
inline bool coeff_is_zero(const LaurentPoly& c) { return c.is_zero(); }
std::string coeff_to_string(const cplx& c);
inline std::string coeff_to_string(const LaurentPoly& c) { return c.to_string(); }

template <class C>
C gaussian(long long re, long long im);
template <>
inline cplx gaussian<cplx>(long long re, long long im) {
  return {static_cast<double>(re), static_cast<double>(im)};
}
template <>
inline LaurentPoly gaussian<LaurentPoly>(long long re, long long im) {
  return LaurentPoly(GaussInt{re, im});
}

/// Finite sum of coefficient-weighted words. Zero coefficients are never stored.
template <class C>
class NCPoly {
public:
  NCPoly() = default;

  static NCPoly scalar(const C& c) { return word({}, c); }
  static NCPoly letter(Letter l, const C& c = gaussian<C>(1, 0)) { return word({l}, c); }
  static NCPoly word(const Word& w, const C& c = gaussian<C>(1, 0)) {
    NCPoly p;
    p.add_term(w, c);
    return p;
  }

  void add_term(const Word& w, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  const std::map<Word, C>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
    return d;
  }
  C coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? C{} : it->second;
  }

  /// Every word is sorted x < y < z < dx < dy < dz.
  bool is_normal_ordered() const {
    for (const auto& [w, c] : terms_)
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) return false;
    return true;
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (const auto& [u, x] : a.terms_)
      for (const auto& [v, y] : b.terms_) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        out.add_term(w, x * y);
      }
    return out;
  }
  friend NCPoly operator*(const C& s, const NCPoly& a) {
    NCPoly out;
    for (const auto& [w, c] : a.terms_) out.add_term(w, s * c);
    return out;
  }
  friend bool operator==(const NCPoly&, const NCPoly&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + coeff_to_string(c) + ")";
      if (!w.empty()) s += "*" + qsym::to_string(w);
    }
    return s;
  }

private:
  std::map<Word, C> terms_;
};

/// Exchange rules of the q-deformed coordinates and derivatives (i < j):
///   x_j x_i   -> q^{-1} x_i x_j
///   d_j d_i   -> q d_i d_j
///   d_i x_j   -> q x_j d_i                      (i != j)
///   d_i x_i   -> 1 + q^2 x_i d_i + (q^2 - 1) sum_{j>i} x_j d_j
/// Each rule either removes an inversion or lowers the degree, so rewriting
/// terminates.
template <class C>
class RewriteSystem {
public:
  RewriteSystem(int dim, C q, C q_inv) : dim_(dim), q_(std::move(q)), q_inv_(std::move(q_inv)) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1..3");
    one_ = gaussian<C>(1, 0);
    q2_ = q_ * q_;
    q2m1_ = q2_ - one_;
  }

  int dim() const noexcept { return dim_; }
  const C& q() const noexcept { return q_; }

  static bool in_order(Letter a, Letter b) noexcept { return a <= b; }

  /// Replacement for the out-of-order adjacent pair (a, b).
  std::vector<std::pair<C, Word>> rewrite_pair(Letter a, Letter b) const {
    check(a);
    check(b);
    const int i = axis_of(a), j = axis_of(b);
    if (is_coordinate(a) && is_coordinate(b)) return {{q_inv_, {b, a}}};
    if (!is_coordinate(a) && !is_coordinate(b)) return {{q_, {b, a}}};
    // derivative before coordinate
    if (i != j) return {{q_, {b, a}}};
    std::vector<std::pair<C, Word>> out{{one_, {}}, {q2_, {b, a}}};
    for (int k = i + 1; k < dim_; ++k) out.push_back({q2m1_, {coordinate(k), derivative(k)}});
    return out;
  }

  void check(Letter l) const {
    if (axis_of(l) >= dim_)
      throw std::invalid_argument("generator " + to_string(l) + " outside dimension " +
                                  std::to_string(dim_));
  }

private:
  int dim_;
  C q_, q_inv_, one_, q2_, q2m1_;
};

RewriteSystem<cplx> numeric_system(const Deformation& d, int dim);
RewriteSystem<LaurentPoly> symbolic_system(int dim);

enum class Strategy { Leftmost, Rightmost };

struct NormalOrderStats {
  long long rewrites = 0;
};

/// Exhaustive rewriting to the canonical form. Throws if more than
/// max_rewrites rule applications are needed.
template <class C>
NCPoly<C> normal_order(const NCPoly<C>& p, const RewriteSystem<C>& R,
                       Strategy strategy = Strategy::Leftmost, NormalOrderStats* stats = nullptr,
                       long long max_rewrites = 50'000'000) {
  // Longer words first, so every word is fully expanded before shorter words
  // it produces are popped; equal words meet in the map and combine.
  struct LongerFirst {
    bool operator()(const Word& a, const Word& b) const {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    }
  };
  std::map<Word, C, LongerFirst> pending;
  auto push = [&](const Word& w, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = pending.emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) pending.erase(it);
    }
  };
  for (const auto& [w, c] : p.terms()) {
    for (Letter l : w) R.check(l);
    push(w, c);
  }
  NCPoly<C> out;
  long long count = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const C& c = node.mapped();
    std::optional<std::size_t> at;
    if (strategy == Strategy::Leftmost) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!R.in_order(w[i], w[i + 1])) {
          at = i;
          break;
        }
    } else {
      for (std::size_t i = w.size(); i-- > 1;)
        if (!R.in_order(w[i - 1], w[i])) {
          at = i - 1;
          break;
        }
    }
    if (!at) {
      out.add_term(w, c);
      continue;
    }
    if (++count > max_rewrites) throw std::runtime_error("normal_order: rewrite budget exceeded");
    for (const auto& [k, rep] : R.rewrite_pair(w[*at], w[*at + 1])) {
      Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*at));
      nw.insert(nw.end(), rep.begin(), rep.end());
      nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(*at) + 2, w.end());
      push(nw, k * c);
    }
  }
  if (stats) stats->rewrites += count;
  return out;
}

template <class C>
NCPoly<C> commutator(const NCPoly<C>& a, const NCPoly<C>& b, const RewriteSystem<C>& R) {
  return normal_order(a * b - b * a, R);
}

/// Normal form of lhs - rhs; zero means the identity holds.
template <class C>
NCPoly<C> verify_identity(const NCPoly<C>& lhs, const NCPoly<C>& rhs, const RewriteSystem<C>& R) {
  return normal_order(lhs - rhs, R);
}

/// Substitute a numeric q into an exact polynomial.
NCPoly<cplx> evaluate_at(const NCPoly<LaurentPoly>& p, cplx q);

struct ConfluenceReport {
  int trials = 0;
  int divergences = 0;
  long long max_rewrites = 0;
  double max_difference = 0.0;
  std::vector<std::string> examples;  // first few divergent words
};

/// Random words of degree 1..max_degree, normal-ordered leftmost-first and
/// rightmost-first; any difference is a divergence (exact for LaurentPoly,
/// relative 1e-12 for cplx).
ConfluenceReport confluence_fuzz(const RewriteSystem<cplx>& R, int trials, int max_degree,
                                 std::uint64_t seed = 1);
ConfluenceReport confluence_fuzz(const RewriteSystem<LaurentPoly>& R, int trials, int max_degree,
                                 std::uint64_t seed = 1);

/// Quantum-plane operators p_x = -i q^2 dx, p_y = -i q dy,
/// L_z = -i q (q y dx - x dy), together with x and y.
template <class C>
struct PlaneOperators {
  NCPoly<C> x, y, px, py, Lz;
};

template <class C>
PlaneOperators<C> plane_operators(const RewriteSystem<C>& R) {
  const C mi = gaussian<C>(0, -1);
  const C& q = R.q();
  PlaneOperators<C> ops;
  ops.x = NCPoly<C>::letter(Letter::X);
  ops.y = NCPoly<C>::letter(Letter::Y);
  ops.px = NCPoly<C>::letter(Letter::DX, mi * q * q);
  ops.py = NCPoly<C>::letter(Letter::DY, mi * q);
  ops.Lz = NCPoly<C>::word({Letter::Y, Letter::DX}, mi * q * q) -
           NCPoly<C>::word({Letter::X, Letter::DY}, mi * q);
  return ops;
}

/// One printed identity lhs = rhs, checked exactly in q.
struct IdentityCheck {
  std::string id;
  std::string expected;
  NCPoly<LaurentPoly> residual;  // normal form of lhs - rhs
  std::optional<cplx> at_q;      // set when the identity is checked at a fixed q
};

/// The plane identities: the momentum exchange relations, the deformed
/// commutators and their q -> 1 and q = -1 specializations, and the
/// classical E(2) relations at q = 1.
std::vector<IdentityCheck> plane_identity_checks();

/// 2x2 representation of {1, v, r_y, P} with signs relative to
/// v = [[0, 1], [-1, 0]], r_y = diag(-1, 1), P = [[0, 1], [1, 0]].
struct MatrixConvention {
  int sv = 1, sr = 1, sp = 1;
  std::string to_string() const;
};

using IntMatrix = std::array<std::array<long long, 2>, 2>;

/// c[b][e]: coefficient of q^e times basis element b in {1, v, r_y, P}.
using QBasisCoeffs = std::array<std::array<double, 2>, 4>;
std::string to_string(const QBasisCoeffs& c);

struct QCommutatorResult {
  std::string id;
  QBasisCoeffs expected;
  QBasisCoeffs achieved;
  std::string verdict;  // confirmed, sign-flip or mismatch
};

struct MatrixCheckReport {
  MatrixConvention convention;
  IntMatrix v, r, p;
  std::array<bool, 3> lie_relations{};  // [v, r] = 2P, [P, v] = 2r, [P, r] = 2v
  bool squares_ok = false;              // r^2 = P^2 = 1, v^2 = -1
  std::array<QCommutatorResult, 3> q_commutators;
  bool all_lie() const { return lie_relations[0] && lie_relations[1] && lie_relations[2]; }
};

MatrixCheckReport matrix_algebra_check(const MatrixConvention& conv);
/// All eight sign conventions.
std::vector<MatrixCheckReport> matrix_algebra_scan();

}  // namespace qsym
