#include "qsym/dilation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "qsym/error.hpp"

namespace qsym {

struct DiagonalOperator::Memo {
  std::mutex mutex;
  std::map<Exponent, cplx> values;
};

DiagonalOperator::DiagonalOperator(Spectrum spectrum, std::string label, int axis)
    : spectrum_(std::move(spectrum)),
      label_(std::move(label)),
      axis_(axis),
      memo_(std::make_shared<Memo>()) {}

DiagonalOperator DiagonalOperator::on_axis(int axis, AxisSpectrum spectrum, std::string label) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis out of range");
  return DiagonalOperator([axis, fn = std::move(spectrum)](const Exponent& e) { return fn(e[axis]); },
                          std::move(label), axis);
}

DiagonalOperator DiagonalOperator::identity(int axis) {
  return on_axis(axis, [](int) { return cplx{1.0}; }, "identity");
}

cplx DiagonalOperator::eigenvalue(const Exponent& e) const {
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->values.find(e); it != memo_->values.end()) return it->second;
  }
  const cplx v = spectrum_(e);
  std::lock_guard lock(memo_->mutex);
  memo_->values.emplace(e, v);
  return v;
}

cplx DiagonalOperator::eigenvalue(int j) const {
  Exponent e{0, 0, 0};
  e[axis_ < 0 ? 0 : axis_] = j;
  return eigenvalue(e);
}

TruncatedSeries DiagonalOperator::apply(const TruncatedSeries& f) const {
  TruncatedSeries out(f.nvars(), f.order());
  for (const auto& [e, c] : f.terms()) out.set(e, eigenvalue(e) * c);
  return out;
}

DiagonalOperator DiagonalOperator::compose(const DiagonalOperator& other) const {
  return DiagonalOperator(
      [a = *this, b = other](const Exponent& e) { return a.eigenvalue(e) * b.eigenvalue(e); },
      label_ + "*" + other.label_, axis_ == other.axis_ ? axis_ : -1);
}

DiagonalOperator dilation_op(const Deformation& d, int axis) {
  return DiagonalOperator::on_axis(axis, [d](int j) { return d.pow(j); },
                                   "dilation(" + d.describe() + ")");
}

cplx realization_squared(const Deformation& d, int j) {
  return d.pow(j) * qnumber(j + 1, d) / static_cast<double>(j + 1);
}

namespace {

// Number of sign changes of sin((j+1)t) for t between 0 and s, signed like s.
int winding_count(double s, int j) {
  const double turns = std::abs(s) * (j + 1) / std::numbers::pi;
  const int m = std::min(static_cast<int>(std::floor(turns + 1e-13)), j);
  return s < 0 ? -m : m;
}

cplx i_power(int m) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((m % 4) + 4) % 4];
}

}  // namespace

cplx realization_value(const Deformation& d, int j, SqrtBranch branch) {
  if (branch == SqrtBranch::Winding && d.is_unimodular()) {
    const double s = d.s();
    if (std::abs(s) > std::numbers::pi * (1 + 1e-15)) {
      throw std::invalid_argument("winding branch is defined for s in [-pi, pi]");
    }
    const double ratio = qnumber(j + 1, d).real() / (j + 1);
    return unit_phase(s * j / 2.0) * i_power(winding_count(s, j)) * std::sqrt(std::abs(ratio));
  }
  return std::sqrt(realization_squared(d, j));
}

DiagonalOperator sqrt_realization(const Deformation& d, SqrtBranch branch, int axis) {
  return DiagonalOperator::on_axis(
      axis,
      [d, branch](int j) {
        if (std::abs(qnumber(j + 1, d)) < 1e-12) {
          throw DegenerateDeformation("realization: [" + std::to_string(j + 1) + "] = 0 at " +
                                          d.describe(),
                                      j + 1);
        }
        return realization_value(d, j, branch);
      },
      std::string("sqrt_realization(") + d.describe() + ")");
}

const DiagonalOperator& Q3Realization::operator[](int axis) const {
  switch (axis) {
    case 0: return qx;
    case 1: return qy;
    case 2: return qz;
  }
  throw std::invalid_argument("axis out of range");
}

Q3Realization q3_realization(const Deformation& d, SqrtBranch branch) {
  auto q = [d, branch](int j) { return realization_value(d, j, branch); };
  const std::string tag = "(" + d.describe() + ")";
  return Q3Realization{
      DiagonalOperator([d, q](const Exponent& e) { return q(e[0]) * d.pow(e[1] + e[2]); },
                       "Q3_x" + tag),
      DiagonalOperator([d, q](const Exponent& e) { return q(e[1]) * d.pow(e[2]); }, "Q3_y" + tag),
      DiagonalOperator([q](const Exponent& e) { return q(e[2]); }, "Q3_z" + tag),
  };
}

std::string to_string(OperatorFamily family) {
  switch (family) {
    case OperatorFamily::Dilation: return "dilation";
    case OperatorFamily::SqrtWinding: return "sqrt-winding";
    case OperatorFamily::SqrtPrincipal: return "sqrt-principal";
  }
  return "?";
}

DiagonalOperator family_member(OperatorFamily family, double s) {
  const auto d = Deformation::unimodular(s);
  switch (family) {
    case OperatorFamily::Dilation: return dilation_op(d);
    case OperatorFamily::SqrtWinding:
      return DiagonalOperator::on_axis(
          0, [d](int j) { return realization_value(d, j, SqrtBranch::Winding); }, "sqrt-winding");
    case OperatorFamily::SqrtPrincipal:
      return DiagonalOperator::on_axis(
          0, [d](int j) { return realization_value(d, j, SqrtBranch::Principal); },
          "sqrt-principal");
  }
  throw std::invalid_argument("unknown family");
}

namespace {

enum class Endpoint { Zero, Pi };

Endpoint endpoint_of(double s0) {
  if (s0 == 0.0) return Endpoint::Zero;
  if (s0 == std::numbers::pi) return Endpoint::Pi;
  throw std::invalid_argument("limits are available at s = 0 and s = pi only");
}

cplx analytic_limit(OperatorFamily family, Endpoint at, int j) {
  if (at == Endpoint::Zero) return 1.0;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  switch (family) {
    case OperatorFamily::Dilation:
    case OperatorFamily::SqrtWinding: return sign;
    case OperatorFamily::SqrtPrincipal: return 1.0;
  }
  return 0.0;
}

}  // namespace

DiagonalOperator limit_spectrum(OperatorFamily family, double s0, int max_degree) {
  const Endpoint at = endpoint_of(s0);
  // One-sided approach from inside [0, pi]. The first-order drift is at most
  // j * delta, so the sample must land within a few j * delta of the limit.
  for (const double delta : {1e-5, 1e-7}) {
    const double s = at == Endpoint::Zero ? delta : std::numbers::pi - delta;
    const auto member = family_member(family, s);
    for (int j = 0; j <= max_degree; ++j) {
      const double gap = std::abs(member.eigenvalue(j) - analytic_limit(family, at, j));
      if (gap > 4.0 * (j + 1) * (j + 1) * delta) {
        throw Error("limit of " + to_string(family) + " at s = " + std::to_string(s0) +
                    " does not exist for j = " + std::to_string(j));
      }
    }
  }
  return DiagonalOperator::on_axis(
      0, [family, at](int j) { return analytic_limit(family, at, j); },
      "limit(" + to_string(family) + ", s=" + (at == Endpoint::Zero ? "0" : "pi") + ")");
}

DiagonalOperator first_order_expansion(OperatorFamily family, double s0, double eps) {
  const Endpoint at = endpoint_of(s0);
  const double rate = family == OperatorFamily::Dilation ? 1.0 : 0.5;
  return DiagonalOperator::on_axis(
      0,
      [family, at, eps, rate](int j) {
        const cplx drift{0.0, rate * eps * j};
        if (at == Endpoint::Zero) return 1.0 + drift;
        return analytic_limit(family, at, j) * (1.0 - drift);
      },
      "first_order(" + to_string(family) + ")");
}

}  // namespace qsym
