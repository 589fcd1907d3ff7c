#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qsym/bessel.hpp"
#include "qsym/qcore.hpp"

namespace qsym {

enum class PdeTerm { Dx = 0, Dxy = 1, Dxx = 2, Dyy = 3 };
std::string to_string(PdeTerm t);

/// c0 + cx x + cy y.
struct AffineCoeff {
  cplx c0{}, cx{}, cy{};
  cplx at(double x, double y) const { return c0 + cx * x + cy * y; }
  bool near(const AffineCoeff& o, double tol = 1e-14) const;
  std::string to_string() const;
};

/// Second-order operator sum_t coeff_t(x, y) D_t on the stencil {dx, dxdy, dx^2, dy^2}.
struct PdeOperator {
  std::string label;
  std::array<AffineCoeff, 4> coeff;
};

/// dx + 2y dxdy + 2x dy^2 (the q = -1 equation as printed).
PdeOperator eq37_operator();

/// -q dx + q(q^3 - 1) y dxdy - (q^2 - 1) x (dx^2 + dy^2) - q^2 (q - 1) dy^2.
PdeOperator general_q_operator(const Deformation& d);

struct CoefficientComparison {
  PdeTerm term;
  AffineCoeff general, reference;
  bool match;
};

/// Term-by-term comparison of op against Eq. 37.
std::vector<CoefficientComparison> compare_with_eq37(const PdeOperator& op);

/// A * exp(sigma_x alpha x^2) * sqrt(y) * exp(sigma_y alpha y^2 / 2) * Z_{1/4}(alpha y^2 / 2).
/// The printed candidate is sigma_x = sigma_y = -1 with Z = I.
struct SolutionCandidate {
  double alpha = 1.0;
  int sigma_x = -1;
  int sigma_y = -1;
  BesselKind kind = BesselKind::I;
  double amplitude = 1.0;

  static SolutionCandidate printed(double alpha = 1.0) { return {alpha, -1, -1, BesselKind::I, 1.0}; }
  std::string label() const;
};

/// Value and first two derivatives of a function of one variable.
struct Jet1 {
  double value = 0, d1 = 0, d2 = 0;
};

/// The partial derivatives a second-order operator consumes.
struct PartialJet {
  double value = 0, dx = 0, dy = 0, dxy = 0, dxx = 0, dyy = 0;
};

Jet1 candidate_x_factor(const SolutionCandidate& c, double x);
/// y-factor including the amplitude; requires y > 0 and alpha > 0.
Jet1 candidate_y_factor(const SolutionCandidate& c, double y);
double candidate_value(const SolutionCandidate& c, double x, double y);
PartialJet candidate_derivatives(const SolutionCandidate& c, double x, double y);
/// Central differences of candidate_value, order 2 or 4.
PartialJet candidate_derivatives_fd(const SolutionCandidate& c, double x, double y, double h,
                                    int order = 4);

cplx apply_operator(const PdeOperator& op, const PartialJet& j, double x, double y);

struct Grid {
  double x0 = -1.0, x1 = 1.0;
  int nx = 41;
  double y0 = 0.5, y1 = 3.0;
  int ny = 41;
};

enum class DerivativeMethod { Analytic, FiniteDifference };

struct ResidualSample {
  double x, y;
  cplx residual;
  double max_term;
};

struct ResidualField {
  std::vector<ResidualSample> samples;
  double max_residual = 0;
  double max_term = 0;
  /// max |residual| over the largest single term; 0 for the zero function.
  double relative() const { return max_term > 0 ? max_residual / max_term : 0.0; }
};

/// Throws std::invalid_argument if the grid reaches y <= 0.
ResidualField pde_residual(const PdeOperator& op, const SolutionCandidate& c, const Grid& grid = {},
                           DerivativeMethod method = DerivativeMethod::Analytic, double h = 1e-3,
                           int fd_order = 4);

/// f'' - 2 alpha y f' - alpha f at each grid point.
std::vector<double> separated_ode_residual(const std::function<Jet1(double)>& f, double alpha,
                                           const std::vector<double>& y_grid);

struct VariantResult {
  SolutionCandidate candidate;
  double relative_residual;
  bool printed;
};

/// All four (sigma_y, kind) variants with sigma_x = -1, sorted by residual.
std::vector<VariantResult> scan_variants(const PdeOperator& op, double alpha = 1.0,
                                         const Grid& grid = {});

struct ProfileResult {
  std::vector<std::pair<double, double>> samples;  // (y, |Psi(x0, y)|)
  double ratio;          // |Psi| at the last y over |Psi| at the sample nearest half of it
  std::string behavior;  // "constant", "decays" or "grows"
};

ProfileResult asymptotic_profile(const SolutionCandidate& c, double x0,
                                 const std::vector<double>& y_values);

}  // namespace qsym
