#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsym/dilation.hpp"
#include "qsym/qcore.hpp"
#include "qsym/series.hpp"

namespace qsym {

/// Local potential V(x) = sum_k V_k x^k, stored as a one-variable series.
using PotentialSpec = TruncatedSeries;

/// H = -d^2/dx^2 + V(x) + W(x d/dx), with W given by its spectrum k -> W(k).
struct HamiltonianSpec {
  PotentialSpec V;
  std::function<cplx(int)> W;  // empty means W = 0
  cplx E{};
};

/// H f truncated to order N - 2 (the kinetic term loses two orders).
TruncatedSeries apply_hamiltonian(const HamiltonianSpec& H, const TruncatedSeries& f);

/// (Q H - H Q) f, order N - 2.
TruncatedSeries invariance_residual(const DiagonalOperator& Q, const HamiltonianSpec& H,
                                    const TruncatedSeries& f);

/// A recursion step whose leading factor Q(k) - Q(k+2) vanished; residual is
/// sum_j V_{k-j} f_j (Q(k) - Q(j)), which must be zero for a solution.
struct StepConstraint {
  int k;
  cplx residual;
};

/// Operator-level condition Q(k) = Q(k - m) for all k, induced by V_m != 0.
struct PotentialConstraint {
  int m;
  bool satisfied;
  double max_gap;
};

struct RecursionResult {
  TruncatedSeries f;
  std::vector<int> free_indices;  // f_{k+2} left undetermined (set to 0)
  std::vector<StepConstraint> step_constraints;
  std::vector<PotentialConstraint> potential_constraints;
  bool kinetic_invariant = false;  // Q(k) = Q(k+2) for all k
  std::string classification;
};

/// f_{k+2} (k+1)(k+2) (Q(k) - Q(k+2)) = sum_{j<k} V_{k-j} f_j (Q(k) - Q(j)).
/// A vanishing leading factor (|.| < tol) turns the step into a constraint.
RecursionResult recursion_invariance(cplx f0, cplx f1, const PotentialSpec& V,
                                     const DiagonalOperator& Q, int order, double tol = 1e-12);

/// The dilation specialization: f_{k+2} = sum_j V_{k-j} f_j (1 - q^{j-k}) / ((1 - q^2)(k+1)(k+2)).
/// Throws SingularMode when q^2 = 1.
TruncatedSeries recursion_dilation(cplx f0, cplx f1, const PotentialSpec& V, const Deformation& d,
                                   int order);

/// V_k(q) / V0_k = (k/2)(q^2 - 1)/(1 - q^{-k}) for k >= 1. Analytic limits are
/// used where q^2 = 1 and q^k = 1 together; a true root of unity (q^k = 1,
/// q^2 != 1) returns nullopt.
std::optional<cplx> gauge_factor(int k, const Deformation& d);

/// Term-wise gauge transform. The constant V0_0 is passed through unchanged
/// (it never enters the invariance recursion). Throws SingularMode listing
/// every k with V0_k != 0 and a vanishing denominator.
PotentialSpec gauge_transform_potential(const PotentialSpec& V0, const Deformation& d);

/// V(x, q^2) = (q^2 (q + 1/q)/2) q^{x d/dx} Jint(dV0/dx), |q| < 1, with the
/// integration constant fixed to V0_0.
PotentialSpec qprimitive_transform(const PotentialSpec& V0, const Deformation& d,
                                   JacksonMethod method = JacksonMethod::PartialSums);

struct InvariantSolution {
  TruncatedSeries f{1, 0};
  /// W(k) for k <= N - 2; nullopt where f_k = 0 leaves it undetermined.
  std::vector<std::optional<cplx>> W;
  cplx E{};
  /// k with f_k = 0 where the Schroedinger recursion is violated for every W.
  std::vector<std::pair<int, cplx>> schrodinger_defects;
  PotentialSpec V{1, 0};  // the potential the solution was paired with
  cplx q{1.0};
  std::string method;
};

/// Fill W(k) and E from the Schroedinger recursion
/// f_{k+2}(k+1)(k+2) = sum_l f_l V_{k-l} - E f_k + f_k W(k),
/// with E fixed so that W vanishes at the lowest k with f_k != 0.
void complete_with_schrodinger(InvariantSolution& sol, double tol = 1e-14);

/// f_{k+2} = -sum_j ((k-j)/2) V0_{k-j} f_j / ((k+1)(k+2)): the invariance
/// recursion after the gauge substitution, independent of q.
TruncatedSeries q_independent_coefficients(const PotentialSpec& V0, cplx f0, cplx f1, int order);

/// The recursion as printed: f_{k+2} = sum_j V0_{k-j} f_j / ((k+1)(k+2)).
TruncatedSeries printed_q_independent_coefficients(const PotentialSpec& V0, cplx f0, cplx f1,
                                                   int order);

/// q-independent f paired with V(q) = gauge(V0, q), W and E from the
/// Schroedinger recursion. Throws SingularMode if q^2 = 1 or V(q) is singular.
InvariantSolution solve_q_independent(const PotentialSpec& V0, cplx f0, cplx f1,
                                      const Deformation& d, int order);

/// V_N(x) = sum_j A_j x^{2jN} + B_j x^{(4j+1)N} + C_j x^{(4j+3)N}.
struct PartitionPotentialSpec {
  int N = 1;
  std::vector<cplx> A, B, C;
  int order = 0;
};

/// Throws std::invalid_argument if a nonzero coefficient falls beyond order.
PotentialSpec partition_potential(const PartitionPotentialSpec& spec);

struct PartitionResult {
  double s = 0.0;
  TruncatedSeries f_printed{1, 0};  // recursion as printed for the partition
  TruncatedSeries f_direct{1, 0};   // general invariance recursion at q = e^{is}
  double max_difference = 0.0;
  double residual_printed = 0.0;  // max |(QH - HQ) f| with Q = dilation(e^{is})
  double residual_direct = 0.0;
};

/// f_{k+2} = sum_{j=0}^{floor((k-3)/4)} (B_j f_{k-4j-1} - C_j f_{k-4j-3})
///           / (e^{is} sin(s) (k+1)(k+2)),  s = n pi / N.
/// Requires 1 <= n <= N - 1.
PartitionResult partition_recursion(const PartitionPotentialSpec& spec, int n, cplx f0, cplx f1,
                                    int order);

/// Samples of the deformed Coulomb-like potential V_C(x) = 1/(x - 1).
/// The deformation acts by argument rescaling V(x) = 1/(lambda x - 1), with
/// lambda = q^{1/2} for real q (pole at 1/q^{1/2}) and lambda = q for
/// unimodular q (pole at -1 when q = -1).
struct CurvePoint {
  double x;
  cplx value;         // closed form; NaN on the pole itself
  cplx partial_sum;   // -sum_{k<K} (lambda x)^k
  bool converged;     // tail of the partial sum below 1e-8
};

struct CoulombCurve {
  cplx lambda;
  std::vector<CurvePoint> points;
  double convergence_radius;      // from the partial-sum divergence scan
  std::optional<double> pole;     // real pole located by the scan, if any
  std::optional<double> closed_form_pole;
};

cplx coulomb_rescaling(const Deformation& d);

CoulombCurve deform_coulomb_curve(const Deformation& d, std::span<const double> x_grid,
                                  int terms = 200);

}  // namespace qsym
