#pragma once

namespace qsym {

enum class BesselKind { I, K };

/// Modified Bessel function I_nu(u) for nu > -1, u > 0: ascending series for
/// u <= 15, Hankel asymptotic expansion above.
double bessel_i(double nu, double u);
/// e^{-u} I_nu(u); finite for all u > 0.
double bessel_i_scaled(double nu, double u);

/// K_nu(u) for non-integer |nu| < 1, u > 0: reflection formula
/// pi (I_{-nu} - I_nu) / (2 sin(nu pi)) for u <= 2, integral representation above.
double bessel_k(double nu, double u);
/// e^{u} K_nu(u).
double bessel_k_scaled(double nu, double u);

/// Order-1/4 function of either kind.
double bessel_quarter(BesselKind kind, double u);

struct BesselJet {
  double value;       // Z(u)
  double derivative;  // Z'(u)
};

/// Order-1/4 value and derivative, both multiplied by e^{-u} (kind I) or
/// e^{u} (kind K). The derivative comes from the recurrences
/// I'_nu = I_{nu-1} - (nu/u) I_nu and K'_nu = -K_{nu-1} - (nu/u) K_nu.
BesselJet bessel_quarter_scaled_jet(BesselKind kind, double u);

}  // namespace qsym
