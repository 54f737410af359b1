#pragma once

#include <optional>

#include "tfim/model_modes.hpp"

namespace tfim {

/// Shannon binary entropy in nats, H(p) = -p ln p - (1-p) ln(1-p), with
/// H(0) = H(1) = 0 exactly.  Arguments up to 1e-12 outside [0, 1] are
/// clamped; anything further out throws std::domain_error.
double binary_entropy(double p);

/// One point of the entanglement-per-site curve.  size is the chain length
/// for a finite chain and empty for the thermodynamic limit.
struct EntanglementPoint {
    double x = 0.0;
    std::optional<int> size;  // nullopt = infinite
    double epsilon = 0.0;     // nats per site
    std::optional<double> eps_d1;
    std::optional<double> eps_d2;
};

/// Finite-chain entanglement density: (1/n) sum over the grid's positive
/// modes of H(p_q).
EntanglementPoint epsilon_finite(double x, int n, Parity sector = Parity::Even);

/// The pair of angles whose difference gives the integrated eigenvalue
/// density in the thermodynamic limit:
///
///   cos(Phi_-+) = (zeta^2 - 1 -+ |zeta| sgn(x) sqrt(zeta^2 + x^2 - 1)) / x
///
/// evaluated in an algebraically factored form that stays accurate where the
/// cosines graze +-1 (band edges, x near 1).  Requires x != 0 and
/// zeta^2 + x^2 >= 1 (up to a 1e-12 slack); Phi_- >= Phi_+ always holds.
struct PhiPair {
    double minus;
    double plus;
};
PhiPair phi_pm(double zeta, double x);

/// Integrated density of reduced-density-matrix eigenvalues: the fraction of
/// modes per site with p_q below p.  Saturates at 1/2 for p >= 1/2, returns
/// 1/2 inside the band gap, and equals 1/2 - (Phi_- - Phi_+)/(2 pi) on the
/// band (zeta = 1 - 2p).
double g_of_p(double p, double x);

struct EigenvalueDensitySample {
    double p = 0.0;
    double x = 0.0;
    double g = 0.0;
};

/// Thermodynamic-limit entanglement density
///
///   eps(x) = (1/4 pi) integral_{zeta0}^{1} ln((1+zeta)/(1-zeta))
///            (Phi_- - Phi_+) dzeta,   zeta0 = sqrt(max(0, 1 - x^2)),
///
/// by adaptive quadrature with absolute error <= quad_tol.  The Heaviside
/// support enters as the exact lower limit, never as a sampled indicator.
/// x = 0 short-circuits to eps = 0.
EntanglementPoint epsilon_infinite(double x, double quad_tol = 1e-8);

}  // namespace tfim
