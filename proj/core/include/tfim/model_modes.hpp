#pragma once

#include <vector>

namespace tfim {

/// Exchange strength J and transverse field h of the periodic spin-1/2 chain
///
///   H = -J sum_i sx_i sx_{i+1} - h sum_i sz_i
///
/// together with the dimensionless ratio x = J/h that controls every
/// entanglement quantity downstream.  h = 0 has no ratio and is rejected;
/// the h -> 0 limit is not the same thing as h = 0.
struct Coupling {
    double j;
    double h;
    double x;

    /// Fixes h = 1, j = x.
    static Coupling from_ratio(double x);

    /// Requires h != 0 so that x = j/h is defined.
    static Coupling from_fields(double j, double h);
};

/// Fermion-number parity sector selecting the allowed momenta.
enum class Parity { Even, Odd };

/// Allowed momenta of a periodic chain of n sites (n even).
///
/// Even sector: q = (2k-1)*pi/n, k = 1..n/2 (antiperiodic grid).
/// Odd sector:  interior q = 2k*pi/n, k = 1..n/2-1, plus the unpaired
/// endpoints q = 0 and q = pi kept separately in `endpoints`.
struct MomentumGrid {
    int n = 0;
    Parity sector = Parity::Even;
    std::vector<double> q_positive;  // sorted ascending, strictly inside (0, pi)
    std::vector<double> endpoints;   // {} for Even, {0, pi} for Odd
};

/// Builds the momentum grid; throws std::invalid_argument for odd or
/// non-positive n.
MomentumGrid build_grid(int n, Parity sector);

/// Per-mode spectral data at coupling ratio x (h = 1, j = x):
///   lambda = sqrt(1 + x^2 + 2 x cos q)
///   zeta   = |1 + x cos q| / lambda
///   p      = (1 - zeta)/2, the reduced-density-matrix eigenvalue location
struct Mode {
    double q;
    double lambda;
    double zeta;
    double p;
};

struct ModeSpectrum {
    double x = 0.0;
    MomentumGrid grid;
    std::vector<Mode> modes;           // one per grid.q_positive entry
    std::vector<Mode> endpoint_modes;  // one per grid.endpoints entry
};

/// Evaluates one mode.  The 0/0 point (x = +-1 with 1 + x cos q = 0) is
/// resolved by continuity along the band: zeta = 0, p = 1/2.
Mode mode_at(double x, double q);

ModeSpectrum mode_spectrum(double x, const MomentumGrid& grid);
ModeSpectrum mode_spectrum(const Coupling& coupling, const MomentumGrid& grid);

/// Band gap Delta(x) = sqrt(1 - x^2) for |x| < 1, else 0.
double gap(double x);

}  // namespace tfim
