#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tfim {

class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Matrix-free periodic spin-1/2 Hamiltonian
///
///   H = -j sum_i sx_i sx_{i+1} - h sum_i sz_i,  i = 0..n-1, site n == site 0.
///
/// Basis encoding: configuration u in [0, 2^n); bit i of u is site i,
/// bit = 1 means spin up (sz = +1).  H is real symmetric in this basis.
/// For n = 2 the periodic sum keeps both bond terms (0,1) and (1,0).
struct SpinHamiltonian {
    int n;
    double j;
    double h;

    std::size_t dim() const { return std::size_t{1} << n; }
    void apply(std::span<const double> in, std::span<double> out) const;
};

/// y = H v.  Throws std::invalid_argument on length mismatch.
std::vector<double> apply_hamiltonian(const std::vector<double>& v,
                                      const SpinHamiltonian& ham);

/// Eigenvalue of the global spin-flip parity P = prod_i sz_i on basis state u:
/// (-1)^(number of down spins), +1 on the all-up reference state.
int basis_parity(std::uint64_t u, int n);

struct GroundStateED {
    int n = 0;
    double x = 0.0;
    double energy = 0.0;
    std::vector<double> amplitudes;    // z-basis, largest-|amplitude| entry > 0
    int parity = +1;                   // +-1 under P
    std::vector<double> probabilities; // amplitudes squared
    double residual = 0.0;             // ||H v - E v||
    int iterations = 0;                // matrix applications spent
};

/// Lowest eigenpair of ham by matrix-free Lanczos iteration (full
/// reorthogonalization, restarts), optionally projected onto one parity
/// sector each iteration.  Stops on the true residual ||Hv - Ev|| <=
/// residual_tol, not on eigenvalue stagnation.  Throws SolverError if the
/// iteration budget runs out.
GroundStateED ground_state(const SpinHamiltonian& ham,
                           std::optional<int> parity_sector = std::nullopt,
                           double residual_tol = 1e-10);

/// Species entanglement per site straight from the wave function: the
/// Shannon entropy of the z-basis probability distribution divided by n.
double species_entropy_ed(const GroundStateED& gs);

/// Relative discrepancy |E_ED - E_modes| / |E_ED| between the brute-force
/// ground-state energy and the even-sector mode sum E = -2 sum_{q>0} Lambda_q
/// (h = 1, j = x).  Meaningful accuracy needs a well-gapped ground state;
/// |x| <= 0.95 is the guaranteed regime for the default (unprojected) solve.
double energy_cross_check(double x, int n);

}  // namespace tfim
