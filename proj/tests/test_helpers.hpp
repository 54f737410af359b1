#pragma once

// Shared independent oracles for the test suites.  Everything here computes
// through a different route than the code under test: the dense Hamiltonian
// is assembled from explicit Pauli matrix elements, the q-route entanglement
// integrates the per-mode entropy directly, and the counting density tallies
// a finite grid.

#include <cmath>
#include <numbers>
#include <vector>

#include "tfim/entanglement.hpp"
#include "tfim/model_modes.hpp"
#include "tfim/quadrature.hpp"

namespace tfim::testing {

// Dense 2^n x 2^n Hamiltonian built site by site from 2x2 Pauli blocks,
// independently of SpinHamiltonian::apply's bit tricks.
inline std::vector<std::vector<double>> dense_hamiltonian(int n, double j,
                                                          double h) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<double>> H(dim, std::vector<double>(dim, 0.0));
    const auto sz = [](int bit) { return bit ? 1.0 : -1.0; };
    for (std::size_t col = 0; col < dim; ++col) {
        for (int i = 0; i < n; ++i) {
            H[col][col] += -h * sz((col >> i) & 1);
            const int k = (i + 1) % n;
            // sx_i sx_k flips both bits with matrix element 1
            const std::size_t row = col ^ (std::size_t{1} << i) ^ (std::size_t{1} << k);
            H[row][col] += -j;
        }
    }
    return H;
}

// (1/2pi) integral_0^pi H(p(q)) dq evaluated from the mode formulas alone.
inline double epsilon_infinite_q_route(double x, double tol = 1e-12) {
    if (x == 0.0) return 0.0;
    const auto f = [x](double q) { return binary_entropy(mode_at(x, q).p); };
    const QuadratureResult r =
        integrate_adaptive(f, 0.0, std::numbers::pi, tol * 2.0 * std::numbers::pi);
    return r.value / (2.0 * std::numbers::pi);
}

// Finite-grid estimate of the integrated eigenvalue density, (1/n) * #{p_q < p}.
inline double g_counting(double p, double x, int n) {
    const ModeSpectrum spec = mode_spectrum(x, build_grid(n, Parity::Even));
    int count = 0;
    for (const Mode& m : spec.modes)
        if (m.p < p) ++count;
    return static_cast<double>(count) / n;
}

}  // namespace tfim::testing
