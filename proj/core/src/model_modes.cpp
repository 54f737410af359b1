#include "tfim/model_modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tfim {

namespace {
constexpr double kPi = std::numbers::pi;

void check_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite");
}
}  // namespace

Coupling Coupling::from_ratio(double x) {
    check_finite(x, "x");
    return {x, 1.0, x};
}

Coupling Coupling::from_fields(double j, double h) {
    check_finite(j, "j");
    check_finite(h, "h");
    if (h == 0.0)
        throw std::invalid_argument("Coupling: h = 0 has no ratio x = j/h");
    return {j, h, j / h};
}

MomentumGrid build_grid(int n, Parity sector) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("build_grid: n must be even and >= 2, got " +
                                    std::to_string(n));
    MomentumGrid grid;
    grid.n = n;
    grid.sector = sector;
    if (sector == Parity::Even) {
        grid.q_positive.reserve(n / 2);
        for (int k = 1; k <= n / 2; ++k)
            grid.q_positive.push_back((2.0 * k - 1.0) * kPi / n);
    } else {
        grid.q_positive.reserve(n / 2 - 1);
        for (int k = 1; k <= n / 2 - 1; ++k)
            grid.q_positive.push_back(2.0 * k * kPi / n);
        grid.endpoints = {0.0, kPi};
    }
    return grid;
}

Mode mode_at(double x, double q) {
    if (!std::isfinite(x) || !std::isfinite(q))
        throw std::invalid_argument("mode_at: non-finite input");
    const double num = 1.0 + x * std::cos(q);
    const double lambda = std::hypot(num, x * std::sin(q));
    if (lambda == 0.0) {
        // 1 + x cos q = 0 with sin q = 0: the degenerate band point; by
        // continuity along the band zeta -> 0 and p -> 1/2.
        return {q, 0.0, 0.0, 0.5};
    }
    double zeta = std::abs(num) / lambda;
    if (zeta > 1.0) zeta = 1.0;
    return {q, lambda, zeta, 0.5 * (1.0 - zeta)};
}

ModeSpectrum mode_spectrum(double x, const MomentumGrid& grid) {
    ModeSpectrum spec;
    spec.x = x;
    spec.grid = grid;
    spec.modes.reserve(grid.q_positive.size());
    for (double q : grid.q_positive) spec.modes.push_back(mode_at(x, q));
    spec.endpoint_modes.reserve(grid.endpoints.size());
    for (double q : grid.endpoints) spec.endpoint_modes.push_back(mode_at(x, q));
    return spec;
}

ModeSpectrum mode_spectrum(const Coupling& coupling, const MomentumGrid& grid) {
    return mode_spectrum(coupling.x, grid);
}

double gap(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("gap: x must be finite");
    if (std::abs(x) >= 1.0) return 0.0;
    return std::sqrt((1.0 - x) * (1.0 + x));
}

}  // namespace tfim
