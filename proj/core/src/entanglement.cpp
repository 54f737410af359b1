#include "tfim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tfim/quadrature.hpp"

namespace tfim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kClamp = 1e-12;
}  // namespace

double binary_entropy(double p) {
    if (p < -kClamp || p > 1.0 + kClamp)
        throw std::domain_error("binary_entropy: p = " + std::to_string(p) +
                                " outside [0, 1]");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

EntanglementPoint epsilon_finite(double x, int n, Parity sector) {
    if (!std::isfinite(x))
        throw std::invalid_argument("epsilon_finite: x must be finite");
    const MomentumGrid grid = build_grid(n, sector);
    double sum = 0.0;
    for (double q : grid.q_positive) sum += binary_entropy(mode_at(x, q).p);
    EntanglementPoint pt;
    pt.x = x;
    pt.size = n;
    pt.epsilon = sum / n;
    return pt;
}

PhiPair phi_pm(double zeta, double x) {
    if (!std::isfinite(x) || x == 0.0)
        throw std::invalid_argument("phi_pm: x must be finite and nonzero");
    if (zeta < -kClamp || zeta > 1.0 + kClamp)
        throw std::domain_error("phi_pm: zeta outside [0, 1]");
    zeta = std::clamp(zeta, 0.0, 1.0);
    const double ax = std::abs(x);
    const double s2 = zeta * zeta + ax * ax - 1.0;
    if (s2 < -kClamp)
        throw std::domain_error("phi_pm: outside the support zeta^2 + x^2 >= 1");
    const double s = std::sqrt(std::max(0.0, s2));
    const double one_minus_z2 = (1.0 - zeta) * (1.0 + zeta);

    // 1 + cos(Phi_-) and 1 - cos(Phi_+) in fully factored form; every factor
    // is nonnegative, so the band edges (cosines at -+1) come out exact
    // instead of cancelling.
    const double num_m = (ax - 1.0) * (ax - 1.0) * (ax + 1.0) * one_minus_z2;
    double dm = 0.0;
    if (num_m != 0.0) dm = num_m / (ax * (zeta + s) * (s + zeta * ax));
    const double dp =
        (ax + 1.0) * (ax + 1.0) * one_minus_z2 / (ax * (ax + 1.0 - zeta * zeta + zeta * s));

    const double phi_minus = kPi - 2.0 * std::asin(std::sqrt(0.5 * std::min(dm, 2.0)));
    const double phi_plus = 2.0 * std::asin(std::sqrt(0.5 * std::min(dp, 2.0)));
    if (x < 0.0) return {kPi - phi_plus, kPi - phi_minus};
    return {phi_minus, phi_plus};
}

double g_of_p(double p, double x) {
    if (!std::isfinite(x) || x == 0.0)
        throw std::invalid_argument("g_of_p: x must be finite and nonzero");
    if (p < -kClamp || p > 1.0 + kClamp)
        throw std::domain_error("g_of_p: p outside [0, 1]");
    if (p <= 0.0) return 0.0;
    if (p >= 0.5) return 0.5;
    const double zeta = 1.0 - 2.0 * p;
    if (zeta * zeta + x * x < 1.0) return 0.5;  // above the band: all modes counted
    const PhiPair f = phi_pm(zeta, x);
    const double g = 0.5 - (f.minus - f.plus) / (2.0 * kPi);
    return std::clamp(g, 0.0, 0.5);
}

namespace {

double density_integrand(double zeta, double x) {
    if (zeta <= 0.0 || zeta >= 1.0) return 0.0;
    const PhiPair f = phi_pm(zeta, x);
    return (std::log1p(zeta) - std::log1p(-zeta)) * (f.minus - f.plus);
}

}  // namespace

EntanglementPoint epsilon_infinite(double x, double quad_tol) {
    if (!std::isfinite(x))
        throw std::invalid_argument("epsilon_infinite: x must be finite");
    if (!(quad_tol > 0.0))
        throw std::invalid_argument("epsilon_infinite: quad_tol must be positive");
    EntanglementPoint pt;
    pt.x = x;
    pt.size = std::nullopt;
    if (x == 0.0) {
        pt.epsilon = 0.0;
        return pt;
    }
    const double zeta0 = std::abs(x) < 1.0 ? std::sqrt((1.0 - x) * (1.0 + x)) : 0.0;
    const QuadratureResult r = integrate_adaptive(
        [x](double zeta) { return density_integrand(zeta, x); }, zeta0, 1.0,
        quad_tol * 4.0 * kPi);
    pt.epsilon = r.value / (4.0 * kPi);
    return pt;
}

}  // namespace tfim
