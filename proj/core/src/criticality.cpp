#include "tfim/criticality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfim/entanglement.hpp"
#include "tfim/quadrature.hpp"

namespace tfim {

namespace {
constexpr double kPi = std::numbers::pi;
}

double finite_difference(const std::function<double(double)>& f, double x,
                         int order, double step, Side side) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("finite_difference: order must be 1 or 2");
    if (!(step > 0.0))
        throw std::invalid_argument("finite_difference: step must be positive");
    const double h = step;
    switch (side) {
        case Side::Central:
            if (order == 1)
                return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
                       (12 * h);
            return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
                    f(x - 2 * h)) /
                   (12 * h * h);
        case Side::Right:
            if (order == 1)
                return (-11 * f(x) + 18 * f(x + h) - 9 * f(x + 2 * h) +
                        2 * f(x + 3 * h)) /
                       (6 * h);
            return (2 * f(x) - 5 * f(x + h) + 4 * f(x + 2 * h) - f(x + 3 * h)) /
                   (h * h);
        case Side::Left:
            if (order == 1)
                return (11 * f(x) - 18 * f(x - h) + 9 * f(x - 2 * h) -
                        2 * f(x - 3 * h)) /
                       (6 * h);
            return (2 * f(x) - 5 * f(x - h) + 4 * f(x - 2 * h) - f(x - 3 * h)) /
                   (h * h);
    }
    throw std::logic_error("finite_difference: unreachable");
}

double epsilon_derivative(double x, int order, double step, Side side,
                          double quad_tol) {
    if (!std::isfinite(x))
        throw std::invalid_argument("epsilon_derivative: x must be finite");
    if (side == Side::Central) {
        for (double c : {-1.0, 1.0}) {
            if (x - 2 * step < c && c < x + 2 * step)
                throw std::domain_error(
                    "epsilon_derivative: central stencil crosses the non-smooth "
                    "point x = " + std::to_string(c));
        }
    }
    const auto f = [quad_tol](double xx) {
        return epsilon_infinite(xx, quad_tol).epsilon;
    };
    return finite_difference(f, x, order, step, side);
}

namespace {

double jump_integrand(double zeta) {
    if (zeta <= 0.0) return 2.0;  // ln((1+z)/(1-z)) ~ 2z cancels the 1/z
    if (zeta >= 1.0) return 0.0;
    return (std::log1p(zeta) - std::log1p(-zeta)) *
           std::sqrt((1.0 - zeta) * (1.0 + zeta)) / zeta;
}

}  // namespace

CriticalReport jump_estimate(JumpMethod method) {
    CriticalReport report;
    const double step = 1e-4;
    const double eps_prime_right = epsilon_derivative(1.0, 1, step, Side::Right);
    report.eps_prime_right = eps_prime_right;

    if (method == JumpMethod::ClosedFormIntegral) {
        const QuadratureResult r =
            integrate_adaptive(jump_integrand, 0.0, 1.0, 1e-12 * 2.0 * kPi);
        const double jump = r.value / (2.0 * kPi);
        report.jump_value = jump;
        report.jump_left_derivative = jump + eps_prime_right;
        return report;
    }

    // Left derivative at x = 1 - delta over a delta ladder.
    const std::array<double, 3> deltas = {1e-2, std::pow(10.0, -2.5), 1e-3};
    std::array<double, 3> vals{};
    for (std::size_t i = 0; i < deltas.size(); ++i)
        vals[i] = epsilon_derivative(1.0 - deltas[i], 1, step, Side::Left);
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    double left;
    if (*hi - *lo > 0.01) {
        // Richardson-style: linear extrapolation in delta through the last
        // two rungs (exact when eps'(1 - d) approaches its limit linearly).
        const double d1 = deltas[1], d2 = deltas[2];
        left = vals[2] + (vals[2] - vals[1]) * d2 / (d1 - d2);
    } else {
        left = vals[2];
    }
    report.jump_left_derivative = left;
    report.jump_value = left - eps_prime_right;
    return report;
}

CriticalReport divergence_exponent(std::pair<double, double> x_window,
                                   int n_points) {
    const auto [lo, hi] = x_window;
    if (!(0.0 < lo && lo < hi && hi < 1.0))
        throw std::invalid_argument(
            "divergence_exponent: window must be strictly inside (0, 1)");
    if (n_points < 2)
        throw std::invalid_argument("divergence_exponent: need n_points >= 2");

    // Log-spaced in the distance to the critical point.
    const double u_lo = std::log(1.0 - hi), u_hi = std::log(1.0 - lo);
    std::vector<double> log_u(n_points), log_e2(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double u = u_lo + (u_hi - u_lo) * i / (n_points - 1);
        const double x = 1.0 - std::exp(u);
        const double e2 = epsilon_derivative(x, 2, 1e-4, Side::Left);
        if (!std::isfinite(e2) || e2 == 0.0)
            throw std::runtime_error(
                "divergence_exponent: non-finite eps'' sample at x = " +
                std::to_string(x));
        log_u[i] = u;
        log_e2[i] = std::log(std::abs(e2));
    }

    // Least-squares line log_e2 = slope * log_u + intercept.
    double su = 0, se = 0, suu = 0, sue = 0;
    for (int i = 0; i < n_points; ++i) {
        su += log_u[i];
        se += log_e2[i];
        suu += log_u[i] * log_u[i];
        sue += log_u[i] * log_e2[i];
    }
    const double denom = n_points * suu - su * su;
    const double slope = (n_points * sue - su * se) / denom;
    const double intercept = (se - slope * su) / n_points;
    double rss = 0;
    for (int i = 0; i < n_points; ++i) {
        const double r = log_e2[i] - (slope * log_u[i] + intercept);
        rss += r * r;
    }

    CriticalReport report;
    report.divergence_exponent = slope;
    report.fit_window = x_window;
    report.fit_residual = std::sqrt(rss / n_points);
    return report;
}

}  // namespace tfim
