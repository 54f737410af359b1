#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace tfim {

enum class Side { Central, Left, Right };

/// Finite-difference stencils used throughout: 5-point central (O(h^4)) and
/// 4-point one-sided (O(h^3) for order 1, O(h^2) for order 2).
double finite_difference(const std::function<double(double)>& f, double x,
                         int order, double step, Side side);

/// Numerical derivative of the thermodynamic-limit curve eps(x).
///
/// With side = Central the stencil must not cross the non-smooth points
/// x = +-1 (throws std::domain_error if it would).  Internal epsilon_infinite
/// evaluations run at quad_tol (default much tighter than the curve default:
/// stencil division by step^order amplifies quadrature noise).
double epsilon_derivative(double x, int order, double step = 1e-4,
                          Side side = Side::Central, double quad_tol = 1e-13);

/// Critical-point diagnostics.  jump_* fields are set by jump_estimate,
/// divergence_* fields by divergence_exponent; remaining fields stay empty.
struct CriticalReport {
    std::optional<double> jump_left_derivative;  // eps'(1-)
    std::optional<double> jump_value;            // eps'(1-) - eps'(1+)
    std::optional<double> eps_prime_right;       // eps'(1+), ~0
    std::optional<double> divergence_exponent;   // fitted slope s of eps'' ~ (1-x)^s
    std::pair<double, double> fit_window{0.0, 0.0};
    std::optional<double> fit_residual;          // rms residual of the log-log fit
};

enum class JumpMethod { NumericLimit, ClosedFormIntegral };

/// Discontinuity of eps'(x) at x = 1.
///
/// ClosedFormIntegral evaluates
///   (1/2 pi) integral_0^1 ln((1+z)/(1-z)) sqrt(1-z^2)/z dz  (~0.285),
/// the jump implied by the sign flip of dPhi_-/dx across x = 1.
/// NumericLimit evaluates the Left derivative at x = 1 - delta over
/// delta in {1e-2, 1e-2.5, 1e-3} and extrapolates only if the ladder spreads
/// by more than 0.01; otherwise the smallest-delta value is taken.
CriticalReport jump_estimate(JumpMethod method);

/// Least-squares slope of ln eps''(x) against ln(1 - x) on a window strictly
/// inside (0, 1), with eps'' from Left-sided second differences.  Sample
/// points are log-spaced in 1 - x.  Non-finite samples abort the fit.
CriticalReport divergence_exponent(std::pair<double, double> x_window = {0.90, 0.99},
                                   int n_points = 12);

}  // namespace tfim
