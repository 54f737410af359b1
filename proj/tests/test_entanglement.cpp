#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_helpers.hpp"
#include "tfim/entanglement.hpp"
#include "tfim/quadrature.hpp"

using namespace tfim;
constexpr double kPi = std::numbers::pi;

TEST_CASE("binary entropy endpoints, midpoint, and a spot value") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    // independent long-double evaluation of the same formula
    const long double p = 0.1464466L;
    const long double want = -p * std::log(p) - (1 - p) * std::log(1 - p);
    CHECK(binary_entropy(0.1464466) ==
          doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
    CHECK(binary_entropy(0.1464466) == doctest::Approx(0.416495514118007).epsilon(1e-12));

    for (double p2 : {0.1, 0.25, 0.49})
        CHECK(binary_entropy(p2) == doctest::Approx(binary_entropy(1 - p2)).epsilon(1e-15));
}

TEST_CASE("binary entropy clamps 1e-12 noise and rejects more") {
    CHECK(binary_entropy(-1e-13) == 0.0);
    CHECK(binary_entropy(1.0 + 1e-13) == 0.0);
    CHECK_THROWS_AS(binary_entropy(-1e-9), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.001), std::domain_error);
}

TEST_CASE("finite-chain entanglement density") {
    CHECK(epsilon_finite(0.0, 10).epsilon == 0.0);
    CHECK(epsilon_finite(1.0, 2).epsilon ==
          doctest::Approx(0.20824776534984374).epsilon(1e-13));
    CHECK(epsilon_finite(0.5, 4).epsilon ==
          doctest::Approx(0.078393522904412788).epsilon(1e-14));
    CHECK(epsilon_finite(0.5, 4).epsilon ==
          doctest::Approx(epsilon_finite(-0.5, 4).epsilon).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon_finite(0.5, 5), std::invalid_argument);
}

TEST_CASE("odd-sector sums run over interior pair modes only") {
    // n = 4 odd grid: one interior mode at pi/2 plus the q = 0, pi endpoints,
    // which carry no pair entropy
    const double expected = binary_entropy(mode_at(0.5, std::numbers::pi / 2).p) / 4;
    CHECK(epsilon_finite(0.5, 4, Parity::Odd).epsilon ==
          doctest::Approx(expected).epsilon(1e-15));
    const ModeSpectrum spec = mode_spectrum(0.5, build_grid(4, Parity::Odd));
    REQUIRE(spec.endpoint_modes.size() == 2);
    CHECK(spec.endpoint_modes[0].p == doctest::Approx(0.0).scale(1).epsilon(1e-15));
    CHECK(spec.endpoint_modes[1].p == doctest::Approx(0.0).scale(1).epsilon(1e-15));
}

TEST_CASE("finite-chain density never exceeds ln 2 per site") {
    for (double x : {0.2, 0.9, 1.0, 1.3, 5.0})
        for (int n : {2, 10, 64}) {
            const double eps = epsilon_finite(x, n).epsilon;
            CHECK(eps >= 0.0);
            CHECK(eps <= std::log(2.0));
        }
}

TEST_CASE("phi pair at zeta = 1 and at the band cutoff") {
    for (double x : {0.5, 2.0, -2.0}) {
        const PhiPair f = phi_pm(1.0, x);
        CHECK(f.minus == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(f.plus == doctest::Approx(0.0).scale(1).epsilon(1e-15));
    }
    // at the cutoff zeta0 = sqrt(1 - x^2) the band contribution closes
    const double x = 0.8;
    const PhiPair f = phi_pm(std::sqrt(1 - x * x), x);
    CHECK(f.minus == doctest::Approx(f.plus).epsilon(1e-12));
    CHECK(f.minus == doctest::Approx(std::acos(-x)).epsilon(1e-12));
}

TEST_CASE("phi pair large-x trend: cosines approach -+zeta") {
    const PhiPair f = phi_pm(0.5, 1e6);
    CHECK(std::abs(std::cos(f.minus) + 0.5) < 1e-5);
    CHECK(std::abs(std::cos(f.plus) - 0.5) < 1e-5);
}

TEST_CASE("phi ordering and domain errors") {
    for (double x : {0.6, 1.0, 1.7, -0.6, -3.0})
        for (double zeta = 0.999; zeta >= 0.0; zeta -= 0.037) {
            if (zeta * zeta + x * x < 1.0) continue;
            const PhiPair f = phi_pm(zeta, x);
            CHECK(f.minus >= f.plus);
            CHECK(f.minus <= kPi + 1e-15);
            CHECK(f.plus >= -1e-15);
        }
    CHECK_THROWS_AS(phi_pm(0.5, 0.5), std::domain_error);     // outside support
    CHECK_THROWS_AS(phi_pm(0.5, 0.0), std::invalid_argument); // x = 0
    CHECK_THROWS_AS(phi_pm(1.5, 2.0), std::domain_error);     // zeta out of range
}

TEST_CASE("integrated density: saturation, empty count, counting oracle") {
    CHECK(g_of_p(0.6, 0.8) == 0.5);
    CHECK(g_of_p(0.5, 0.8) == 0.5);
    CHECK(g_of_p(0.0, 0.8) == 0.0);
    CHECK(g_of_p(0.0, 2.0) == 0.0);

    // finite-size counting estimate at N = 4096 (independent tally)
    const int n = 4096;
    CHECK(std::abs(g_of_p(0.1, 0.8) - testing::g_counting(0.1, 0.8, n)) <= 2.0 / n);
    for (double x : {0.8, 0.9, 1.2})
        for (double p = 0.0; p <= 1.0; p += 0.01)
            CHECK(std::abs(g_of_p(p, x) - testing::g_counting(p, x, n)) <= 2.0 / n);
}

TEST_CASE("integrated density is nondecreasing and x-free above |x| = 1") {
    for (double x : {0.8, 1.2}) {
        double prev = -1.0;
        for (int k = 0; k <= 200; ++k) {
            const double g = g_of_p(k / 200.0, x);
            CHECK(g >= prev - 1e-15);
            CHECK(g >= 0.0);
            CHECK(g <= 0.5);
            prev = g;
        }
    }
    for (int k = 0; k <= 100; ++k)
        CHECK(std::abs(g_of_p(k / 100.0, 1.2) - g_of_p(k / 100.0, 7.0)) <= 1e-10);
}

TEST_CASE("thermodynamic-limit entanglement: anchors") {
    CHECK(epsilon_infinite(0.0).epsilon == 0.0);

    const double at_one = epsilon_infinite(1.0).epsilon;
    CHECK(at_one > 0.18);
    CHECK(at_one < 0.20);
    CHECK(at_one == doctest::Approx(0.19314718055994531).epsilon(1e-9));

    const double at_huge = epsilon_infinite(1e6).epsilon;
    CHECK(at_huge == doctest::Approx(0.19314718055994531).epsilon(1e-9));

    for (double x1 : {1.0, 1.5, 3.0, 10.0})
        for (double x2 : {1.0, 1.5, 3.0, 10.0})
            CHECK(std::abs(epsilon_infinite(x1).epsilon - epsilon_infinite(x2).epsilon) <=
                  1e-9);

    CHECK(epsilon_infinite(0.5).epsilon ==
          doctest::Approx(0.066990960874326109).epsilon(1e-9));
    CHECK(epsilon_infinite(0.3).epsilon ==
          doctest::Approx(0.029485675376854983).epsilon(1e-9));
    CHECK(epsilon_infinite(0.9).epsilon ==
          doctest::Approx(0.16516415869319859).epsilon(1e-9));
}

TEST_CASE("thermodynamic-limit entanglement is even in x") {
    for (double x : {0.3, 0.9, 1.5})
        CHECK(std::abs(epsilon_infinite(x).epsilon - epsilon_infinite(-x).epsilon) <=
              1e-8);
}

TEST_CASE("two independent routes to the same curve") {
    for (double x : {0.3, 0.5, 0.9, 1.0, 2.5})
        CHECK(std::abs(epsilon_infinite(x).epsilon -
                       testing::epsilon_infinite_q_route(x)) <= 1e-6);
}

TEST_CASE("mode sum converges to the integral like a Riemann sum") {
    const double x = 0.9;
    const double limit = epsilon_infinite(x, 1e-12).epsilon;
    double prev = 1.0;
    for (int n : {64, 256, 1024, 4096}) {
        const double diff = std::abs(epsilon_finite(x, n).epsilon - limit);
        CHECK(diff <= 0.05 / n);
        CHECK(diff <= prev);
        prev = diff;
    }
}

TEST_CASE("entropy is invariant under p -> 1 - p per mode") {
    const ModeSpectrum spec = mode_spectrum(0.8, build_grid(32, Parity::Even));
    double swapped = 0.0;
    for (const Mode& m : spec.modes) swapped += binary_entropy(1.0 - m.p);
    CHECK(swapped / 32 ==
          doctest::Approx(epsilon_finite(0.8, 32).epsilon).epsilon(1e-14));
}

TEST_CASE("thermodynamic-limit curve is nondecreasing on [0, 1)") {
    double prev = -1.0;
    for (int k = 0; k < 50; ++k) {
        const double x = 0.999 * k / 49.0;
        const double eps = epsilon_infinite(x).epsilon;
        CHECK(eps >= prev - 1e-10);
        prev = eps;
    }
}

TEST_CASE("quadrature budget exhaustion raises") {
    CHECK_THROWS_AS(epsilon_infinite(0.9, 1e-30), QuadratureError);
    CHECK_THROWS_AS(epsilon_infinite(0.9, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(epsilon_infinite(std::nan("")), std::invalid_argument);
}

TEST_CASE("gauss-kronrod panel integrates low-degree polynomials exactly") {
    for (int degree = 0; degree <= 12; ++degree) {
        const auto f = [degree](double t) { return std::pow(t, degree); };
        const QuadratureResult r = integrate_adaptive(f, -1.0, 1.0, 1e-10);
        const double exact = (degree % 2 == 1) ? 0.0 : 2.0 / (degree + 1);
        CHECK(r.value == doctest::Approx(exact).scale(1).epsilon(1e-13));
    }
}

TEST_CASE("kronrod nodes and weights are exact through degree 22") {
    // pins the embedded constants: a single 15-point panel must integrate
    // monomials up to degree 22 to rounding error
    for (int degree = 0; degree <= 22; ++degree) {
        const auto f = [degree](double t) { return std::pow(t, degree); };
        double value = 0.0, err = 0.0;
        detail::gk15_panel(f, -1.0, 1.0, value, err);
        const double exact = (degree % 2 == 1) ? 0.0 : 2.0 / (degree + 1);
        CHECK(std::abs(value - exact) <= 5e-14);
    }
}
