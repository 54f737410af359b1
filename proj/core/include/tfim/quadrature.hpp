#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfim {

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

// One G7/K15 panel with the usual conservative error estimate: the raw
// |K15 - G7| difference is rescaled against the variation of f so that
// near-converged panels do not under-report.
template <class F>
void gk15_panel(F&& f, double a, double b, double& value, double& err) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fv{};
    const double fc = f(center);
    fv[14] = fc;
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = kKronrodWeights[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kKronrodWeights[j] * (f1 + f2);
        resabs += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodWeights[j] *
                  (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    }
    value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, floor);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
///
/// Splits the interval with the largest error estimate until the summed
/// estimate drops below abs_tol.  Endpoints are never sampled, so integrable
/// endpoint singularities (the log edge at zeta = 1, the sqrt kink at the
/// band cutoff) only cost extra graded subdivisions.  Throws QuadratureError
/// when the subdivision budget is exhausted first.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_intervals = 4000) {
    if (!(abs_tol > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_adaptive: bad domain or tolerance");
    if (a == b) return {0.0, 0.0, 0};

    struct Panel {
        double err, a, b, value;
        bool operator<(const Panel& o) const {
            if (err != o.err) return err < o.err;
            return a > o.a;  // deterministic tie-break
        }
    };

    std::priority_queue<Panel> active;
    std::vector<Panel> frozen;  // panels too narrow to split further

    double v0, e0;
    detail::gk15_panel(f, a, b, v0, e0);
    active.push({e0, a, b, v0});
    double total_err = e0;
    int n = 1;

    while (total_err > abs_tol && !active.empty()) {
        if (n >= max_intervals)
            throw QuadratureError(
                "integrate_adaptive: " + std::to_string(max_intervals) +
                "-interval budget exhausted at error " + std::to_string(total_err));
        const Panel top = active.top();
        active.pop();
        const double mid = 0.5 * (top.a + top.b);
        if (!(top.a < mid && mid < top.b)) {
            frozen.push_back(top);
            continue;
        }
        double v1, e1, v2, e2;
        detail::gk15_panel(f, top.a, mid, v1, e1);
        detail::gk15_panel(f, mid, top.b, v2, e2);
        active.push({e1, top.a, mid, v1});
        active.push({e2, mid, top.b, v2});
        total_err += e1 + e2 - top.err;
        ++n;
    }

    // The loop left either because the tracked error reached tolerance or
    // because every panel froze at minimal width with error to spare.
    if (total_err > abs_tol)
        throw QuadratureError("integrate_adaptive: tolerance unreachable (error " +
                              std::to_string(total_err) + ")");

    std::vector<Panel> all = std::move(frozen);
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    long double value = 0.0L, err = 0.0L;
    for (const Panel& p : all) {
        value += p.value;
        err += p.err;
    }
    return {static_cast<double>(value), static_cast<double>(err), n};
}

}  // namespace tfim
