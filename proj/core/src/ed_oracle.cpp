#include "tfim/ed_oracle.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tfim/model_modes.hpp"

namespace tfim {

void SpinHamiltonian::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t d = dim();
    if (in.size() != d || out.size() != d)
        throw std::invalid_argument("SpinHamiltonian::apply: vector length must be 2^n");
    for (std::size_t u = 0; u < d; ++u) {
        const int up = std::popcount(u);
        out[u] = -h * (2.0 * up - n) * in[u];
    }
    for (int i = 0; i < n; ++i) {
        const std::size_t mask =
            (std::size_t{1} << i) | (std::size_t{1} << ((i + 1) % n));
        for (std::size_t u = 0; u < d; ++u) out[u ^ mask] += -j * in[u];
    }
}

std::vector<double> apply_hamiltonian(const std::vector<double>& v,
                                      const SpinHamiltonian& ham) {
    std::vector<double> out(v.size());
    ham.apply(v, out);
    return out;
}

int basis_parity(std::uint64_t u, int n) {
    const int down = n - std::popcount(u);
    return down % 2 == 0 ? +1 : -1;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) s += (long double)a[i] * b[i];
    return static_cast<double>(s);
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::vector<double>& v, double c) {
    for (double& e : v) e *= c;
}

void project_parity(std::vector<double>& v, int n, int sector) {
    for (std::size_t u = 0; u < v.size(); ++u)
        if (basis_parity(u, n) != sector) v[u] = 0.0;
}

}  // namespace

GroundStateED ground_state(const SpinHamiltonian& ham,
                           std::optional<int> parity_sector, double residual_tol) {
    if (ham.n < 2 || ham.n > 12)
        throw std::invalid_argument("ground_state: n must be in [2, 12], got " +
                                    std::to_string(ham.n));
    if (!(residual_tol > 0.0))
        throw std::invalid_argument("ground_state: residual_tol must be positive");
    if (parity_sector && *parity_sector != 1 && *parity_sector != -1)
        throw std::invalid_argument("ground_state: parity sector must be +1 or -1");

    const std::size_t d = ham.dim();
    const int m_max = static_cast<int>(std::min<std::size_t>(d, 250));
    const int max_restarts = 40;

    // Deterministic start vector: raw mt19937_64 bits, no distribution object,
    // so results are reproducible across standard libraries.
    std::vector<double> v0(d);
    std::mt19937_64 rng(0x7f1e2d3c4b5a6978ULL);
    for (double& e : v0) e = (rng() >> 11) * 0x1.0p-53 - 0.5;
    if (parity_sector) project_parity(v0, ham.n, *parity_sector);
    {
        const double nv = norm(v0);
        if (nv == 0.0) throw SolverError("ground_state: empty start vector");
        scale(v0, 1.0 / nv);
    }

    std::vector<double> best;
    int applies = 0;
    bool converged = false;
    double last_cycle_residual = std::numeric_limits<double>::infinity();

    std::vector<double> w(d), hv(d);
    for (int restart = 0; restart < max_restarts && !converged; ++restart) {
        std::vector<std::vector<double>> basis;
        std::vector<double> alpha, beta;
        basis.push_back(v0);

        for (int k = 0; k < m_max; ++k) {
            ham.apply(basis[k], w);
            ++applies;
            if (parity_sector) project_parity(w, ham.n, *parity_sector);
            const double a = dot(basis[k], w);
            alpha.push_back(a);
            axpy(-a, basis[k], w);
            if (k > 0) axpy(-beta[k - 1], basis[k - 1], w);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& prev : basis) axpy(-dot(prev, w), prev, w);
            const double b = norm(w);

            // Lowest Ritz pair of the current tridiagonal matrix.
            const int mdim = k + 1;
            Eigen::VectorXd diag(mdim), sub(std::max(0, mdim - 1));
            for (int i = 0; i < mdim; ++i) diag(i) = alpha[i];
            for (int i = 0; i + 1 < mdim; ++i) sub(i) = beta[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub);
            const double theta = es.eigenvalues()(0);
            const Eigen::VectorXd s = es.eigenvectors().col(0);
            const double ritz_residual = std::abs(b * s(mdim - 1));

            const bool subspace_exhausted = b <= 1e-14 * std::abs(theta) + 1e-300;
            if (ritz_residual <= 0.5 * residual_tol || subspace_exhausted ||
                k + 1 == m_max) {
                std::vector<double> y(d, 0.0);
                for (int i = 0; i < mdim; ++i) axpy(s(i), basis[i], y);
                if (parity_sector) project_parity(y, ham.n, *parity_sector);
                const double ny = norm(y);
                if (ny > 0.0) scale(y, 1.0 / ny);
                ham.apply(y, hv);
                ++applies;
                const double energy = dot(y, hv);
                double r2 = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    const double ri = hv[i] - energy * y[i];
                    r2 += ri * ri;
                }
                const double residual = std::sqrt(r2);
                best = y;
                if (residual <= residual_tol) {
                    converged = true;
                    break;
                }
                if (k + 1 == m_max || subspace_exhausted) {
                    // Restarting only pays while the residual keeps dropping;
                    // a stall here is a quasi-degenerate pair the unprojected
                    // iteration cannot split (use a parity sector instead).
                    if (residual > 0.5 * last_cycle_residual)
                        throw SolverError(
                            "ground_state: residual stalled at " +
                            std::to_string(residual) +
                            " (target " + std::to_string(residual_tol) +
                            "); near-degenerate spectrum, try a parity sector");
                    last_cycle_residual = residual;
                }
                v0 = std::move(y);
                if (subspace_exhausted) {
                    // Krylov space went invariant without reaching the target:
                    // kick the restart vector deterministically.
                    std::mt19937_64 kick(0x9e3779b97f4a7c15ULL + restart);
                    for (double& e : v0)
                        e += 1e-8 * ((kick() >> 11) * 0x1.0p-53 - 0.5);
                    if (parity_sector) project_parity(v0, ham.n, *parity_sector);
                    scale(v0, 1.0 / norm(v0));
                }
                if (subspace_exhausted || k + 1 == m_max) break;  // restart
                // Ritz estimate was optimistic; keep extending this space.
            }
            beta.push_back(b);
            scale(w, 1.0 / b);
            basis.push_back(w);
        }
    }

    if (!converged || best.empty())
        throw SolverError("ground_state: no convergence to residual " +
                          std::to_string(residual_tol) + " within budget");

    GroundStateED gs;
    gs.n = ham.n;
    gs.x = ham.h != 0.0 ? ham.j / ham.h : std::numeric_limits<double>::quiet_NaN();
    gs.iterations = applies;

    // The exact eigenstate has definite parity; strip the off-sector residual
    // noise, then fix the global sign on the dominant amplitude.
    std::size_t peak = 0;
    for (std::size_t u = 1; u < d; ++u)
        if (std::abs(best[u]) > std::abs(best[peak])) peak = u;
    const int parity = parity_sector ? *parity_sector : basis_parity(peak, ham.n);
    project_parity(best, ham.n, parity);
    scale(best, 1.0 / norm(best));
    if (best[peak] < 0.0) scale(best, -1.0);

    ham.apply(best, hv);
    gs.energy = dot(best, hv);
    double r2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double ri = hv[i] - gs.energy * best[i];
        r2 += ri * ri;
    }
    gs.residual = std::sqrt(r2);
    if (gs.residual > residual_tol)
        throw SolverError("ground_state: parity projection degraded the residual");
    gs.parity = parity;
    gs.probabilities.resize(d);
    for (std::size_t u = 0; u < d; ++u) gs.probabilities[u] = best[u] * best[u];
    gs.amplitudes = std::move(best);
    return gs;
}

double species_entropy_ed(const GroundStateED& gs) {
    long double s = 0.0L;
    for (double p : gs.probabilities)
        if (p > 0.0) s -= (long double)p * std::log(p);
    return static_cast<double>(s) / gs.n;
}

double energy_cross_check(double x, int n) {
    if (n % 2 != 0)
        throw std::invalid_argument("energy_cross_check: n must be even");
    const MomentumGrid grid = build_grid(n, Parity::Even);
    double e_modes = 0.0;
    for (double q : grid.q_positive) e_modes -= 2.0 * mode_at(x, q).lambda;
    const GroundStateED gs = ground_state(SpinHamiltonian{n, x, 1.0});
    return std::abs(gs.energy - e_modes) / std::abs(gs.energy);
}

}  // namespace tfim
