#include "tfim/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tfim/ed_oracle.hpp"

namespace tfim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string("nan");
}

std::string size_label(const std::optional<int>& size) {
    return size ? std::to_string(*size) : std::string("inf");
}

const char* side_label(Side s) {
    switch (s) {
        case Side::Central: return "central";
        case Side::Left: return "left";
        case Side::Right: return "right";
    }
    return "?";
}

ordered_json json_size(const std::optional<int>& size) {
    if (size) return *size;
    return "inf";
}

ordered_json json_opt(const std::optional<double>& v) {
    if (v && std::isfinite(*v)) return *v;
    return nullptr;
}

// One-sided differentiation wherever a central 5-point stencil (half-width
// 2*step) would cross x = +-1; the smooth side at +1 is the left one, at -1
// the right one, matching the cusp orientation of the curve.
Side pick_side(double x, double step) {
    const double w = 2.0 * step;
    if (std::abs(x - 1.0) <= w) return x <= 1.0 ? Side::Left : Side::Right;
    if (std::abs(x + 1.0) <= w) return x >= -1.0 ? Side::Right : Side::Left;
    return Side::Central;
}

std::vector<double> sweep_x_grid(const SweepConfig& config) {
    std::vector<double> xs;
    xs.reserve(config.x_steps + 40);
    if (config.x_steps == 1 || config.x_min == config.x_max) {
        xs.assign(config.x_steps, config.x_min);
    } else {
        for (int i = 0; i < config.x_steps; ++i)
            xs.push_back(config.x_min +
                         (config.x_max - config.x_min) * i / (config.x_steps - 1));
    }
    if (config.refine_critical) {
        for (double c : {-1.0, 1.0}) {
            if (!(config.x_min < c && c < config.x_max)) continue;
            xs.push_back(c);
            for (double delta = 0.1; delta >= 4.0 * config.derivative_step;
                 delta *= 0.5) {
                if (c - delta > config.x_min) xs.push_back(c - delta);
                if (c + delta < config.x_max) xs.push_back(c + delta);
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

void validate(const SweepConfig& config) {
    if (!std::isfinite(config.x_min) || !std::isfinite(config.x_max))
        throw std::invalid_argument("sweep config: x range must be finite");
    if (config.x_min > config.x_max)
        throw std::invalid_argument("sweep config: x_min must not exceed x_max");
    if (config.x_steps < 2)
        throw std::invalid_argument("sweep config: x_steps must be >= 2");
    if (!(config.quad_tol > 0.0))
        throw std::invalid_argument("sweep config: quad_tol must be positive");
    if (!(config.derivative_step > 0.0))
        throw std::invalid_argument("sweep config: derivative step must be positive");
    if (config.sizes.empty())
        throw std::invalid_argument("sweep config: sizes must not be empty");
    for (const auto& s : config.sizes)
        if (s && (*s < 2 || *s % 2 != 0))
            throw std::invalid_argument(
                "sweep config: sizes must be even integers >= 2 or \"inf\"");
    if (config.jobs < 0)
        throw std::invalid_argument("sweep config: jobs must be >= 0");
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    unsigned k = jobs > 0 ? static_cast<unsigned>(jobs)
                          : std::max(1u, std::thread::hardware_concurrency());
    k = static_cast<unsigned>(std::min<std::size_t>(k, count));
    if (k <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    validate(config);
    const std::vector<double> xs = sweep_x_grid(config);

    struct Item {
        std::optional<int> size;
        double x;
    };
    std::vector<Item> items;
    items.reserve(xs.size() * config.sizes.size());
    for (const auto& size : config.sizes)
        for (double x : xs) items.push_back({size, x});

    std::vector<SweepRow> rows(items.size());
    parallel_for(items.size(), config.jobs, [&](std::size_t i) {
        const Item& it = items[i];
        const double h = config.derivative_step;
        SweepRow row;
        row.deriv_side = pick_side(it.x, h);
        std::function<double(double)> curve;
        if (it.size) {
            const int n = *it.size;
            const Parity sector = config.sector;
            row.point = epsilon_finite(it.x, n, sector);
            curve = [n, sector](double xx) {
                return epsilon_finite(xx, n, sector).epsilon;
            };
        } else {
            row.point = epsilon_infinite(it.x, config.quad_tol);
            curve = [](double xx) { return epsilon_infinite(xx, 1e-13).epsilon; };
        }
        row.point.eps_d1 = finite_difference(curve, it.x, 1, h, row.deriv_side);
        row.point.eps_d2 = finite_difference(curve, it.x, 2, h, row.deriv_side);
        rows[i] = std::move(row);
    });
    return rows;
}

std::vector<EigenvalueDensitySample> run_density(const std::vector<double>& x_list,
                                                 int p_steps, int jobs) {
    if (p_steps < 2)
        throw std::invalid_argument("density: p_steps must be >= 2");
    if (x_list.empty())
        throw std::invalid_argument("density: x_list must not be empty");
    for (double x : x_list)
        if (!std::isfinite(x) || x == 0.0)
            throw std::invalid_argument("density: x values must be finite and nonzero");

    std::vector<EigenvalueDensitySample> rows(x_list.size() * p_steps);
    parallel_for(x_list.size(), jobs, [&](std::size_t i) {
        const double x = x_list[i];
        for (int k = 0; k < p_steps; ++k) {
            const double p = static_cast<double>(k) / (p_steps - 1);
            rows[i * p_steps + k] = {p, x, g_of_p(p, x)};
        }
    });
    return rows;
}

std::vector<OracleRow> run_oracle(const std::vector<int>& n_list,
                                  const std::vector<double>& x_list, int jobs) {
    if (n_list.empty() || x_list.empty())
        throw std::invalid_argument("oracle: n_list and x_list must not be empty");
    for (int n : n_list)
        if (n < 2 || n > 12 || n % 2 != 0)
            throw std::invalid_argument("oracle: n must be even and within [2, 12]");

    struct Item {
        int n;
        double x;
    };
    std::vector<Item> items;
    for (int n : n_list)
        for (double x : x_list) items.push_back({n, x});

    std::vector<OracleRow> rows(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) {
        const auto [n, x] = items[i];
        const GroundStateED gs = ground_state(SpinHamiltonian{n, x, 1.0});
        const double eps_ed = species_entropy_ed(gs);
        const double eps_modes = epsilon_finite(x, n).epsilon;
        const MomentumGrid grid = build_grid(n, Parity::Even);
        double e_modes = 0.0;
        for (double q : grid.q_positive) e_modes -= 2.0 * mode_at(x, q).lambda;
        rows[i] = {n,
                   x,
                   eps_modes,
                   eps_ed,
                   std::abs(eps_modes - eps_ed),
                   std::abs(gs.energy - e_modes) / std::abs(gs.energy)};
    });
    return rows;
}

bool oracle_disagrees(const std::vector<OracleRow>& rows) {
    for (const OracleRow& r : rows)
        if (std::abs(r.x) <= 0.95 && r.abs_diff > 1e-9) return true;
    return false;
}

CriticalSummary run_critical() {
    CriticalSummary s;
    s.closed_form = jump_estimate(JumpMethod::ClosedFormIntegral);
    s.numeric_limit = jump_estimate(JumpMethod::NumericLimit);
    s.divergence = divergence_exponent();
    s.methods_gap =
        std::abs(*s.closed_form.jump_value - *s.numeric_limit.jump_value);
    s.flat_x = {1.1, 1.5, 2.0};
    for (double x : s.flat_x)
        s.flat_eps_d1.push_back(epsilon_derivative(x, 1));
    return s;
}

// ---- serialization ----

std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "x,size,epsilon,eps_d1,eps_d2,deriv_side\n";
    for (const SweepRow& r : rows) {
        out += fmt(r.point.x);
        out += ',';
        out += size_label(r.point.size);
        out += ',';
        out += fmt(r.point.epsilon);
        out += ',';
        out += fmt(r.point.eps_d1);
        out += ',';
        out += fmt(r.point.eps_d2);
        out += ',';
        out += side_label(r.deriv_side);
        out += '\n';
    }
    return out;
}

std::string to_csv(const std::vector<EigenvalueDensitySample>& rows) {
    std::string out = "p,x,g\n";
    for (const EigenvalueDensitySample& r : rows) {
        out += fmt(r.p);
        out += ',';
        out += fmt(r.x);
        out += ',';
        out += fmt(r.g);
        out += '\n';
    }
    return out;
}

std::string to_csv(const std::vector<OracleRow>& rows) {
    std::string out = "n,x,eps_modes,eps_ed,abs_diff,energy_rel_diff\n";
    for (const OracleRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt(r.x);
        out += ',';
        out += fmt(r.eps_modes);
        out += ',';
        out += fmt(r.eps_ed);
        out += ',';
        out += fmt(r.abs_diff);
        out += ',';
        out += fmt(r.energy_rel_diff);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<SweepRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json o;
        o["x"] = r.point.x;
        o["size"] = json_size(r.point.size);
        o["epsilon"] = r.point.epsilon;
        o["eps_d1"] = json_opt(r.point.eps_d1);
        o["eps_d2"] = json_opt(r.point.eps_d2);
        o["deriv_side"] = side_label(r.deriv_side);
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string to_json(const std::vector<EigenvalueDensitySample>& rows) {
    ordered_json arr = ordered_json::array();
    for (const EigenvalueDensitySample& r : rows) {
        ordered_json o;
        o["p"] = r.p;
        o["x"] = r.x;
        o["g"] = r.g;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string to_json(const std::vector<OracleRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const OracleRow& r : rows) {
        ordered_json o;
        o["n"] = r.n;
        o["x"] = r.x;
        o["eps_modes"] = r.eps_modes;
        o["eps_ed"] = r.eps_ed;
        o["abs_diff"] = r.abs_diff;
        o["energy_rel_diff"] = r.energy_rel_diff;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string to_json(const CriticalSummary& s) {
    ordered_json o;
    o["closed_form"] = {
        {"jump_value", json_opt(s.closed_form.jump_value)},
        {"jump_left_derivative", json_opt(s.closed_form.jump_left_derivative)},
        {"eps_prime_right_of_one", json_opt(s.closed_form.eps_prime_right)},
    };
    o["numeric_limit"] = {
        {"jump_value", json_opt(s.numeric_limit.jump_value)},
        {"jump_left_derivative", json_opt(s.numeric_limit.jump_left_derivative)},
        {"eps_prime_right_of_one", json_opt(s.numeric_limit.eps_prime_right)},
    };
    o["methods_gap"] = s.methods_gap;
    o["divergence"] = {
        {"exponent", json_opt(s.divergence.divergence_exponent)},
        {"fit_window",
         ordered_json::array({s.divergence.fit_window.first,
                              s.divergence.fit_window.second})},
        {"fit_residual", json_opt(s.divergence.fit_residual)},
    };
    ordered_json flat = ordered_json::array();
    for (std::size_t i = 0; i < s.flat_x.size(); ++i)
        flat.push_back({{"x", s.flat_x[i]}, {"eps_d1", s.flat_eps_d1[i]}});
    o["flat_region_eps_d1"] = std::move(flat);
    return o.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace tfim
