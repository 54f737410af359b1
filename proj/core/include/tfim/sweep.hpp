#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfim/criticality.hpp"
#include "tfim/entanglement.hpp"
#include "tfim/model_modes.hpp"

namespace tfim {

enum class OutputFormat { Csv, Json };

/// Parameter-sweep description.  sizes entries are chain lengths, with
/// nullopt meaning the thermodynamic limit ("inf" on the wire).
struct SweepConfig {
    double x_min = -2.0;
    double x_max = 2.0;
    int x_steps = 81;
    std::vector<std::optional<int>> sizes{10, 20, std::nullopt};
    Parity sector = Parity::Even;
    double quad_tol = 1e-8;
    double derivative_step = 1e-4;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    bool refine_critical = true;
    int jobs = 0;  // 0 = hardware concurrency
};

/// Throws std::invalid_argument with a message naming the offending field.
void validate(const SweepConfig& config);

struct SweepRow {
    EntanglementPoint point;
    Side deriv_side = Side::Central;
};

/// One row per (size, x), size-major, x ascending.  Derivative columns are
/// always computed; rows whose central stencil would cross +-1 switch to the
/// matching one-sided stencil and record it in deriv_side.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Integrated-density table: for each x, p on a uniform [0, 1] grid with
/// p_steps points.  Row order: x-major in the given order, p ascending.
std::vector<EigenvalueDensitySample> run_density(const std::vector<double>& x_list,
                                                 int p_steps, int jobs = 0);

struct OracleRow {
    int n = 0;
    double x = 0.0;
    double eps_modes = 0.0;
    double eps_ed = 0.0;
    double abs_diff = 0.0;
    double energy_rel_diff = 0.0;
};

/// Cross-validation table over the (n, x) grid; each item solves the chain
/// once and reuses the ground state for both columns.
std::vector<OracleRow> run_oracle(const std::vector<int>& n_list,
                                  const std::vector<double>& x_list, int jobs = 0);

/// True when any row with |x| <= 0.95 has abs_diff > 1e-9 (the CLI maps this
/// to its oracle-disagreement exit code).
bool oracle_disagrees(const std::vector<OracleRow>& rows);

/// Full critical-point report as emitted by the `critical` subcommand.
struct CriticalSummary {
    CriticalReport closed_form;
    CriticalReport numeric_limit;
    CriticalReport divergence;
    double methods_gap = 0.0;             // |closed_form - numeric_limit| jump gap
    std::vector<double> flat_x;           // probe points right of x = 1
    std::vector<double> flat_eps_d1;      // eps'(x) there, expected ~0
};

CriticalSummary run_critical();

// ---- serialization (CSV: single header row, '.' decimals, %.17g reals;
//      JSON: array of row objects with the same field names) ----

std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<EigenvalueDensitySample>& rows);
std::string to_csv(const std::vector<OracleRow>& rows);

std::string to_json(const std::vector<SweepRow>& rows);
std::string to_json(const std::vector<EigenvalueDensitySample>& rows);
std::string to_json(const std::vector<OracleRow>& rows);
std::string to_json(const CriticalSummary& summary);

/// Writes via a temp file in the same directory plus atomic rename; partial
/// output never lands at `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// Index-based worker pool: deterministic output regardless of worker count.
/// jobs = 0 uses hardware concurrency.  The first exception thrown by a
/// worker is rethrown after all workers join.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace tfim
