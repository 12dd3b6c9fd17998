#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "greenroute/sa.hpp"

namespace greenroute {

/// One exact-versus-annealing comparison. Optional fields are empty when the
/// corresponding solver produced no solution.
struct CompareRow {
    std::string instance_id;
    int n = 0;
    std::optional<double> exact_objective;
    double exact_time_s = 0.0;
    bool exact_proven = false;
    std::optional<double> sa_objective;
    double sa_time_s = 0.0;
    std::optional<double> gap_pct;
    std::optional<double> time_decrease_pct;
    std::string note;
};

struct CompareOptions {
    std::vector<int> sizes;
    int trials = 1;
    std::uint64_t seed = 1;
    double exact_budget_s = 1800.0;
    /// Where convergence plots go; nothing is written when empty.
    std::filesystem::path plot_dir;
    int jobs = 1;
};

/// Seed of the instance generated for (size, trial).
std::uint64_t instance_seed(std::uint64_t base, int n, int trial);

/// Generates one instance per (size, trial), runs both solvers and returns
/// rows in size-major order. Failures end up in the row's note.
std::vector<CompareRow> run_compare(const CompareOptions& opts);

CompareRow compare_instance(const std::string& id, const Instance& inst, std::uint64_t sa_seed, double exact_budget_s,
                            AnnealTrace* trace = nullptr);

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows);

/// Best and current objective against epoch as a standalone SVG document.
void write_convergence_svg(std::ostream& out, const AnnealTrace& trace, const std::string& title);

}  // namespace greenroute
