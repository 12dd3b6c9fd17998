#pragma once

#include <cstdint>
#include <string>

#include "greenroute/model.hpp"

namespace greenroute {

enum class ExactStatus {
    Optimal,     // enumeration finished, incumbent is optimal
    Incumbent,   // budget ran out with a feasible incumbent
    Infeasible,  // enumeration finished without any feasible solution
    Unknown,     // budget ran out before any feasible solution appeared
};

const char* to_string(ExactStatus status);

struct ExactResult {
    ExactStatus status = ExactStatus::Unknown;
    ObjectiveBreakdown optimum;
    Solution solution;
    std::uint64_t nodes_explored = 0;
    /// True iff the enumeration ran to completion.
    bool proven = false;
    double seconds = 0.0;

    bool has_solution() const { return status == ExactStatus::Optimal || status == ExactStatus::Incumbent; }
};

/// Depth-first enumeration of routes, each route extended customer by
/// customer in ascending id order and routes ordered by their first customer.
/// Branches are cut on capacity, on a missed time window or bracket, and when
/// a lower bound on the completed cost cannot beat the incumbent. Speed levels
/// follow the departure brackets. The returned solution is canonical.
ExactResult solve_exact(const Instance& inst, double time_budget_seconds, double depart_time = 0.0);

/// Big-M of the timing row for edge (i, j): max{0, b_i + g_i + d_ij / l - a_j}
/// with l the slowest lower speed bound over all levels.
double big_m(const Instance& inst, NodeId i, NodeId j);

struct MilpCounts {
    std::size_t x_vars = 0;
    std::size_t z_vars = 0;
    std::size_t f_vars = 0;
    std::size_t y_vars = 0;
    std::size_t rows = 0;
};

/// Closed-form variable and row counts of export_milp for n customers,
/// k vehicles and r speed levels.
MilpCounts milp_counts(int n, int k, int r);

/// The mixed-integer model in CPLEX LP text format with deterministic
/// variable and row order.
std::string export_milp(const Instance& inst);

}  // namespace greenroute
