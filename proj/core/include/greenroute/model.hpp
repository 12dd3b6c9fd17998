#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace greenroute {

using NodeId = int;
using LevelId = int;

/// Raised for malformed instances, solutions and input files.
class InputError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A regulated average speed valid during one time-of-day bracket.
/// Speeds are km/h, times are hours since the start of the day.
struct SpeedLevel {
    LevelId id = 1;
    double lower = 0.0;
    double avg = 0.0;
    double upper = 0.0;
    double bracket_start = 0.0;
    double bracket_end = 0.0;

    bool contains(double time) const { return time >= bracket_start && time < bracket_end; }

    friend bool operator==(const SpeedLevel&, const SpeedLevel&) = default;
};

struct Node {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double service = 0.0;
    double tw_open = 0.0;
    double tw_close = 0.0;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Dense row-major square matrix indexed by node id.
class Matrix {
 public:
    Matrix() = default;
    explicit Matrix(std::size_t size, double fill = 0.0) : size_(size), data_(size * size, fill) {}

    double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }
    std::size_t size() const { return size_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
    std::size_t size_ = 0;
    std::vector<double> data_;
};

/// Problem data. Node 0 is the start depot, node n+1 the end depot (the same
/// physical warehouse), nodes 1..n are customers. Immutable once validated.
struct Instance {
    std::vector<Node> nodes;
    Matrix distances;
    int fleet_size = 1;
    double vehicle_weight = 0.0;
    double capacity = 0.0;
    double fuel_cost = 0.0;
    double emission_cost = 0.0;
    Matrix alpha;
    double beta = 0.0;
    std::vector<SpeedLevel> speed_levels;
    double delta1 = 1.0;
    double delta2 = 0.0;

    int customers() const { return static_cast<int>(nodes.size()) - 2; }
    NodeId end_depot() const { return static_cast<NodeId>(nodes.size()) - 1; }
    bool is_depot(NodeId id) const { return id == 0 || id == end_depot(); }
    bool is_customer(NodeId id) const { return id >= 1 && id < end_depot(); }
    double unit_cost() const { return fuel_cost + emission_cost; }
    double horizon() const { return speed_levels.empty() ? 0.0 : speed_levels.back().bracket_end; }

    const SpeedLevel& level(LevelId id) const;
    bool has_level(LevelId id) const { return id >= 1 && id <= static_cast<LevelId>(speed_levels.size()); }

    /// Level whose bracket contains `time`, if any.
    std::optional<LevelId> level_at(double time) const;

    /// Level used for a departure at `time`. Times past the horizon fall back to
    /// the last level so timing stays computable; the checker still flags them.
    LevelId departure_level(double time) const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Euclidean distances between node coordinates.
Matrix euclidean_distances(std::span<const Node> nodes);

/// Throws InputError describing the first broken instance invariant.
void validate(const Instance& inst);

/// One stop on a route. `speed_level` is the level of the edge arriving here.
struct Visit {
    NodeId node = 0;
    LevelId speed_level = 1;

    friend bool operator==(const Visit&, const Visit&) = default;
};

using Route = std::vector<Visit>;

struct Solution {
    std::vector<Route> routes;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Customer ids of a route in visiting order, depots stripped.
std::vector<NodeId> customers_of(const Route& route);

/// Builds a depot-delimited route over `customers`; levels are placeholders
/// until assign_speed_levels runs.
Route make_route(const Instance& inst, std::span<const NodeId> customers);

/// Drops routes that serve no customer and orders the rest by first customer.
void canonicalize(Solution& sol);

struct RouteTiming {
    std::vector<double> arrival;
    std::vector<double> service_start;
    std::vector<double> departure;
    /// load[e] is carried on the edge from visit e to visit e+1.
    std::vector<double> load;
    /// Edge departs and arrives in different speed brackets.
    std::vector<bool> crosses_bracket;
};

struct ObjectiveBreakdown {
    double tare_term = 0.0;
    double payload_term = 0.0;
    double speed_term = 0.0;
    double total = 0.0;
    double fuel_proxy = 0.0;
    double emission = 0.0;

    ObjectiveBreakdown& operator+=(const ObjectiveBreakdown& o);
};

/// Cost of travelling i -> j carrying `load` at `level`.
ObjectiveBreakdown edge_cost(const Instance& inst, NodeId i, NodeId j, double load, LevelId level);

/// Timing and edge loads of a route that leaves the start depot at `depart_time`.
/// Travel on each edge uses the level stored on the arriving visit.
RouteTiming simulate_route(const Instance& inst, const Route& route, double depart_time = 0.0);

/// Rewrites each visit's level from the bracket containing the departure
/// time of the preceding visit.
void assign_speed_levels(const Instance& inst, Route& route, double depart_time = 0.0);
void assign_speed_levels(const Instance& inst, Solution& sol, double depart_time = 0.0);

enum class ViolationKind {
    Structure,    // malformed route, depot mid-route, bad ids
    FleetSize,    // more routes than vehicles
    Assignment,   // customer missing or served twice
    Capacity,     // route demand above q_max
    TimeWindow,   // service start outside [a, b]
    Timing,       // schedule faster than travel allows
    FlowBalance,  // load in minus load out differs from demand
    LoadBound,    // edge load outside [q_j, q_max - q_i]
    SpeedLevel,   // edge level does not match its departure bracket
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int route = -1;
    NodeId node = -1;
    double excess = 0.0;
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> violations;
    /// Non-violations worth surfacing, e.g. edges straddling two brackets.
    std::vector<std::string> diagnostics;

    bool feasible() const { return violations.empty(); }
    std::size_t count(ViolationKind kind) const;
};

/// Full constraint check against the timing derived by simulate_route.
ViolationReport check_feasibility(const Instance& inst, const Solution& sol, double depart_time = 0.0);

/// Checks a solution against an explicit schedule (one RouteTiming per route).
/// Only service_start and load are read from the schedule.
ViolationReport check_schedule(const Instance& inst, const Solution& sol,
                               std::span<const RouteTiming> schedule, double depart_time = 0.0);

/// Capacity, time windows and departure brackets of one route, ignoring
/// which customers it serves.
bool route_feasible(const Instance& inst, const Route& route, double depart_time = 0.0);

/// Fast yes/no equivalent of check_feasibility(...).feasible().
bool is_feasible(const Instance& inst, const Solution& sol, double depart_time = 0.0);

ObjectiveBreakdown evaluate_route(const Instance& inst, const Route& route, double depart_time = 0.0);

/// Objective over every used edge. Defined for infeasible solutions as well;
/// throws InputError on unknown node or level ids.
ObjectiveBreakdown evaluate(const Instance& inst, const Solution& sol, double depart_time = 0.0);

}  // namespace greenroute
