#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "greenroute/model.hpp"
#include "greenroute/rng.hpp"

namespace greenroute {

struct SAConfig {
    double t_initial = 1.0;
    double t_final = 0.001;
    double cooling = 0.97;
    /// Neighbour generations allowed per step before the step is skipped.
    /// Defaults to n + 50.
    std::optional<int> attempts_cap;
    /// Steps per temperature. Defaults to n.
    std::optional<int> moves_per_temp;
    std::uint64_t seed = 1;
    /// Metropolis uses delta / |current objective| instead of the raw delta.
    bool normalize_delta = true;
    /// Adds cross-route segment relocation as a fifth move kind.
    bool segment_relocation = false;
    double depart_time = 0.0;

    int attempts_for(const Instance& inst) const { return attempts_cap.value_or(inst.customers() + 50); }
    int moves_for(const Instance& inst) const { return moves_per_temp.value_or(std::max(inst.customers(), 1)); }

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;
};

enum class MoveKind : int {
    Mirror = 1,           // reverse a segment of one route
    Relocate = 2,         // move one customer anywhere
    ExchangeBetween = 3,  // swap customers of two routes
    ExchangeWithin = 4,   // swap two customers of one route
    SegmentRelocate = 5,  // move a segment into another route
};

struct TraceRow {
    int epoch = 0;
    double temperature = 0.0;
    double current = 0.0;
    double best = 0.0;
    /// Outcome and kind of the last step of the epoch.
    bool accepted = false;
    MoveKind kind = MoveKind::Mirror;

    int steps = 0;
    int skipped = 0;
    int accepted_moves = 0;
    int worsening = 0;
    int worsening_accepted = 0;
};

struct AnnealTrace {
    std::vector<TraceRow> rows;
};

// Initial construction.
//
// Stage one follows the classic node heuristic: shuffle the customers, cut the
// permutation into routes whenever the next customer would overflow the
// vehicle, then walk each route and, when a customer is served after its
// window closes, send it to the back of the route and pull its successor to
// the front. A route gets at most n repair passes. New permutations are tried
// up to the attempt cap.
//
// If no permutation repairs cleanly, stage two inserts customers one at a
// time at their cheapest feasible position over all routes.
struct InitialSolution {
    Solution solution;
    bool feasible = false;
    int permutations = 0;
    bool by_insertion = false;
};

InitialSolution initial_solution(const Instance& inst, Rng& rng, const SAConfig& cfg);
InitialSolution initial_solution(const Instance& inst, std::uint64_t seed);

// Move primitives. Positions are visit indices, so customers sit at 1..size-2.
// None of them touches speed levels.

void mirror_segment(Route& route, std::size_t first, std::size_t last);
void exchange_within(Route& route, std::size_t a, std::size_t b);
void exchange_between(Solution& sol, std::size_t route_a, std::size_t pos_a, std::size_t route_b, std::size_t pos_b);
/// Removes the customer at (from_route, from_pos) and inserts it before visit
/// `to_pos` of `to_route`, indices taken after the removal.
void relocate_customer(Solution& sol, std::size_t from_route, std::size_t from_pos, std::size_t to_route,
                       std::size_t to_pos);
/// Moves visits first..last of one route in front of visit `to_pos` of another.
void relocate_segment(Solution& sol, std::size_t from_route, std::size_t first, std::size_t last,
                      std::size_t to_route, std::size_t to_pos);

struct NeighborResult {
    Solution solution;
    MoveKind kind = MoveKind::Mirror;
    /// No kind could be applied; `solution` is the input.
    bool noop = false;
};

/// Random move of the requested kind. A kind that cannot apply (e.g. a swap
/// across routes with only one route) is replaced by another kind; after four
/// failures the input comes back unchanged with `noop` set. Speed levels of
/// touched routes are rederived from their departure brackets.
NeighborResult neighbor(const Instance& inst, const Solution& sol, MoveKind kind, Rng& rng, double depart_time = 0.0,
                        bool allow_segment_relocation = false);

enum class AnnealStatus { Solved, Unsolved };

struct AnnealResult {
    AnnealStatus status = AnnealStatus::Unsolved;
    /// Best feasible solution seen, empty routes removed. For Unsolved it is
    /// the best-effort initial construction.
    Solution solution;
    ObjectiveBreakdown objective;
    AnnealTrace trace;
    double seconds = 0.0;
};

AnnealResult anneal(const Instance& inst, const SAConfig& cfg);

/// CSV with columns epoch,temperature,current,best,accepted,kind.
void write_trace_csv(std::ostream& out, const AnnealTrace& trace);

}  // namespace greenroute
