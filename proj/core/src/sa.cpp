#include "greenroute/sa.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace greenroute {

void SAConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid annealing config: ") + what);
    };
    require(t_final > 0.0 && t_final < t_initial, "need 0 < t_final < t_initial");
    require(cooling > 0.0 && cooling < 1.0, "need 0 < cooling < 1");
    require(!attempts_cap || *attempts_cap >= 1, "attempts_cap must be at least 1");
    require(!moves_per_temp || *moves_per_temp >= 1, "moves_per_temp must be at least 1");
}

namespace {

constexpr double kEps = 1e-9;

Route build_route(const Instance& inst, const std::vector<NodeId>& customers, double depart_time) {
    Route route = make_route(inst, customers);
    assign_speed_levels(inst, route, depart_time);
    return route;
}

// Classic repair: a late customer goes to the back, its successor to the front.
bool repair_route(const Instance& inst, std::vector<NodeId>& customers, double depart_time) {
    const int passes = std::max(inst.customers(), 1);
    for (int pass = 0; pass <= passes; ++pass) {
        const Route route = build_route(inst, customers, depart_time);
        const RouteTiming t = simulate_route(inst, route, depart_time);
        std::size_t late = 0;
        for (std::size_t m = 1; m + 1 < route.size(); ++m) {
            if (t.service_start[m] > inst.nodes[static_cast<std::size_t>(route[m].node)].tw_close + kEps) {
                late = m;
                break;
            }
        }
        if (late == 0) return route_feasible(inst, route, depart_time);
        if (pass == passes) break;

        const std::size_t idx = late - 1;
        const NodeId moved = customers[idx];
        const bool has_successor = idx + 1 < customers.size();
        customers.erase(customers.begin() + static_cast<std::ptrdiff_t>(idx));
        customers.push_back(moved);
        if (has_successor) {
            const NodeId successor = customers[idx];
            customers.erase(customers.begin() + static_cast<std::ptrdiff_t>(idx));
            customers.insert(customers.begin(), successor);
        }
    }
    return false;
}

Solution assemble(const Instance& inst, const std::vector<std::vector<NodeId>>& groups, double depart_time) {
    Solution sol;
    for (const auto& g : groups) sol.routes.push_back(build_route(inst, g, depart_time));
    return sol;
}

std::optional<Solution> construct_by_repair(const Instance& inst, const std::vector<NodeId>& order, double depart_time) {
    std::vector<std::vector<NodeId>> groups;
    double load = 0.0;
    for (NodeId c : order) {
        const double q = inst.nodes[static_cast<std::size_t>(c)].demand;
        if (groups.empty() || load + q > inst.capacity + kEps) {
            groups.emplace_back();
            load = 0.0;
        }
        groups.back().push_back(c);
        load += q;
    }
    if (static_cast<int>(groups.size()) > inst.fleet_size) return std::nullopt;
    bool ok = true;
    for (auto& g : groups) ok = repair_route(inst, g, depart_time) && ok;
    Solution sol = assemble(inst, groups, depart_time);
    if (!ok) return std::nullopt;
    return sol;
}

std::optional<Solution> construct_by_insertion(const Instance& inst, const std::vector<NodeId>& order,
                                               double depart_time) {
    std::vector<std::vector<NodeId>> groups;
    std::vector<double> costs;
    for (NodeId c : order) {
        double best_delta = std::numeric_limits<double>::infinity();
        std::size_t best_group = 0;
        std::size_t best_pos = 0;
        const std::size_t options = groups.size() + (static_cast<int>(groups.size()) < inst.fleet_size ? 1 : 0);
        for (std::size_t g = 0; g < options; ++g) {
            const bool fresh = g == groups.size();
            const std::vector<NodeId> base = fresh ? std::vector<NodeId>{} : groups[g];
            const double base_cost = fresh ? 0.0 : costs[g];
            for (std::size_t pos = 0; pos <= base.size(); ++pos) {
                std::vector<NodeId> trial = base;
                trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), c);
                const Route route = build_route(inst, trial, depart_time);
                if (!route_feasible(inst, route, depart_time)) continue;
                const double delta = evaluate_route(inst, route, depart_time).total - base_cost;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_group = g;
                    best_pos = pos;
                }
            }
        }
        if (!std::isfinite(best_delta)) return std::nullopt;
        if (best_group == groups.size()) {
            groups.emplace_back();
            costs.push_back(0.0);
        }
        auto& g = groups[best_group];
        g.insert(g.begin() + static_cast<std::ptrdiff_t>(best_pos), c);
        costs[best_group] = evaluate_route(inst, build_route(inst, g, depart_time), depart_time).total;
    }
    return assemble(inst, groups, depart_time);
}

}  // namespace

InitialSolution initial_solution(const Instance& inst, Rng& rng, const SAConfig& cfg) {
    const int n = inst.customers();
    const int cap = cfg.attempts_for(inst);
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);

    InitialSolution out;
    for (int attempt = 0; attempt < cap; ++attempt) {
        ++out.permutations;
        rng.shuffle(std::span<NodeId>(order));
        if (auto sol = construct_by_repair(inst, order, cfg.depart_time); sol && is_feasible(inst, *sol, cfg.depart_time)) {
            out.solution = std::move(*sol);
            out.feasible = true;
            return out;
        }
    }

    // Earliest deadline first, then random orders.
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return inst.nodes[static_cast<std::size_t>(a)].tw_close < inst.nodes[static_cast<std::size_t>(b)].tw_close;
    });
    const int insertion_tries = std::min(cap, 20);
    for (int attempt = 0; attempt < insertion_tries; ++attempt) {
        if (attempt > 0) rng.shuffle(std::span<NodeId>(order));
        if (auto sol = construct_by_insertion(inst, order, cfg.depart_time); sol && is_feasible(inst, *sol, cfg.depart_time)) {
            out.solution = std::move(*sol);
            out.feasible = true;
            out.by_insertion = true;
            return out;
        }
    }

    // Best effort: one route per customer, whatever the fleet allows.
    std::vector<std::vector<NodeId>> singles;
    for (NodeId c = 1; c <= n; ++c) singles.push_back({c});
    out.solution = assemble(inst, singles, cfg.depart_time);
    return out;
}

InitialSolution initial_solution(const Instance& inst, std::uint64_t seed) {
    Rng rng(seed);
    SAConfig cfg;
    cfg.seed = seed;
    return initial_solution(inst, rng, cfg);
}

void mirror_segment(Route& route, std::size_t first, std::size_t last) {
    if (first < 1 || last + 1 >= route.size() || first > last) throw std::out_of_range("mirror_segment: bad positions");
    std::reverse(route.begin() + static_cast<std::ptrdiff_t>(first), route.begin() + static_cast<std::ptrdiff_t>(last) + 1);
}

void exchange_within(Route& route, std::size_t a, std::size_t b) {
    if (a < 1 || b < 1 || a + 1 >= route.size() || b + 1 >= route.size()) {
        throw std::out_of_range("exchange_within: bad positions");
    }
    std::swap(route[a], route[b]);
}

void exchange_between(Solution& sol, std::size_t route_a, std::size_t pos_a, std::size_t route_b, std::size_t pos_b) {
    Route& a = sol.routes.at(route_a);
    Route& b = sol.routes.at(route_b);
    if (pos_a < 1 || pos_a + 1 >= a.size() || pos_b < 1 || pos_b + 1 >= b.size()) {
        throw std::out_of_range("exchange_between: bad positions");
    }
    std::swap(a[pos_a], b[pos_b]);
}

void relocate_customer(Solution& sol, std::size_t from_route, std::size_t from_pos, std::size_t to_route,
                       std::size_t to_pos) {
    relocate_segment(sol, from_route, from_pos, from_pos, to_route, to_pos);
}

void relocate_segment(Solution& sol, std::size_t from_route, std::size_t first, std::size_t last, std::size_t to_route,
                      std::size_t to_pos) {
    Route& from = sol.routes.at(from_route);
    if (first < 1 || first > last || last + 1 >= from.size()) throw std::out_of_range("relocate: bad source positions");
    const auto b = from.begin() + static_cast<std::ptrdiff_t>(first);
    const auto e = from.begin() + static_cast<std::ptrdiff_t>(last) + 1;
    std::vector<Visit> moved(b, e);
    from.erase(b, e);
    Route& to = sol.routes.at(to_route);
    if (to_pos < 1 || to_pos >= to.size()) throw std::out_of_range("relocate: bad target position");
    to.insert(to.begin() + static_cast<std::ptrdiff_t>(to_pos), moved.begin(), moved.end());
}

namespace {

std::size_t customer_count(const Route& r) { return r.size() >= 2 ? r.size() - 2 : 0; }

std::vector<std::size_t> routes_with_at_least(const Solution& sol, std::size_t k) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        if (customer_count(sol.routes[r]) >= k) out.push_back(r);
    }
    return out;
}

// Two distinct customer positions of a route, ordered.
std::pair<std::size_t, std::size_t> two_positions(const Route& route, Rng& rng) {
    const std::size_t count = customer_count(route);
    std::size_t a = 1 + rng.index(count);
    std::size_t b = 1 + rng.index(count - 1);
    if (b >= a) ++b;
    return {std::min(a, b), std::max(a, b)};
}

bool apply_move(MoveKind kind, Solution& sol, Rng& rng, std::vector<std::size_t>& touched) {
    switch (kind) {
        case MoveKind::Mirror:
        case MoveKind::ExchangeWithin: {
            const auto eligible = routes_with_at_least(sol, 2);
            if (eligible.empty()) return false;
            const std::size_t r = eligible[rng.index(eligible.size())];
            const auto [a, b] = two_positions(sol.routes[r], rng);
            if (kind == MoveKind::Mirror) {
                mirror_segment(sol.routes[r], a, b);
            } else {
                exchange_within(sol.routes[r], a, b);
            }
            touched = {r};
            return true;
        }
        case MoveKind::ExchangeBetween: {
            const auto eligible = routes_with_at_least(sol, 1);
            if (eligible.size() < 2) return false;
            const std::size_t i = rng.index(eligible.size());
            std::size_t j = rng.index(eligible.size() - 1);
            if (j >= i) ++j;
            const std::size_t ra = eligible[i];
            const std::size_t rb = eligible[j];
            exchange_between(sol, ra, 1 + rng.index(customer_count(sol.routes[ra])), rb,
                             1 + rng.index(customer_count(sol.routes[rb])));
            touched = {ra, rb};
            return true;
        }
        case MoveKind::Relocate: {
            std::size_t total = 0;
            for (const Route& r : sol.routes) total += customer_count(r);
            if (total == 0) return false;
            // Insertion slots after removing one customer: one per visit gap.
            std::size_t slots = 0;
            for (const Route& r : sol.routes) slots += r.size() - 1;
            slots -= 1;
            if (slots <= 1) return false;

            std::size_t pick = rng.index(total);
            std::size_t from = 0;
            while (pick >= customer_count(sol.routes[from])) pick -= customer_count(sol.routes[from++]);
            const std::size_t from_pos = pick + 1;

            std::size_t slot = rng.index(slots - 1);
            std::size_t to = 0;
            std::size_t to_pos = 0;
            for (std::size_t r = 0; r < sol.routes.size(); ++r) {
                const std::size_t gaps = sol.routes[r].size() - 1 - (r == from ? 1 : 0);
                for (std::size_t p = 1; p <= gaps; ++p) {
                    if (r == from && p == from_pos) continue;
                    if (slot-- == 0) {
                        to = r;
                        to_pos = p;
                        r = sol.routes.size();
                        break;
                    }
                }
            }
            relocate_customer(sol, from, from_pos, to, to_pos);
            touched = {from};
            if (to != from) touched.push_back(to);
            return true;
        }
        case MoveKind::SegmentRelocate: {
            const auto sources = routes_with_at_least(sol, 1);
            if (sources.empty() || sol.routes.size() < 2) return false;
            const std::size_t from = sources[rng.index(sources.size())];
            const std::size_t count = customer_count(sol.routes[from]);
            std::size_t first = 1 + rng.index(count);
            std::size_t last = 1 + rng.index(count);
            if (first > last) std::swap(first, last);
            std::size_t to = rng.index(sol.routes.size() - 1);
            if (to >= from) ++to;
            const std::size_t to_pos = 1 + rng.index(sol.routes[to].size() - 1);
            relocate_segment(sol, from, first, last, to, to_pos);
            touched = {from, to};
            return true;
        }
    }
    return false;
}

}  // namespace

NeighborResult neighbor(const Instance& inst, const Solution& sol, MoveKind kind, Rng& rng, double depart_time,
                        bool allow_segment_relocation) {
    std::vector<MoveKind> pool = {MoveKind::Mirror, MoveKind::Relocate, MoveKind::ExchangeBetween,
                                  MoveKind::ExchangeWithin};
    if (allow_segment_relocation) pool.push_back(MoveKind::SegmentRelocate);

    MoveKind current = kind;
    for (int failure = 0; failure < 4; ++failure) {
        NeighborResult out{sol, current, false};
        std::vector<std::size_t> touched;
        if (apply_move(current, out.solution, rng, touched)) {
            for (std::size_t r : touched) assign_speed_levels(inst, out.solution.routes[r], depart_time);
            return out;
        }
        std::erase(pool, current);
        if (pool.empty()) break;
        current = pool[rng.index(pool.size())];
    }
    return {sol, kind, true};
}

AnnealResult anneal(const Instance& inst, const SAConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    AnnealResult result;
    Rng rng(cfg.seed);
    InitialSolution init = initial_solution(inst, rng, cfg);
    if (!init.feasible) {
        result.solution = std::move(init.solution);
        result.objective = evaluate(inst, result.solution, cfg.depart_time);
        result.seconds = elapsed();
        return result;
    }

    // Work with one (possibly empty) route per vehicle so moves can open routes.
    Solution current = std::move(init.solution);
    while (static_cast<int>(current.routes.size()) < inst.fleet_size) {
        current.routes.push_back(build_route(inst, {}, cfg.depart_time));
    }
    double current_cost = evaluate(inst, current, cfg.depart_time).total;
    Solution best = current;
    double best_cost = current_cost;

    const int steps = cfg.moves_for(inst);
    const int cap = cfg.attempts_for(inst);
    const int kinds = cfg.segment_relocation ? 5 : 4;

    int epoch = 0;
    for (double temperature = cfg.t_initial; temperature >= cfg.t_final; temperature *= cfg.cooling, ++epoch) {
        TraceRow row;
        row.epoch = epoch;
        row.temperature = temperature;
        for (int step = 0; step < steps; ++step) {
            ++row.steps;
            const auto kind = static_cast<MoveKind>(rng.uniform_int(1, kinds));
            row.kind = kind;
            row.accepted = false;

            std::optional<NeighborResult> candidate;
            for (int attempt = 0; attempt < cap; ++attempt) {
                NeighborResult nb = neighbor(inst, current, kind, rng, cfg.depart_time, cfg.segment_relocation);
                if (nb.noop) continue;
                if (is_feasible(inst, nb.solution, cfg.depart_time)) {
                    candidate = std::move(nb);
                    break;
                }
            }
            if (!candidate) {
                ++row.skipped;
                continue;
            }
            row.kind = candidate->kind;

            const double cost = evaluate(inst, candidate->solution, cfg.depart_time).total;
            const double delta = cost - current_cost;
            bool accept = delta <= 0.0;
            if (!accept) {
                ++row.worsening;
                const double scale = cfg.normalize_delta && current_cost != 0.0 ? std::abs(current_cost) : 1.0;
                accept = rng.unit() < std::exp(-(delta / scale) / temperature);
                if (accept) ++row.worsening_accepted;
            }
            if (!accept) continue;

            ++row.accepted_moves;
            row.accepted = true;
            current = std::move(candidate->solution);
            current_cost = cost;
            if (current_cost < best_cost) {
                best = current;
                best_cost = current_cost;
            }
        }
        row.current = current_cost;
        row.best = best_cost;
        result.trace.rows.push_back(row);
    }

    canonicalize(best);
    result.status = AnnealStatus::Solved;
    result.solution = std::move(best);
    result.objective = evaluate(inst, result.solution, cfg.depart_time);
    result.seconds = elapsed();
    return result;
}

void write_trace_csv(std::ostream& out, const AnnealTrace& trace) {
    out << "epoch,temperature,current,best,accepted,kind\n";
    const auto precision = out.precision(17);
    for (const auto& row : trace.rows) {
        out << row.epoch << ',' << row.temperature << ',' << row.current << ',' << row.best << ','
            << (row.accepted ? 1 : 0) << ',' << static_cast<int>(row.kind) << '\n';
    }
    out.precision(precision);
}

}  // namespace greenroute
