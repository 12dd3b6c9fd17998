#include "greenroute/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

namespace greenroute {

const char* to_string(ExactStatus status) {
    switch (status) {
        case ExactStatus::Optimal: return "optimal";
        case ExactStatus::Incumbent: return "incumbent";
        case ExactStatus::Infeasible: return "infeasible";
        case ExactStatus::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

constexpr double kEps = 1e-9;

class Search {
 public:
    Search(const Instance& inst, double budget, double depart_time)
        : inst_(inst),
          n_(inst.customers()),
          end_(inst.end_depot()),
          unit_(inst.unit_cost()),
          depart_time_(depart_time),
          deadline_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                             std::chrono::duration<double>(budget))),
          visited_(static_cast<std::size_t>(n_) + 2, false) {
        double v_min = std::numeric_limits<double>::infinity();
        for (const auto& l : inst.speed_levels) v_min = std::min(v_min, l.avg);
        speed_floor_ = inst.beta * v_min * v_min;

        // Cheapest way any edge can enter each customer.
        min_in_.assign(static_cast<std::size_t>(n_) + 2, 0.0);
        for (NodeId j = 1; j <= n_; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (NodeId i = 0; i <= n_; ++i) {
                if (i == j) continue;
                best = std::min(best, unit_ * d(i, j) * (a(i, j) * (inst.vehicle_weight + q(j)) + speed_floor_));
            }
            min_in_[static_cast<std::size_t>(j)] = best;
            remaining_bound_ += best;
            min_return_ = std::min(min_return_, unit_ * d(j, end_) * (a(j, end_) * inst.vehicle_weight + speed_floor_));
        }
    }

    ExactResult run() {
        const auto started = std::chrono::steady_clock::now();
        const double y0 = std::max(depart_time_, inst_.nodes[0].tw_open);
        if (n_ == 0) {
            best_cost_ = 0.0;
            best_.clear();
        } else if (y0 <= inst_.nodes[0].tw_close + kEps) {
            open_route(0);
        }

        ExactResult out;
        out.nodes_explored = nodes_;
        out.proven = !aborted_;
        if (std::isfinite(best_cost_)) {
            for (const auto& group : best_) {
                Route route = make_route(inst_, group);
                assign_speed_levels(inst_, route, depart_time_);
                out.solution.routes.push_back(std::move(route));
            }
            canonicalize(out.solution);
            out.optimum = evaluate(inst_, out.solution, depart_time_);
            out.status = aborted_ ? ExactStatus::Incumbent : ExactStatus::Optimal;
        } else {
            out.status = aborted_ ? ExactStatus::Unknown : ExactStatus::Infeasible;
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return out;
    }

 private:
    struct OpenRoute {
        NodeId last = 0;
        double departure = 0.0;
        double demand = 0.0;
        double cost = 0.0;           // edges so far with the loads known so far
        double payload_weight = 0.0; // sum of alpha * d over edges so far
    };

    double d(NodeId i, NodeId j) const { return inst_.distances(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    double a(NodeId i, NodeId j) const { return inst_.alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
    double q(NodeId i) const { return inst_.nodes[static_cast<std::size_t>(i)].demand; }

    bool tick() {
        ++nodes_;
        if ((nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) aborted_ = true;
        return !aborted_;
    }

    bool prune(double bound) const { return bound > best_cost_ + kEps * std::abs(best_cost_); }

    // Starts a new route whose first customer id must exceed `min_first`.
    void open_route(NodeId min_first) {
        const Node& depot = inst_.nodes[0];
        OpenRoute start;
        start.departure = std::max(depart_time_, depot.tw_open) + depot.service;
        groups_.emplace_back();
        for (NodeId c = min_first + 1; c <= n_ && !aborted_; ++c) {
            if (!visited_[static_cast<std::size_t>(c)]) extend(start, c);
        }
        groups_.pop_back();
    }

    void extend(const OpenRoute& route, NodeId c) {
        if (!tick()) return;
        const Node& node = inst_.nodes[static_cast<std::size_t>(c)];
        if (route.demand + node.demand > inst_.capacity + kEps) return;
        const auto level = inst_.level_at(route.departure);
        if (!level) return;
        const double v = inst_.level(*level).avg;
        const double arrival = route.departure + d(route.last, c) / v;
        const double start = std::max(arrival, node.tw_open);
        if (start > node.tw_close + kEps) return;

        OpenRoute next;
        next.last = c;
        next.departure = start + node.service;
        next.demand = route.demand + node.demand;
        const double ad = a(route.last, c) * d(route.last, c);
        next.payload_weight = route.payload_weight + ad;
        next.cost = route.cost + unit_ * (ad * inst_.vehicle_weight + d(route.last, c) * inst_.beta * v * v) +
                    unit_ * node.demand * next.payload_weight;

        const double remaining = remaining_bound_ - min_in_[static_cast<std::size_t>(c)];
        if (prune(committed_ + next.cost + min_return_ + remaining)) return;

        visited_[static_cast<std::size_t>(c)] = true;
        remaining_bound_ = remaining;
        ++served_;
        groups_.back().push_back(c);

        for (NodeId j = 1; j <= n_ && !aborted_; ++j) {
            if (!visited_[static_cast<std::size_t>(j)]) extend(next, j);
        }
        if (!aborted_) close(next);

        groups_.back().pop_back();
        --served_;
        remaining_bound_ += min_in_[static_cast<std::size_t>(c)];
        visited_[static_cast<std::size_t>(c)] = false;
    }

    void close(const OpenRoute& route) {
        if (!tick()) return;
        const auto level = inst_.level_at(route.departure);
        if (!level) return;
        const double v = inst_.level(*level).avg;
        const double arrival = route.departure + d(route.last, end_) / v;
        if (std::max(arrival, inst_.nodes[static_cast<std::size_t>(end_)].tw_open) >
            inst_.nodes[static_cast<std::size_t>(end_)].tw_close + kEps) {
            return;
        }
        const double cost = route.cost + unit_ * (a(route.last, end_) * d(route.last, end_) * inst_.vehicle_weight +
                                                  d(route.last, end_) * inst_.beta * v * v);
        if (prune(committed_ + cost + remaining_bound_)) return;

        if (served_ == n_) {
            record_leaf();
            return;
        }
        if (static_cast<int>(groups_.size()) >= inst_.fleet_size) return;
        committed_ += cost;
        open_route(groups_.back().front());
        committed_ -= cost;
    }

    void record_leaf() {
        Solution sol;
        for (const auto& group : groups_) {
            Route route = make_route(inst_, group);
            assign_speed_levels(inst_, route, depart_time_);
            sol.routes.push_back(std::move(route));
        }
        const double total = evaluate(inst_, sol, depart_time_).total;
        if (total < best_cost_) {
            best_cost_ = total;
            best_ = groups_;
        }
    }

    const Instance& inst_;
    const int n_;
    const NodeId end_;
    const double unit_;
    const double depart_time_;
    const std::chrono::steady_clock::time_point deadline_;

    double speed_floor_ = 0.0;
    std::vector<double> min_in_;
    double remaining_bound_ = 0.0;
    // Cheapest possible return edge of the open route.
    double min_return_ = std::numeric_limits<double>::infinity();

    std::vector<bool> visited_;
    std::vector<std::vector<NodeId>> groups_;
    int served_ = 0;
    double committed_ = 0.0;

    double best_cost_ = std::numeric_limits<double>::infinity();
    std::vector<std::vector<NodeId>> best_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

ExactResult solve_exact(const Instance& inst, double time_budget_seconds, double depart_time) {
    return Search(inst, time_budget_seconds, depart_time).run();
}

}  // namespace greenroute
