#include "greenroute/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greenroute {

namespace {

constexpr double kTimeEps = 1e-9;
constexpr double kLoadEps = 1e-9;

std::string describe(const char* what, std::size_t index) {
    std::ostringstream os;
    os << what << " " << index;
    return os.str();
}

}  // namespace

const SpeedLevel& Instance::level(LevelId id) const {
    if (!has_level(id)) {
        throw InputError("unknown speed level " + std::to_string(id));
    }
    return speed_levels[static_cast<std::size_t>(id - 1)];
}

std::optional<LevelId> Instance::level_at(double time) const {
    for (const auto& lvl : speed_levels) {
        if (lvl.contains(time)) return lvl.id;
    }
    return std::nullopt;
}

LevelId Instance::departure_level(double time) const {
    if (auto id = level_at(time)) return *id;
    return time < 0.0 ? speed_levels.front().id : speed_levels.back().id;
}

Matrix euclidean_distances(std::span<const Node> nodes) {
    Matrix d(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (i == j) continue;
            d(i, j) = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
        }
    }
    return d;
}

void validate(const Instance& inst) {
    const std::size_t size = inst.nodes.size();
    if (size < 2) throw InputError("instance needs a start and an end depot");
    for (std::size_t i = 0; i < size; ++i) {
        const Node& node = inst.nodes[i];
        if (node.id != static_cast<NodeId>(i)) throw InputError(describe("node id out of order at index", i));
        if (node.demand < 0.0) throw InputError(describe("negative demand at node", i));
        if (node.service < 0.0) throw InputError(describe("negative service time at node", i));
        if (node.tw_open > node.tw_close) throw InputError(describe("time window closes before it opens at node", i));
    }
    const Node& start = inst.nodes.front();
    const Node& end = inst.nodes.back();
    for (const Node* depot : {&start, &end}) {
        if (depot->demand != 0.0 || depot->service != 0.0) {
            throw InputError(describe("depot must have zero demand and service, node", static_cast<std::size_t>(depot->id)));
        }
    }
    if (start.x != end.x || start.y != end.y) throw InputError("start and end depot coordinates differ");

    if (inst.distances.size() != size) throw InputError("distance matrix size does not match node count");
    if (inst.alpha.size() != size) throw InputError("alpha matrix size does not match node count");
    for (std::size_t i = 0; i < size; ++i) {
        if (inst.distances(i, i) != 0.0) throw InputError(describe("nonzero self distance at node", i));
        for (std::size_t j = 0; j < size; ++j) {
            if (!(inst.distances(i, j) >= 0.0)) throw InputError(describe("negative distance from node", i));
            if (i != j && !(inst.alpha(i, j) > 0.0)) throw InputError(describe("alpha must be positive on edges from node", i));
        }
    }
    const std::size_t last = size - 1;
    for (std::size_t j = 1; j < last; ++j) {
        if (inst.distances(0, j) != inst.distances(last, j) || inst.distances(j, 0) != inst.distances(j, last)) {
            throw InputError(describe("start and end depot distances differ at node", j));
        }
    }
    if (inst.distances(0, last) != 0.0 || inst.distances(last, 0) != 0.0) {
        throw InputError("start and end depot must be zero distance apart");
    }

    if (inst.fleet_size < 1) throw InputError("fleet_size must be at least 1");
    if (!(inst.capacity > 0.0)) throw InputError("capacity must be positive");
    if (!(inst.vehicle_weight > 0.0)) throw InputError("vehicle_weight must be positive");
    if (!(inst.beta > 0.0)) throw InputError("beta must be positive");
    if (inst.fuel_cost < 0.0 || inst.emission_cost < 0.0) throw InputError("costs must be nonnegative");

    if (inst.speed_levels.empty()) throw InputError("at least one speed level is required");
    double expected_start = 0.0;
    for (std::size_t r = 0; r < inst.speed_levels.size(); ++r) {
        const SpeedLevel& lvl = inst.speed_levels[r];
        if (lvl.id != static_cast<LevelId>(r + 1)) throw InputError(describe("speed level ids must run 1..r, index", r));
        if (!(lvl.lower > 0.0 && lvl.lower <= lvl.avg && lvl.avg <= lvl.upper)) {
            throw InputError(describe("speed level needs 0 < lower <= avg <= upper, level", r + 1));
        }
        if (!(lvl.bracket_start < lvl.bracket_end)) throw InputError(describe("empty time bracket on level", r + 1));
        if (lvl.bracket_start != expected_start) {
            throw InputError(describe("speed brackets must partition the horizon without gaps, level", r + 1));
        }
        expected_start = lvl.bracket_end;
    }
}

std::vector<NodeId> customers_of(const Route& route) {
    std::vector<NodeId> out;
    for (std::size_t m = 1; m + 1 < route.size(); ++m) out.push_back(route[m].node);
    return out;
}

Route make_route(const Instance& inst, std::span<const NodeId> customers) {
    Route route;
    route.reserve(customers.size() + 2);
    route.push_back({0, 1});
    for (NodeId c : customers) route.push_back({c, 1});
    route.push_back({inst.end_depot(), 1});
    return route;
}

void canonicalize(Solution& sol) {
    std::erase_if(sol.routes, [](const Route& r) { return r.size() <= 2; });
    std::stable_sort(sol.routes.begin(), sol.routes.end(),
                     [](const Route& a, const Route& b) { return a[1].node < b[1].node; });
}

ObjectiveBreakdown& ObjectiveBreakdown::operator+=(const ObjectiveBreakdown& o) {
    tare_term += o.tare_term;
    payload_term += o.payload_term;
    speed_term += o.speed_term;
    total += o.total;
    fuel_proxy += o.fuel_proxy;
    emission += o.emission;
    return *this;
}

ObjectiveBreakdown edge_cost(const Instance& inst, NodeId i, NodeId j, double load, LevelId level) {
    const auto size = static_cast<NodeId>(inst.nodes.size());
    if (i < 0 || i >= size || j < 0 || j >= size) {
        throw InputError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") references an unknown node");
    }
    const double v = inst.level(level).avg;
    const double d = inst.distances(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    const double a = inst.alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    const double c = inst.unit_cost();

    ObjectiveBreakdown out;
    out.tare_term = c * a * d * inst.vehicle_weight;
    out.payload_term = c * a * load * d;
    out.speed_term = c * d * inst.beta * v * v;
    out.total = out.tare_term + out.payload_term + out.speed_term;
    out.fuel_proxy = a * (inst.vehicle_weight + load) * d + inst.beta * v * v * d;
    out.emission = inst.delta1 * out.fuel_proxy;
    return out;
}

RouteTiming simulate_route(const Instance& inst, const Route& route, double depart_time) {
    RouteTiming t;
    const std::size_t len = route.size();
    if (len == 0) return t;
    t.arrival.resize(len);
    t.service_start.resize(len);
    t.departure.resize(len);
    t.load.assign(len > 0 ? len - 1 : 0, 0.0);
    t.crosses_bracket.assign(len > 0 ? len - 1 : 0, false);

    const Node& first = inst.nodes.at(static_cast<std::size_t>(route[0].node));
    t.arrival[0] = depart_time;
    t.service_start[0] = std::max(depart_time, first.tw_open);
    t.departure[0] = t.service_start[0] + first.service;

    for (std::size_t m = 1; m < len; ++m) {
        const auto from = static_cast<std::size_t>(route[m - 1].node);
        const auto to = static_cast<std::size_t>(route[m].node);
        const Node& node = inst.nodes.at(to);
        const double travel = inst.distances(from, to) / inst.level(route[m].speed_level).avg;
        t.arrival[m] = t.departure[m - 1] + travel;
        t.service_start[m] = std::max(t.arrival[m], node.tw_open);
        t.departure[m] = t.service_start[m] + node.service;
        t.crosses_bracket[m - 1] = inst.level_at(t.departure[m - 1]) != inst.level_at(t.arrival[m]);
    }

    double downstream = 0.0;
    for (std::size_t e = len - 1; e-- > 0;) {
        downstream += inst.nodes.at(static_cast<std::size_t>(route[e + 1].node)).demand;
        t.load[e] = downstream;
    }
    return t;
}

void assign_speed_levels(const Instance& inst, Route& route, double depart_time) {
    if (route.empty()) return;
    const Node& first = inst.nodes.at(static_cast<std::size_t>(route[0].node));
    double departure = std::max(depart_time, first.tw_open) + first.service;
    for (std::size_t m = 1; m < route.size(); ++m) {
        const LevelId level = inst.departure_level(departure);
        route[m].speed_level = level;
        const auto from = static_cast<std::size_t>(route[m - 1].node);
        const auto to = static_cast<std::size_t>(route[m].node);
        const Node& node = inst.nodes.at(to);
        const double arrival = departure + inst.distances(from, to) / inst.level(level).avg;
        departure = std::max(arrival, node.tw_open) + node.service;
    }
    route[0].speed_level = route.size() > 1 ? route[1].speed_level : inst.departure_level(departure);
}

void assign_speed_levels(const Instance& inst, Solution& sol, double depart_time) {
    for (auto& route : sol.routes) assign_speed_levels(inst, route, depart_time);
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Structure: return "structure";
        case ViolationKind::FleetSize: return "fleet-size";
        case ViolationKind::Assignment: return "assignment";
        case ViolationKind::Capacity: return "capacity";
        case ViolationKind::TimeWindow: return "time-window";
        case ViolationKind::Timing: return "timing";
        case ViolationKind::FlowBalance: return "flow-balance";
        case ViolationKind::LoadBound: return "load-bound";
        case ViolationKind::SpeedLevel: return "speed-level";
    }
    return "unknown";
}

std::size_t ViolationReport::count(ViolationKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

// Node and level ids all in range; the rest of the checks need this.
bool ids_valid(const Instance& inst, const Route& route) {
    const auto size = static_cast<NodeId>(inst.nodes.size());
    for (std::size_t m = 0; m < route.size(); ++m) {
        if (route[m].node < 0 || route[m].node >= size) return false;
        if (m > 0 && !inst.has_level(route[m].speed_level)) return false;
    }
    return true;
}

void check_structure(const Instance& inst, const Route& route, int r, ViolationReport& report) {
    auto add = [&](NodeId node, std::string detail) {
        report.violations.push_back({ViolationKind::Structure, r, node, 1.0, std::move(detail)});
    };
    if (route.size() < 2) {
        add(-1, "route has fewer than two visits");
        return;
    }
    const auto size = static_cast<NodeId>(inst.nodes.size());
    for (std::size_t m = 0; m < route.size(); ++m) {
        const Visit& v = route[m];
        if (v.node < 0 || v.node >= size) {
            add(v.node, "unknown node id at position " + std::to_string(m));
        } else if (m > 0 && !inst.has_level(v.speed_level)) {
            add(v.node, "unknown speed level " + std::to_string(v.speed_level) + " at position " + std::to_string(m));
        }
    }
    if (route.front().node != 0) add(route.front().node, "route does not start at the start depot");
    if (route.back().node != inst.end_depot()) add(route.back().node, "route does not end at the end depot");
    for (std::size_t m = 1; m + 1 < route.size(); ++m) {
        if (route[m].node == 0 || route[m].node == inst.end_depot()) {
            add(route[m].node, "depot visited mid-route at position " + std::to_string(m));
        }
    }
}

}  // namespace

ViolationReport check_schedule(const Instance& inst, const Solution& sol, std::span<const RouteTiming> schedule,
                               double depart_time) {
    ViolationReport report;
    auto add = [&](ViolationKind kind, int r, NodeId node, double excess, std::string detail) {
        report.violations.push_back({kind, r, node, excess, std::move(detail)});
    };

    const int route_count = static_cast<int>(sol.routes.size());
    if (route_count > inst.fleet_size) {
        add(ViolationKind::FleetSize, -1, -1, route_count - inst.fleet_size,
            std::to_string(route_count) + " routes for " + std::to_string(inst.fleet_size) + " vehicles");
    }

    std::vector<int> served(inst.nodes.size(), 0);
    for (int r = 0; r < route_count; ++r) {
        const Route& route = sol.routes[static_cast<std::size_t>(r)];
        check_structure(inst, route, r, report);
        if (!ids_valid(inst, route)) continue;

        double demand = 0.0;
        for (std::size_t m = 1; m + 1 < route.size(); ++m) {
            const NodeId c = route[m].node;
            if (inst.is_customer(c)) {
                ++served[static_cast<std::size_t>(c)];
                demand += inst.nodes[static_cast<std::size_t>(c)].demand;
            }
        }
        if (demand > inst.capacity + kLoadEps) {
            add(ViolationKind::Capacity, r, -1, demand - inst.capacity, "route demand exceeds capacity");
        }

        if (static_cast<std::size_t>(r) >= schedule.size()) continue;
        const RouteTiming& t = schedule[static_cast<std::size_t>(r)];
        if (route.size() < 2) continue;
        if (t.service_start.size() != route.size() || t.load.size() != route.size() - 1) {
            add(ViolationKind::Structure, r, -1, 1.0, "schedule does not match route length");
            continue;
        }

        for (std::size_t m = 0; m < route.size(); ++m) {
            const Node& node = inst.nodes[static_cast<std::size_t>(route[m].node)];
            const double y = t.service_start[m];
            if (y < node.tw_open - kTimeEps) {
                add(ViolationKind::TimeWindow, r, node.id, node.tw_open - y, "service starts before the window opens");
            } else if (y > node.tw_close + kTimeEps) {
                add(ViolationKind::TimeWindow, r, node.id, y - node.tw_close, "service starts after the window closes");
            }
        }

        if (t.service_start[0] < depart_time - kTimeEps) {
            add(ViolationKind::Timing, r, route[0].node, depart_time - t.service_start[0],
                "vehicle leaves before the planned departure");
        }
        // Demand still on board after each edge; an over-capacity route carrying
        // exactly this is already reported as Capacity.
        std::vector<double> downstream(route.size() - 1, 0.0);
        for (std::size_t e = route.size() - 1; e-- > 0;) {
            const double q = inst.nodes[static_cast<std::size_t>(route[e + 1].node)].demand;
            downstream[e] = q + (e + 1 < downstream.size() ? downstream[e + 1] : 0.0);
        }
        const bool over_capacity = demand > inst.capacity + kLoadEps;

        for (std::size_t e = 0; e + 1 < route.size(); ++e) {
            const Node& from = inst.nodes[static_cast<std::size_t>(route[e].node)];
            const Node& to = inst.nodes[static_cast<std::size_t>(route[e + 1].node)];
            const LevelId level = route[e + 1].speed_level;
            const double departure = t.service_start[e] + from.service;
            const double travel =
                inst.distances(static_cast<std::size_t>(from.id), static_cast<std::size_t>(to.id)) / inst.level(level).avg;
            const double earliest = departure + travel;
            if (t.service_start[e + 1] < earliest - kTimeEps) {
                add(ViolationKind::Timing, r, to.id, earliest - t.service_start[e + 1],
                    "service starts before the vehicle can arrive");
            }

            const double f = t.load[e];
            if (f < to.demand - kLoadEps) {
                add(ViolationKind::LoadBound, r, to.id, to.demand - f, "edge load below the demand it must deliver");
            } else if (f > inst.capacity - from.demand + kLoadEps &&
                       !(over_capacity && f <= downstream[e] + kLoadEps)) {
                add(ViolationKind::LoadBound, r, to.id, f - (inst.capacity - from.demand), "edge load above q_max - q_i");
            }

            const auto expected = inst.level_at(departure);
            if (!expected) {
                const double outside = departure < 0.0 ? -departure : departure - inst.horizon();
                add(ViolationKind::SpeedLevel, r, to.id, outside, "departure falls outside every speed bracket");
            } else if (*expected != level) {
                const SpeedLevel& used = inst.level(level);
                const double gap = departure < used.bracket_start ? used.bracket_start - departure
                                                                  : departure - used.bracket_end;
                add(ViolationKind::SpeedLevel, r, to.id, std::max(gap, 0.0),
                    "level " + std::to_string(level) + " used but departure is in level " + std::to_string(*expected));
            }
            if (inst.level_at(departure) != inst.level_at(earliest)) {
                report.diagnostics.push_back("route " + std::to_string(r) + " edge " + std::to_string(from.id) + "->" +
                                             std::to_string(to.id) + " arrives in a different speed bracket");
            }
        }

        for (std::size_t m = 1; m + 1 < route.size(); ++m) {
            const Node& node = inst.nodes[static_cast<std::size_t>(route[m].node)];
            if (!inst.is_customer(node.id)) continue;
            const double delivered = t.load[m - 1] - t.load[m];
            if (std::abs(delivered - node.demand) > kLoadEps) {
                add(ViolationKind::FlowBalance, r, node.id, std::abs(delivered - node.demand),
                    "load dropped differs from demand");
            }
        }
    }

    for (NodeId c = 1; c < inst.end_depot(); ++c) {
        const int n = served[static_cast<std::size_t>(c)];
        if (n == 0) {
            add(ViolationKind::Assignment, -1, c, 1.0, "customer not served");
        } else if (n > 1) {
            add(ViolationKind::Assignment, -1, c, n - 1, "customer served " + std::to_string(n) + " times");
        }
    }
    return report;
}

ViolationReport check_feasibility(const Instance& inst, const Solution& sol, double depart_time) {
    std::vector<RouteTiming> schedule;
    schedule.reserve(sol.routes.size());
    for (const Route& route : sol.routes) {
        schedule.push_back(ids_valid(inst, route) ? simulate_route(inst, route, depart_time) : RouteTiming{});
    }
    return check_schedule(inst, sol, schedule, depart_time);
}

bool route_feasible(const Instance& inst, const Route& route, double depart_time) {
    const NodeId end = inst.end_depot();
    if (route.size() < 2 || route.front().node != 0 || route.back().node != end) return false;
    const Node& start = inst.nodes[0];
    double service_start = std::max(depart_time, start.tw_open);
    if (service_start > start.tw_close + kTimeEps) return false;
    double departure = service_start + start.service;
    double demand = 0.0;
    for (std::size_t m = 1; m < route.size(); ++m) {
        const NodeId id = route[m].node;
        if (m + 1 < route.size() && !inst.is_customer(id)) return false;
        const auto expected = inst.level_at(departure);
        if (!expected || *expected != route[m].speed_level) return false;
        const Node& node = inst.nodes[static_cast<std::size_t>(id)];
        demand += node.demand;
        const double travel = inst.distances(static_cast<std::size_t>(route[m - 1].node), static_cast<std::size_t>(id)) /
                              inst.speed_levels[static_cast<std::size_t>(*expected - 1)].avg;
        service_start = std::max(departure + travel, node.tw_open);
        if (service_start > node.tw_close + kTimeEps) return false;
        departure = service_start + node.service;
    }
    return demand <= inst.capacity + kLoadEps;
}

bool is_feasible(const Instance& inst, const Solution& sol, double depart_time) {
    if (static_cast<int>(sol.routes.size()) > inst.fleet_size) return false;
    std::vector<char> seen(inst.nodes.size(), 0);
    std::size_t served = 0;
    for (const Route& route : sol.routes) {
        if (!route_feasible(inst, route, depart_time)) return false;
        for (std::size_t m = 1; m + 1 < route.size(); ++m) {
            auto& flag = seen[static_cast<std::size_t>(route[m].node)];
            if (flag) return false;
            flag = 1;
            ++served;
        }
    }
    return served == static_cast<std::size_t>(inst.customers());
}

ObjectiveBreakdown evaluate_route(const Instance& inst, const Route& route, double depart_time) {
    ObjectiveBreakdown out;
    if (route.size() < 2) return out;
    if (!ids_valid(inst, route)) throw InputError("route references an unknown node or speed level");
    const RouteTiming t = simulate_route(inst, route, depart_time);
    bool serves_customer = false;
    for (std::size_t e = 0; e + 1 < route.size(); ++e) {
        out += edge_cost(inst, route[e].node, route[e + 1].node, t.load[e], route[e + 1].speed_level);
        serves_customer = serves_customer || inst.is_customer(route[e + 1].node);
    }
    if (serves_customer) out.emission += inst.delta2;
    return out;
}

ObjectiveBreakdown evaluate(const Instance& inst, const Solution& sol, double depart_time) {
    ObjectiveBreakdown out;
    for (const Route& route : sol.routes) out += evaluate_route(inst, route, depart_time);
    return out;
}

}  // namespace greenroute
