#pragma once

#include <algorithm>
#include <vector>

#include "greenroute/model.hpp"

namespace greenroute::testing {

struct Site {
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double service = 0.0;
    double open = 0.0;
    double close = 1e6;
};

/// Depot at the origin, customers as given, Euclidean distances, one level of
/// 60 km/h over [0, 1e6) unless `levels` is supplied.
inline Instance make_instance(const std::vector<Site>& customers, int fleet = 1, double capacity = 10.0,
                              std::vector<SpeedLevel> levels = {}) {
    Instance inst;
    const std::size_t size = customers.size() + 2;
    inst.nodes.push_back({0, 0.0, 0.0, 0.0, 0.0, 0.0, 1e6});
    for (std::size_t c = 0; c < customers.size(); ++c) {
        const Site& s = customers[c];
        inst.nodes.push_back({static_cast<NodeId>(c + 1), s.x, s.y, s.demand, s.service, s.open, s.close});
    }
    inst.nodes.push_back({static_cast<NodeId>(size - 1), 0.0, 0.0, 0.0, 0.0, 0.0, 1e6});
    inst.distances = euclidean_distances(inst.nodes);
    inst.alpha = Matrix(size, 1.0);
    inst.fleet_size = fleet;
    inst.vehicle_weight = 10.0;
    inst.capacity = capacity;
    inst.fuel_cost = 1.0;
    inst.emission_cost = 0.0;
    inst.beta = 0.01;
    inst.speed_levels = levels.empty() ? std::vector<SpeedLevel>{{1, 50.0, 60.0, 70.0, 0.0, 1e6}} : std::move(levels);
    validate(inst);
    return inst;
}

/// One customer 100 km out and back, alpha 0.001, beta 0.0001, w 10,
/// demand 5, 60 km/h, unit cost 1.
inline Instance hand_instance() {
    Instance inst;
    inst.nodes = {
        {0, 0.0, 0.0, 0.0, 0.0, 0.0, 100.0},
        {1, 100.0, 0.0, 5.0, 0.0, 0.0, 100.0},
        {2, 0.0, 0.0, 0.0, 0.0, 0.0, 100.0},
    };
    inst.distances = Matrix(3);
    inst.distances(0, 1) = inst.distances(1, 0) = 100.0;
    inst.distances(1, 2) = inst.distances(2, 1) = 100.0;
    inst.alpha = Matrix(3, 0.001);
    inst.fleet_size = 1;
    inst.vehicle_weight = 10.0;
    inst.capacity = 10.0;
    inst.fuel_cost = 1.0;
    inst.emission_cost = 0.0;
    inst.beta = 0.0001;
    inst.speed_levels = {{1, 50.0, 60.0, 70.0, 0.0, 100.0}};
    validate(inst);
    return inst;
}

/// Route over `customers` with levels from the departure brackets.
inline Route timed_route(const Instance& inst, std::vector<NodeId> customers, double depart = 0.0) {
    Route r = make_route(inst, customers);
    assign_speed_levels(inst, r, depart);
    return r;
}

inline Solution timed_solution(const Instance& inst, const std::vector<std::vector<NodeId>>& groups) {
    Solution sol;
    for (const auto& g : groups) sol.routes.push_back(timed_route(inst, g));
    return sol;
}

inline std::vector<NodeId> sorted_customers(const Solution& sol) {
    std::vector<NodeId> all;
    for (const auto& r : sol.routes) {
        for (NodeId c : customers_of(r)) all.push_back(c);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace greenroute::testing
