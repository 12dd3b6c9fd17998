#include "greenroute/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "greenroute/rng.hpp"

namespace greenroute {

int GenSpec::default_fleet() const {
    return static_cast<int>(std::ceil(customers * 2.0 / capacity)) + 1;
}

void GenSpec::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid generator spec: ") + what);
    };
    require(customers >= 1, "customers must be at least 1");
    require(area > 0.0, "area must be positive");
    require(demand_min > 0.0 && demand_min <= demand_max, "demand range must be positive and nonempty");
    require(demand_max <= capacity, "demand_max must fit in one vehicle");
    require(window_min > 0.0 && window_min <= window_max, "window range must be positive and nonempty");
    require(service_min > 0.0 && service_min <= service_max, "service range must be positive and nonempty");
    require(bracket_switch > 0.0 && bracket_switch < horizon, "horizon must cover both speed brackets");
    require(window_max + service_max < horizon, "windows must fit inside the horizon");
    require(!fleet_size || *fleet_size >= 1, "fleet_size must be at least 1");
    require(vehicle_weight > 0.0 && capacity > 0.0, "vehicle weight and capacity must be positive");
    require(alpha > 0.0 && beta > 0.0, "alpha and beta must be positive");
    require(day_speed > 10.0 && evening_speed > 10.0, "speeds must exceed 10 km/h");
    require(max_retries >= 1, "max_retries must be at least 1");
}

Instance generate(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const int n = spec.customers;

    Instance inst;
    inst.fleet_size = spec.fleet_size.value_or(spec.default_fleet());
    inst.vehicle_weight = spec.vehicle_weight;
    inst.capacity = spec.capacity;
    inst.fuel_cost = spec.fuel_cost;
    inst.emission_cost = spec.emission_cost;
    inst.beta = spec.beta;
    inst.speed_levels = {
        {1, spec.day_speed - 10.0, spec.day_speed, spec.day_speed, 0.0, spec.bracket_switch},
        {2, spec.evening_speed - 10.0, spec.evening_speed, spec.evening_speed, spec.bracket_switch, spec.horizon},
    };

    const double centre = spec.area / 2.0;
    const double end_close = spec.horizon + spec.area / std::min(spec.day_speed, spec.evening_speed);
    inst.nodes.push_back({0, centre, centre, 0.0, 0.0, 0.0, spec.horizon});
    for (int i = 1; i <= n; ++i) {
        Node node;
        node.id = i;
        node.x = rng.uniform_real(0.0, spec.area);
        node.y = rng.uniform_real(0.0, spec.area);
        node.demand = rng.uniform_real(spec.demand_min, spec.demand_max);
        node.service = rng.uniform_real(spec.service_min, spec.service_max);
        const double reach = std::hypot(node.x - centre, node.y - centre) / spec.day_speed;
        int tries = 0;
        do {
            if (++tries > spec.max_retries) {
                throw GenerationError("could not draw a reachable time window for customer " + std::to_string(i));
            }
            const double width = rng.uniform_real(spec.window_min, spec.window_max);
            node.tw_open = rng.uniform_real(0.0, spec.horizon - node.service - width);
            node.tw_close = node.tw_open + width;
        } while (node.tw_close < reach);
        inst.nodes.push_back(node);
    }
    inst.nodes.push_back({n + 1, centre, centre, 0.0, 0.0, 0.0, end_close});

    inst.distances = euclidean_distances(inst.nodes);
    inst.alpha = Matrix(inst.nodes.size(), spec.alpha);
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) inst.alpha(i, i) = 0.0;
    validate(inst);

    // One vehicle per customer must always work.
    Instance spread = inst;
    spread.fleet_size = n;
    Solution singles;
    for (NodeId c = 1; c <= n; ++c) {
        const NodeId only[] = {c};
        singles.routes.push_back(make_route(spread, only));
    }
    assign_speed_levels(spread, singles);
    if (!is_feasible(spread, singles)) throw GenerationError("generated instance fails the one-vehicle-per-customer check");
    return inst;
}

}  // namespace greenroute
