#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "greenroute/model.hpp"

namespace greenroute {

class GenerationError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Random instance recipe. The depot sits at the centre of a square area;
/// customers are uniform inside it. Two speed levels: 60 km/h before hour 8
/// and 50 km/h from hour 8 to the horizon. Vehicles weigh 10 units and carry
/// up to 10.
///
/// alpha, beta and the unit cost are placeholders chosen to make the three
/// objective terms comparable; they do not claim to match any published data.
struct GenSpec {
    int customers = 5;
    std::uint64_t seed = 1;
    double area = 100.0;
    double demand_min = 1.0;
    double demand_max = 3.0;
    double window_min = 1.0;
    double window_max = 4.0;
    double horizon = 16.0;
    double service_min = 0.1;
    double service_max = 0.5;
    /// Defaults to ceil(2n / capacity) + 1.
    std::optional<int> fleet_size;

    double vehicle_weight = 10.0;
    double capacity = 10.0;
    double alpha = 1.0;
    double beta = 0.01;
    double fuel_cost = 70.0;
    double emission_cost = 30.0;
    double day_speed = 60.0;
    double evening_speed = 50.0;
    double bracket_switch = 8.0;

    int max_retries = 1000;

    int default_fleet() const;

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;
};

/// Deterministic for a given spec. Every customer window is reachable from
/// the depot at day speed and closes early enough to leave before the horizon.
Instance generate(const GenSpec& spec);

}  // namespace greenroute
