#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "greenroute/exact.hpp"
#include "greenroute/instance_io.hpp"

namespace greenroute {

namespace {

using Edge = std::pair<NodeId, NodeId>;

// Edges a vehicle can use: nothing enters the start depot, nothing leaves the
// end depot, and the empty depot-to-depot trip is not modelled.
std::vector<Edge> usable_edges(const Instance& inst) {
    const NodeId end = inst.end_depot();
    std::vector<Edge> edges;
    for (NodeId i = 0; i < end; ++i) {
        for (NodeId j = 1; j <= end; ++j) {
            if (i == j || (i == 0 && j == end)) continue;
            edges.emplace_back(i, j);
        }
    }
    return edges;
}

double slowest_lower_bound(const Instance& inst) {
    double l = std::numeric_limits<double>::infinity();
    for (const auto& lvl : inst.speed_levels) l = std::min(l, lvl.lower);
    return l;
}

std::string x_name(NodeId i, NodeId j, int k) {
    return "x_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string z_name(NodeId i, NodeId j, int r) {
    return "z_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(r);
}
std::string f_name(NodeId i, NodeId j) { return "f_" + std::to_string(i) + "_" + std::to_string(j); }
std::string y_name(NodeId i, int k) { return "y_" + std::to_string(i) + "_" + std::to_string(k); }

// Linear expression writer that wraps long rows.
class Row {
 public:
    void add(double coef, const std::string& var) {
        if (coef == 0.0) return;
        std::string term = coef < 0.0 ? "- " : "+ ";
        const double mag = coef < 0.0 ? -coef : coef;
        if (mag != 1.0) term += format_double(mag) + " ";
        term += var;
        terms_.push_back(std::move(term));
    }

    void write(std::ostream& out, const std::string& name, const std::string& sense, double rhs) const {
        write_terms(out, " " + name + ":");
        out << " " << sense << " " << format_double(rhs) << "\n";
    }

    void write_objective(std::ostream& out) const {
        write_terms(out, " obj:");
        out << "\n";
    }

 private:
    void write_terms(std::ostream& out, const std::string& head) const {
        std::size_t width = head.size();
        out << head;
        if (terms_.empty()) out << " 0 y_0_1";
        for (const auto& t : terms_) {
            if (width + t.size() + 1 > 200) {
                out << "\n   ";
                width = 3;
            }
            out << " " << t;
            width += t.size() + 1;
        }
    }

    std::vector<std::string> terms_;
};

}  // namespace

double big_m(const Instance& inst, NodeId i, NodeId j) {
    const Node& from = inst.nodes.at(static_cast<std::size_t>(i));
    const Node& to = inst.nodes.at(static_cast<std::size_t>(j));
    const double d = inst.distances(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return std::max(0.0, from.tw_close + from.service + d / slowest_lower_bound(inst) - to.tw_open);
}

MilpCounts milp_counts(int n, int k, int r) {
    const auto N = static_cast<std::size_t>(n);
    const auto K = static_cast<std::size_t>(k);
    const auto R = static_cast<std::size_t>(r);
    const std::size_t edges = N * (N + 1);
    MilpCounts c;
    c.x_vars = K * edges;
    c.z_vars = R * edges;
    c.f_vars = edges;
    c.y_vars = K * (N + 2);
    c.rows = K               // vehicle capacity
             + N             // each customer left once
             + N * K         // flow conservation per vehicle
             + K + K         // leave and reach the depot once
             + 2 * (N + 1) * K  // window open / close
             + N * N * K     // linearised timing into customers
             + N * K         // linearised timing back to the depot
             + N             // load balance
             + 2 * edges     // load bounds
             + edges;        // one speed level per used edge
    return c;
}

std::string export_milp(const Instance& inst) {
    const int n = inst.customers();
    const int K = inst.fleet_size;
    const int R = static_cast<int>(inst.speed_levels.size());
    const NodeId end = inst.end_depot();
    const auto edges = usable_edges(inst);
    const double c = inst.unit_cost();
    const double l = slowest_lower_bound(inst);
    auto node = [&](NodeId i) -> const Node& { return inst.nodes[static_cast<std::size_t>(i)]; };
    auto dist = [&](NodeId i, NodeId j) { return inst.distances(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    auto alpha = [&](NodeId i, NodeId j) { return inst.alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

    double L = 0.0;
    for (const auto& [i, j] : edges) L = std::max(L, big_m(inst, i, j));

    std::ostringstream out;
    out << "\\ greenroute routing model with time windows and speed brackets\n";
    out << "\\ customers " << n << ", vehicles " << K << ", speed levels " << R << "\n";
    out << "\\ Nodes 0 and " << end << " are the start and end depot. Edges into 0, out of " << end
        << " and " << "0->" << end << " are omitted, so their x variables are fixed at zero by absence.\n";
    out << "\\ Timing rows use M_ij = max{0, b_i + g_i + d_ij/l - a_j} with g_i the service time and\n";
    out << "\\ l = " << format_double(l) << " the slowest lower speed bound. Return-to-depot timing rows use\n";
    out << "\\ the same device with L = " << format_double(L) << ", the largest M over all edges.\n";
    out << "\\ Every vehicle must leave the depot once, so this model uses exactly " << K << " routes.\n";
    out << "\\ Speed brackets (not enforced as rows; z only picks one level per used edge):\n";
    for (const auto& lvl : inst.speed_levels) {
        out << "\\   level " << lvl.id << ": avg " << format_double(lvl.avg) << " km/h, bounds [" << format_double(lvl.lower)
            << ", " << format_double(lvl.upper) << "], departures in [" << format_double(lvl.bracket_start) << ", "
            << format_double(lvl.bracket_end) << ")\n";
    }

    out << "Minimize\n";
    {
        Row obj;
        for (const auto& [i, j] : edges) {
            for (int k = 1; k <= K; ++k) obj.add(c * alpha(i, j) * dist(i, j) * inst.vehicle_weight, x_name(i, j, k));
            obj.add(c * alpha(i, j) * dist(i, j), f_name(i, j));
            for (const auto& lvl : inst.speed_levels) {
                obj.add(c * dist(i, j) * inst.beta * lvl.avg * lvl.avg, z_name(i, j, lvl.id));
            }
        }
        obj.write_objective(out);
    }

    out << "Subject To\n";
    for (int k = 1; k <= K; ++k) {
        Row row;
        for (const auto& [i, j] : edges) {
            if (inst.is_customer(i)) row.add(node(i).demand, x_name(i, j, k));
        }
        row.write(out, "cap_" + std::to_string(k), "<=", inst.capacity);
    }
    for (NodeId i = 1; i <= n; ++i) {
        Row row;
        for (int k = 1; k <= K; ++k) {
            for (const auto& [a, b] : edges) {
                if (a == i) row.add(1.0, x_name(a, b, k));
            }
        }
        row.write(out, "assign_" + std::to_string(i), "=", 1.0);
    }
    for (NodeId v = 1; v <= n; ++v) {
        for (int k = 1; k <= K; ++k) {
            Row row;
            for (const auto& [a, b] : edges) {
                if (b == v) row.add(1.0, x_name(a, b, k));
            }
            for (const auto& [a, b] : edges) {
                if (a == v) row.add(-1.0, x_name(a, b, k));
            }
            row.write(out, "flow_" + std::to_string(v) + "_" + std::to_string(k), "=", 0.0);
        }
    }
    for (int k = 1; k <= K; ++k) {
        Row row;
        for (const auto& [a, b] : edges) {
            if (a == 0) row.add(1.0, x_name(a, b, k));
        }
        row.write(out, "depart_" + std::to_string(k), "=", 1.0);
    }
    for (int k = 1; k <= K; ++k) {
        Row row;
        for (const auto& [a, b] : edges) {
            if (b == end) row.add(1.0, x_name(a, b, k));
        }
        row.write(out, "arrive_" + std::to_string(k), "=", 1.0);
    }
    for (NodeId i = 0; i < end; ++i) {
        for (int k = 1; k <= K; ++k) {
            Row open_row;
            Row close_row;
            for (const auto& [a, b] : edges) {
                if (a != i) continue;
                open_row.add(node(i).tw_open, x_name(a, b, k));
                close_row.add(node(i).tw_close, x_name(a, b, k));
            }
            open_row.add(-1.0, y_name(i, k));
            close_row.add(-1.0, y_name(i, k));
            const std::string suffix = std::to_string(i) + "_" + std::to_string(k);
            open_row.write(out, "twopen_" + suffix, "<=", 0.0);
            close_row.write(out, "twclose_" + suffix, ">=", 0.0);
        }
    }
    for (const auto& [i, j] : edges) {
        if (j == end) continue;
        const double M = big_m(inst, i, j);
        for (int k = 1; k <= K; ++k) {
            Row row;
            row.add(1.0, y_name(i, k));
            row.add(-1.0, y_name(j, k));
            for (const auto& lvl : inst.speed_levels) row.add(dist(i, j) / lvl.avg, z_name(i, j, lvl.id));
            row.add(M, x_name(i, j, k));
            row.write(out, "time_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k), "<=",
                      M - node(i).service);
        }
    }
    for (NodeId j = 1; j <= n; ++j) {
        for (int k = 1; k <= K; ++k) {
            Row row;
            row.add(1.0, y_name(j, k));
            row.add(-1.0, y_name(end, k));
            for (const auto& lvl : inst.speed_levels) row.add(dist(j, end) / lvl.avg, z_name(j, end, lvl.id));
            row.add(L, x_name(j, end, k));
            row.write(out, "return_" + std::to_string(j) + "_" + std::to_string(k), "<=", L - node(j).service);
        }
    }
    for (NodeId i = 1; i <= n; ++i) {
        Row row;
        for (const auto& [a, b] : edges) {
            if (b == i) row.add(1.0, f_name(a, b));
        }
        for (const auto& [a, b] : edges) {
            if (a == i) row.add(-1.0, f_name(a, b));
        }
        row.write(out, "balance_" + std::to_string(i), "=", node(i).demand);
    }
    for (const auto& [i, j] : edges) {
        Row lo;
        Row hi;
        lo.add(1.0, f_name(i, j));
        hi.add(1.0, f_name(i, j));
        for (int k = 1; k <= K; ++k) {
            lo.add(-node(j).demand, x_name(i, j, k));
            hi.add(-(inst.capacity - node(i).demand), x_name(i, j, k));
        }
        const std::string suffix = std::to_string(i) + "_" + std::to_string(j);
        lo.write(out, "loadlo_" + suffix, ">=", 0.0);
        hi.write(out, "loadhi_" + suffix, "<=", 0.0);
    }
    for (const auto& [i, j] : edges) {
        Row row;
        for (const auto& lvl : inst.speed_levels) row.add(1.0, z_name(i, j, lvl.id));
        for (int k = 1; k <= K; ++k) row.add(-1.0, x_name(i, j, k));
        row.write(out, "speed_" + std::to_string(i) + "_" + std::to_string(j), "=", 0.0);
    }

    out << "Bounds\n";
    for (const auto& [i, j] : edges) out << " " << f_name(i, j) << " >= 0\n";
    for (NodeId i = 0; i <= end; ++i) {
        for (int k = 1; k <= K; ++k) out << " " << y_name(i, k) << " >= 0\n";
    }

    out << "Binaries\n";
    for (const auto& [i, j] : edges) {
        for (int k = 1; k <= K; ++k) out << " " << x_name(i, j, k) << "\n";
    }
    for (const auto& [i, j] : edges) {
        for (const auto& lvl : inst.speed_levels) out << " " << z_name(i, j, lvl.id) << "\n";
    }
    out << "End\n";
    return out.str();
}

}  // namespace greenroute
