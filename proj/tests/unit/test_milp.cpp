#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/lp_reader.hpp"
#include "greenroute/exact.hpp"
#include "greenroute/instgen.hpp"

using namespace greenroute;
using namespace greenroute::testing;

TEST_CASE("big-M by hand") {
    Instance inst = make_instance({{60, 0, 1, 1.0, 0, 5.0}, {120, 0, 1, 0, 2.0, 10}});
    inst.speed_levels[0].lower = 60;
    inst.speed_levels[0].avg = 60;
    CHECK(big_m(inst, 1, 2) == doctest::Approx(5.0));
    inst.nodes[2].tw_open = 9.0;
    inst.nodes[2].tw_close = 10.0;
    CHECK(big_m(inst, 1, 2) == 0.0);
}

TEST_CASE("one customer model size") {
    const Instance inst = make_instance({{10, 0, 1}});
    const MilpCounts c = milp_counts(1, 1, 1);
    CHECK(c.x_vars == 2);
    CHECK(c.z_vars == 2);
    CHECK(c.f_vars == 2);
    CHECK(c.y_vars == 3);

    const LpModel lp = read_lp(export_milp(inst));
    CHECK(lp.binaries == std::set<std::string>{"x_0_1_1", "x_1_2_1", "z_0_1_1", "z_1_2_1"});
    CHECK(lp.bounded == std::set<std::string>{"f_0_1", "f_1_2", "y_0_1", "y_1_1", "y_2_1"});
    CHECK(lp.rows.size() == c.rows);
}

TEST_CASE("exported model is well formed") {
    for (int n : {2, 3, 5}) {
        GenSpec spec;
        spec.customers = n;
        spec.seed = static_cast<std::uint64_t>(n);
        const Instance inst = generate(spec);
        const std::string text = export_milp(inst);
        CHECK(text == export_milp(inst));
        const LpModel lp = read_lp(text);
        const MilpCounts c = milp_counts(n, inst.fleet_size, static_cast<int>(inst.speed_levels.size()));
        CAPTURE(n);
        CHECK(lp.rows.size() == c.rows);

        std::size_t xs = 0, zs = 0, fs = 0, ys = 0;
        for (const auto& v : lp.binaries) (v[0] == 'x' ? xs : zs) += 1;
        for (const auto& v : lp.bounded) (v[0] == 'f' ? fs : ys) += 1;
        CHECK(xs == c.x_vars);
        CHECK(zs == c.z_vars);
        CHECK(fs == c.f_vars);
        CHECK(ys == c.y_vars);

        auto declared = [&](const std::string& v) { return lp.binaries.count(v) + lp.bounded.count(v) == 1; };
        for (const auto& [v, coef] : lp.objective) CHECK(declared(v));
        for (const auto& row : lp.rows) {
            for (const auto& [v, coef] : row.coef) {
                CAPTURE(row.name);
                CHECK(declared(v));
            }
        }
    }
}

TEST_CASE("objective coefficients follow the edge cost") {
    const Instance inst = hand_instance();
    const LpModel lp = read_lp(export_milp(inst));
    CHECK(lp.objective.at("x_0_1_1") == doctest::Approx(1.0));
    CHECK(lp.objective.at("f_0_1") == doctest::Approx(0.1));
    CHECK(lp.objective.at("z_0_1_1") == doctest::Approx(36.0));
    // x at 1 with f = 5 on the way out and 0 back reproduces 74.5.
    const double total = lp.objective.at("x_0_1_1") + lp.objective.at("x_1_2_1") + 5 * lp.objective.at("f_0_1") +
                         lp.objective.at("z_0_1_1") + lp.objective.at("z_1_2_1");
    CHECK(total == doctest::Approx(74.5));
}
