#include <doctest.h>

#include <sstream>

#include "../support/fixtures.hpp"
#include "greenroute/instance_io.hpp"
#include "greenroute/instgen.hpp"

using namespace greenroute;
using namespace greenroute::testing;

TEST_CASE("instance round trip") {
    GenSpec spec;
    spec.customers = 7;
    spec.seed = 3;
    const Instance inst = generate(spec);
    std::ostringstream out;
    write_instance(out, inst);
    std::istringstream in(out.str());
    CHECK(read_instance(in) == inst);
    CHECK(out.str().find("[distances]") == std::string::npos);
}

TEST_CASE("explicit matrices survive a round trip") {
    Instance inst = hand_instance();
    for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) inst.distances(i, j) = 120.0;
    std::ostringstream out;
    write_instance(out, inst);
    CHECK(out.str().find("[distances]") != std::string::npos);
    std::istringstream in(out.str());
    CHECK(read_instance(in) == inst);

    inst.alpha(0, 1) = 0.25;
    std::ostringstream out2;
    write_instance(out2, inst);
    CHECK(out2.str().find("[alpha]") != std::string::npos);
    std::istringstream in2(out2.str());
    CHECK(read_instance(in2) == inst);
}

TEST_CASE("hand written instance") {
    std::istringstream in(R"(# two customers
[meta]
n 2
fleet_size 1
vehicle_weight 10
capacity 10
fuel_cost 1
emission_cost 0
beta 0.01
alpha 1

[levels]
1 50 60 70 0 24

[nodes]
0 0 0 0 0 0 24
1 3 4 1 0 0 24
2 0 8 1 0 0 24
3 0 0 0 0 0 24
)");
    const Instance inst = read_instance(in);
    CHECK(inst.customers() == 2);
    CHECK(inst.distances(0, 1) == doctest::Approx(5.0));
    CHECK(inst.distances(1, 2) == doctest::Approx(5.0));
    CHECK(inst.delta1 == 1.0);
}

TEST_CASE("malformed instances") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_instance(in);
    };
    CHECK_THROWS_AS(parse("[meta]\nbogus 1\n"), InputError);
    CHECK_THROWS_AS(parse("[what]\n"), InputError);
    CHECK_THROWS_AS(parse("[meta]\nn x\n"), InputError);
    CHECK_THROWS_AS(parse("[meta]\nn 1\n"), InputError);
}

TEST_CASE("format_double is shortest round trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123, -0.0, 74.5}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(74.5) == "74.5");
}

TEST_CASE("solution file round trip") {
    SolutionFile file;
    file.encoded = "0,1-1,1-2,1";
    file.fields["objective"] = "74.5";
    file.fields["status"] = "solved";
    std::ostringstream out;
    write_solution_file(out, file);
    CHECK(out.str() == "0,1-1,1-2,1\nobjective=74.5\nstatus=solved\n");
    std::istringstream in(out.str());
    const SolutionFile back = read_solution_file(in);
    CHECK(back.encoded == file.encoded);
    CHECK(back.fields == file.fields);

    std::istringstream bad("0,1-1,1-2,1\nnot a field\n");
    CHECK_THROWS_AS(read_solution_file(bad), InputError);
}
