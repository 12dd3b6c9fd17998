#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/naive_enumerator.hpp"
#include "greenroute/exact.hpp"
#include "greenroute/instgen.hpp"
#include "greenroute/sa.hpp"

using namespace greenroute;
using namespace greenroute::testing;

TEST_CASE("one customer is forced") {
    const Instance inst = make_instance({{10, 0, 1}});
    const ExactResult r = solve_exact(inst, 10);
    CHECK(r.status == ExactStatus::Optimal);
    CHECK(r.proven);
    CHECK(r.solution == timed_solution(inst, {{1}}));
    CHECK(r.optimum.total == evaluate(inst, r.solution).total);
}

TEST_CASE("three customers, one vehicle: best of six orders") {
    const Instance inst = make_instance({{10, 0, 1}, {0, 25, 2}, {-7, 4, 1}}, 1);
    std::vector<NodeId> perm{1, 2, 3};
    double best = 1e300;
    do {
        best = std::min(best, evaluate(inst, timed_solution(inst, {perm})).total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const ExactResult r = solve_exact(inst, 10);
    REQUIRE(r.proven);
    CHECK(r.optimum.total == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("matches the naive enumerator") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GenSpec spec;
        spec.customers = 3 + static_cast<int>(seed % 3);
        spec.seed = 900 + seed;
        const Instance inst = generate(spec);
        const ExactResult r = solve_exact(inst, 60);
        const NaiveResult naive = naive_optimum(inst);
        CAPTURE(seed);
        REQUIRE(r.proven);
        REQUIRE(naive.optimum.has_value());
        CHECK(r.optimum.total == *naive.optimum);
        CHECK(check_feasibility(inst, r.solution).feasible());
    }
}

TEST_CASE("infeasible instance is reported, not thrown") {
    const Instance inst = make_instance({{600, 0, 1, 0, 0, 1.0}, {10, 0, 1}});
    const ExactResult r = solve_exact(inst, 10);
    CHECK(r.status == ExactStatus::Infeasible);
    CHECK(r.proven);
    CHECK(!r.has_solution());
}

TEST_CASE("tiny budget leaves the result unproven") {
    GenSpec spec;
    spec.customers = 16;
    spec.seed = 4;
    const Instance inst = generate(spec);
    const ExactResult r = solve_exact(inst, 0.01);
    CHECK(!r.proven);
    CHECK((r.status == ExactStatus::Incumbent || r.status == ExactStatus::Unknown));
}

TEST_CASE("exact never loses to annealing") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenSpec spec;
        spec.customers = 6;
        spec.seed = 300 + seed;
        const Instance inst = generate(spec);
        const ExactResult exact = solve_exact(inst, 60);
        SAConfig cfg;
        cfg.seed = seed;
        const AnnealResult sa = anneal(inst, cfg);
        REQUIRE(exact.proven);
        REQUIRE(sa.status == AnnealStatus::Solved);
        CHECK(exact.optimum.total <= sa.objective.total * (1 + 1e-12));
    }
}
