#include <random>

#include "doctest.h"
#include "duo/bounds.hpp"
#include "duo/exact.hpp"
#include "helpers.hpp"

using namespace duo;
using duotest::near;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("hexagon bound composes exact TSP and matching components") {
    const Instance hex = duotest::hexagon();
    const BoundReport r = lower_bound(hex);
    CHECK(near(r.tsp_component, 6.0));
    CHECK(r.tsp_exact);
    CHECK(near(r.matching_component, 3.0));
    CHECK(near(r.tsp_matching_bound, 9.0));
    CHECK(near(r.mst_matching_bound, 7.0));
    CHECK(near(r.best, 9.0));

    const ExactResult bf = brute_force_solve(hex);
    CHECK(r.best <= bf.solution.total_cost + 1e-9);
}

TEST_CASE("collinear mst+matching bound is 7") {
    const Instance line = duotest::collinear6();
    CHECK(near(mst_matching_bound(line), 7.0));
}

TEST_CASE("bounds never exceed the enumerated optimum") {
    std::mt19937_64 rng(1001);
    for (int n : {6, 8, 10}) {
        for (int trial = 0; trial < 6; ++trial) {
            const Instance inst = generate_random(n, rng(), 500.0);
            const BoundReport r = lower_bound(inst);
            const ExactResult bf = brute_force_solve(inst);
            CHECK(r.best <= bf.solution.total_cost + 1e-9);
            CHECK(r.mst_matching_bound <= bf.solution.total_cost + 1e-9);
            CHECK(r.tsp_matching_bound <= bf.solution.total_cost + 1e-9);
        }
    }
}

TEST_CASE("exact results dominate the bound") {
    std::mt19937_64 rng(1002);
    const Instance inst = generate_random(12, rng(), 500.0);
    const BoundReport r = lower_bound(inst);
    const ExactResult ex = exact_solve(inst);
    REQUIRE(ex.optimal);
    CHECK(r.best <= ex.solution.total_cost + 1e-9);
}

TEST_CASE("bounds scale linearly with uniform cost scaling") {
    for (int n : {8, 20}) {
        const Instance inst = generate_random(n, 31337, 500.0);
        const double lambda = 3.5;
        std::vector<std::vector<double>> scaled(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) scaled[i][j] = lambda * inst.cost(i, j);
        const Instance big = from_cost_matrix(scaled, "scaled");

        const BoundReport a = lower_bound(inst);
        const BoundReport b = lower_bound(big);
        CHECK(near(b.best, lambda * a.best, 1e-6 * std::max(1.0, lambda * a.best)));
        CHECK(near(b.mst_matching_bound, lambda * a.mst_matching_bound,
                   1e-6 * std::max(1.0, lambda * a.mst_matching_bound)));
    }
}

TEST_SUITE_END();
