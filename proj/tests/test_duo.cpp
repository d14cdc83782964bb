#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "duo/solution.hpp"
#include "duo/tsp.hpp"
#include "helpers.hpp"

using namespace duo;
using duotest::near;

namespace {

const double kSqrt3 = std::sqrt(3.0);

bool has_family(const FeasibilityReport& rep, ConstraintFamily f) {
    for (const auto& v : rep.violations)
        if (v.family == f) return true;
    return false;
}

std::vector<int> all_vertices(const Instance& inst) {
    std::vector<int> v(inst.n_targets);
    for (int i = 0; i < inst.n_targets; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_SUITE_BEGIN("duo");

TEST_CASE("splitting the hexagon perimeter yields two sqrt(3) triangles") {
    const Instance hex = duotest::hexagon();
    const Tour perimeter = make_tour(hex, {0, 1, 2, 3, 4, 5});
    const auto [t1, t2] = split_tour(hex, perimeter, 0);
    CHECK(t1.order == std::vector<int>{0, 2, 4});
    CHECK(t2.order == std::vector<int>{1, 3, 5});
    CHECK(near(t1.cost, 3.0 * kSqrt3));
    CHECK(near(t2.cost, 3.0 * kSqrt3));

    const auto [u1, u2] = split_tour(hex, perimeter, 1);
    CHECK(u1.order == std::vector<int>{1, 3, 5});
    CHECK(u2.order == std::vector<int>{0, 2, 4});
}

TEST_CASE("splitting the collinear out-and-back tour") {
    const Instance line = duotest::collinear6();
    const Tour t = make_tour(line, {0, 1, 2, 3, 4, 5});
    const auto [t1, t2] = split_tour(line, t, 0);
    CHECK(t1.order == std::vector<int>{0, 2, 4});
    CHECK(near(t1.cost, 8.0));
    CHECK(near(t2.cost, 8.0));
}

TEST_CASE("split pieces never cost more than the tour") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 6 + 2 * static_cast<int>(rng() % 10);
        const Instance inst = generate_random(n, rng(), 500.0);
        const Tour t = christofides(inst, all_vertices(inst));
        for (int offset : {0, 1}) {
            const auto [t1, t2] = split_tour(inst, t, offset);
            CHECK(t1.cost <= t.cost + 1e-9);
            CHECK(t2.cost <= t.cost + 1e-9);
        }
    }
}

TEST_CASE("select_comm_links on the hexagon breaks the tie to position 0") {
    const Instance hex = duotest::hexagon();
    const Tour perimeter = make_tour(hex, {0, 1, 2, 3, 4, 5});
    const CommLinkSelection sel = select_comm_links(hex, perimeter);
    CHECK(near(sel.cost, 3.0));
    CHECK(sel.links == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("select_comm_links picks the cheap class on the collinear tour") {
    const Instance line = duotest::collinear6();
    const Tour t = make_tour(line, {0, 1, 2, 3, 4, 5});
    const CommLinkSelection sel = select_comm_links(line, t);
    CHECK(near(sel.cost, 3.0));
    CHECK(sel.links == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("alternating classes partition the tour cost") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 6 + 2 * static_cast<int>(rng() % 10);
        const Instance inst = generate_random(n, rng(), 500.0);
        const Tour t = christofides(inst, all_vertices(inst));
        const CommLinkSelection sel = select_comm_links(inst, t);
        CHECK(sel.cost <= 0.5 * t.cost + 1e-9);
        double other = 0.0;
        std::vector<std::pair<int, int>> kept = sel.links;
        for (int p = 0; p < n; ++p) {
            int a = t.order[p], b = t.order[(p + 1) % n];
            if (a > b) std::swap(a, b);
            if (!std::binary_search(kept.begin(), kept.end(), std::make_pair(a, b)))
                other += inst.cost(a, b);
        }
        CHECK(near(sel.cost + other, t.cost, 1e-6));
    }
}

TEST_CASE("approx_solve hexagon composes the hand-traced pieces") {
    const Instance hex = duotest::hexagon();
    const DuoSolution sol = approx_solve(hex);
    CHECK(near(sol.travel_cost, 6.0 * kSqrt3));
    CHECK(near(sol.comm_cost, 3.0));
    CHECK(near(sol.total_cost, 6.0 * kSqrt3 + 3.0));
    CHECK(validate(hex, sol).ok());
    CHECK(sol.total_cost == sol.travel_cost + sol.comm_cost);
}

TEST_CASE("heuristic_solve equals approx_solve on the hexagon") {
    const Instance hex = duotest::hexagon();
    const DuoSolution a = approx_solve(hex);
    const DuoSolution h = heuristic_solve(hex);
    CHECK(a.tour1.order == h.tour1.order);
    CHECK(a.tour2.order == h.tour2.order);
    CHECK(a.comm_links == h.comm_links);
    CHECK(near(a.total_cost, h.total_cost));
}

TEST_CASE("heuristic tour is never worse than the christofides tour") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const Instance inst = generate_random(10, rng(), 500.0);
        const Tour chris = christofides(inst, all_vertices(inst));
        const DuoSolution h = heuristic_solve(inst);
        CHECK(h.tour1.cost + h.tour2.cost + h.comm_cost <= 2.5 * chris.cost + 1e-9);
        const Tour improved = improve_tour(inst, chris);
        CHECK(improved.cost <= chris.cost + 1e-9);
        CHECK(validate(inst, h).ok());
    }
}

TEST_CASE("approx chain inequalities hold on random instances") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 6 + 2 * static_cast<int>(rng() % 10);
        const Instance inst = generate_random(n, rng(), 500.0);
        const Tour t = christofides(inst, all_vertices(inst));
        const DuoSolution sol = approx_solve(inst);
        CHECK(validate(inst, sol).ok());
        CHECK(sol.total_cost <= 2.5 * t.cost + 1e-9);
    }
}

TEST_CASE("best_alignment matches the hexagon triangles with unit links") {
    const Instance hex = duotest::hexagon();
    const Tour t1 = make_tour(hex, {0, 2, 4});
    const Tour t2 = make_tour(hex, {1, 3, 5});
    const AlignmentResult r = best_alignment(hex, t1, t2);
    CHECK(near(r.cost, 3.0));
    CHECK(r.links == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("best_alignment on collinear halves with tour2 given reversed") {
    const Instance line = duotest::collinear6();
    // Raw (non-canonical) visit orders, exactly as handed in.
    Tour t1, t2;
    t1.order = {0, 1, 2};
    t1.cost = cycle_cost(line, t1.order);
    t2.order = {5, 4, 3};
    t2.cost = cycle_cost(line, t2.order);
    const AlignmentResult r = best_alignment(line, t1, t2);
    // Every cross pairing telescopes to the same cost here.
    CHECK(near(r.cost, 9.0));
    CHECK(r.shift == 0);
    CHECK_FALSE(r.reversed);
    CHECK(r.links == std::vector<std::pair<int, int>>{{0, 5}, {1, 4}, {2, 3}});
}

TEST_CASE("best_alignment recovers a translation") {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i)
        pts.push_back({std::cos(duotest::kPi / 3.0 * i), std::sin(duotest::kPi / 3.0 * i)});
    for (int i = 0; i < 6; ++i) pts.push_back({pts[i].x + 100.0, pts[i].y});
    const Instance inst = from_points(pts, "translated");
    const Tour t1 = make_tour(inst, {0, 1, 2, 3, 4, 5});
    const Tour t2 = make_tour(inst, {6, 7, 8, 9, 10, 11});
    const AlignmentResult r = best_alignment(inst, t1, t2);
    CHECK(near(r.cost, 600.0));
    CHECK(r.shift == 0);
    CHECK_FALSE(r.reversed);
    for (int i = 0; i < 6; ++i) CHECK(r.links[i] == std::make_pair(i, i + 6));
}

TEST_CASE("best_alignment equals exhaustive enumeration on random tour pairs") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6 + 2 * static_cast<int>(rng() % 8);
        const Instance inst = generate_random(n, rng(), 500.0);
        std::vector<int> perm = all_vertices(inst);
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
        const std::vector<int> a(perm.begin(), perm.begin() + n / 2);
        const std::vector<int> b(perm.begin() + n / 2, perm.end());
        const Tour t1 = make_tour(inst, a);
        const Tour t2 = make_tour(inst, b);
        const AlignmentResult r = best_alignment(inst, t1, t2);
        CHECK(near(r.cost, duotest::enumerate_alignment_cost(inst, t1.order, t2.order)));
    }
}

TEST_CASE("with_best_alignment never increases cost and stays feasible") {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 15; ++trial) {
        const Instance inst = generate_random(12, rng(), 500.0);
        const DuoSolution sol = approx_solve(inst);
        const DuoSolution aligned = with_best_alignment(inst, sol);
        CHECK(aligned.total_cost <= sol.total_cost + 1e-9);
        CHECK(validate(inst, aligned).ok());
    }
}

TEST_CASE("solution_cost matches the hexagon breakdown and definition") {
    const Instance hex = duotest::hexagon();
    const DuoSolution sol = approx_solve(hex);
    const CostBreakdown cb = solution_cost(hex, sol);
    CHECK(near(cb.travel, 10.392305, 1e-6));
    CHECK(near(cb.comm, 3.0));
    CHECK(near(cb.total, 13.392305, 1e-6));
    CHECK(cb.total == cb.travel + cb.comm);
}

TEST_CASE("empty link list reports multiplicity violations, comm cost 0") {
    const Instance hex = duotest::hexagon();
    DuoSolution sol = approx_solve(hex);
    sol.comm_links.clear();
    sol.comm_cost = 0.0;
    sol.total_cost = sol.travel_cost;
    CHECK(solution_cost(hex, sol).comm == 0.0);
    const FeasibilityReport rep = validate(hex, sol);
    CHECK_FALSE(rep.ok());
    CHECK(has_family(rep, ConstraintFamily::link_multiplicity));
}

TEST_CASE("validator flags each seeded violation class") {
    const Instance hex = duotest::hexagon();
    const DuoSolution good = approx_solve(hex);
    REQUIRE(validate(hex, good).ok());

    SUBCASE("cardinality") {
        DuoSolution bad = good;
        for (auto& a : bad.assignment) a = 1;
        const auto rep = validate(hex, bad);
        CHECK(has_family(rep, ConstraintFamily::cardinality));
    }
    SUBCASE("tour-partition") {
        DuoSolution bad = good;
        std::swap(bad.tour1.order[1], bad.tour2.order[1]);
        const auto rep = validate(hex, bad);
        CHECK(has_family(rep, ConstraintFamily::tour_partition));
    }
    SUBCASE("link-multiplicity") {
        DuoSolution bad = good;
        bad.comm_links[1] = bad.comm_links[0];
        const auto rep = validate(hex, bad);
        CHECK(has_family(rep, ConstraintFamily::link_multiplicity));
        CHECK(has_family(rep, ConstraintFamily::degree_connectivity));
    }
    SUBCASE("cross-partition") {
        // Move a link inside a partition: {0,2} joins two tour1 targets.
        DuoSolution bad = good;
        bad.comm_links = {{0, 2}, {1, 3}, {4, 5}};
        bad.comm_cost = hex.cost(0, 2) + hex.cost(1, 3) + hex.cost(4, 5);
        bad.total_cost = bad.travel_cost + bad.comm_cost;
        const auto rep = validate(hex, bad);
        CHECK(has_family(rep, ConstraintFamily::cross_partition));
    }
    SUBCASE("cost-consistency") {
        DuoSolution bad = good;
        bad.total_cost += 0.5;
        const auto rep = validate(hex, bad);
        CHECK(has_family(rep, ConstraintFamily::cost_consistency));
    }
}

TEST_CASE("every m=3 cross matching is an alignment, so Lemma 1 accepts it") {
    const Instance hex = duotest::hexagon();
    const DuoSolution good = approx_solve(hex);
    // Tours {0,2,4} and {1,3,5}: all six cross matchings arise as shifts or
    // reversals, so none violates order preservation.
    const std::vector<std::vector<std::pair<int, int>>> matchings = {
        {{0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {2, 5}, {3, 4}}, {{0, 3}, {1, 2}, {4, 5}},
        {{0, 3}, {2, 5}, {1, 4}}, {{0, 5}, {1, 2}, {3, 4}}, {{0, 5}, {1, 4}, {2, 3}}};
    for (const auto& links : matchings) {
        DuoSolution cand = good;
        cand.comm_links = links;
        double comm = 0.0;
        for (auto [x, y] : links) comm += hex.cost(x, y);
        cand.comm_cost = comm;
        cand.total_cost = cand.travel_cost + comm;
        const auto rep = validate(hex, cand);
        CHECK_FALSE(has_family(rep, ConstraintFamily::order_preservation));
    }
}

TEST_CASE("order preservation catches a non-alignment at m=4") {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({std::cos(duotest::kPi / 4.0 * i), std::sin(duotest::kPi / 4.0 * i)});
    const Instance oct = from_points(pts, "octagon");
    const Tour t1 = make_tour(oct, {0, 2, 4, 6});
    const Tour t2 = make_tour(oct, {1, 3, 5, 7});
    DuoSolution sol;
    sol.assignment = {1, 2, 1, 2, 1, 2, 1, 2};
    sol.tour1 = t1;
    sol.tour2 = t2;
    // Pairing pattern (0,1,3,2) over tour2 positions: not a shift in either
    // direction.
    sol.comm_links = {{0, 1}, {2, 3}, {4, 7}, {5, 6}};
    double comm = 0.0;
    for (auto [x, y] : sol.comm_links) comm += oct.cost(x, y);
    sol.travel_cost = t1.cost + t2.cost;
    sol.comm_cost = comm;
    sol.total_cost = sol.travel_cost + comm;
    const auto rep = validate(oct, sol);
    CHECK(has_family(rep, ConstraintFamily::order_preservation));

    // The aligned links for the same tours pass.
    sol.comm_links = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    comm = 0.0;
    for (auto [x, y] : sol.comm_links) comm += oct.cost(x, y);
    sol.comm_cost = comm;
    sol.total_cost = sol.travel_cost + comm;
    CHECK(validate(oct, sol).ok());
}

TEST_CASE("solution JSON round-trips and validates") {
    const Instance hex = duotest::hexagon();
    const DuoSolution sol = approx_solve(hex);
    const auto path = std::filesystem::temp_directory_path() / "duo_solution.json";
    save_solution(sol, path.string());
    const DuoSolution back = load_solution(hex, path.string());
    CHECK(back.assignment == sol.assignment);
    CHECK(back.tour1.order == sol.tour1.order);
    CHECK(back.tour2.order == sol.tour2.order);
    CHECK(back.comm_links == sol.comm_links);
    CHECK(validate(hex, back).ok());
    std::filesystem::remove(path);
}

TEST_SUITE_END();
