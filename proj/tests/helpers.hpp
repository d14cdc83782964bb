// Shared fixtures and independent oracles for the test suites.
#ifndef DUO_TESTS_HELPERS_HPP
#define DUO_TESTS_HELPERS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "duo/instance.hpp"

namespace duotest {

inline constexpr double kPi = 3.14159265358979323846;

// Regular hexagon with circumradius 1: adjacent targets at distance 1,
// skip-one at sqrt(3), opposite at 2.
inline duo::Instance hexagon() {
    std::vector<duo::Point> pts;
    for (int i = 0; i < 6; ++i)
        pts.push_back({std::cos(kPi / 3.0 * i), std::sin(kPi / 3.0 * i)});
    return duo::from_points(pts, "hexagon");
}

// Unit-spaced collinear targets 0..5 on the x axis.
inline duo::Instance collinear6() {
    std::vector<duo::Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({static_cast<double>(i), 0.0});
    return duo::from_points(pts, "collinear6");
}

inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

// Exact minimum-weight perfect matching by subset DP; an oracle independent
// of both the blossom solver and the pairing enumeration. Up to ~20 vertices.
inline double dp_matching_cost(const duo::Instance& inst, const std::vector<int>& verts) {
    const int k = static_cast<int>(verts.size());
    const std::size_t full = std::size_t{1} << k;
    std::vector<double> dp(full, std::numeric_limits<double>::infinity());
    dp[0] = 0.0;
    for (std::size_t mask = 1; mask < full; ++mask) {
        int u = 0;
        while (!(mask >> u & 1)) ++u;
        if (std::popcount(mask) % 2 != 0) continue;
        for (int v = u + 1; v < k; ++v) {
            if (!(mask >> v & 1)) continue;
            const std::size_t rest = mask & ~(std::size_t{1} << u) & ~(std::size_t{1} << v);
            dp[mask] = std::min(dp[mask], dp[rest] + inst.cost(verts[u], verts[v]));
        }
    }
    return dp[full - 1];
}

// Exhaustive enumeration of the 2m cyclic alignments of two visit orders;
// returns the cheapest pairing cost. Oracle for best_alignment.
inline double enumerate_alignment_cost(const duo::Instance& inst, const std::vector<int>& a,
                                       std::vector<int> b) {
    const int m = static_cast<int>(a.size());
    double best = std::numeric_limits<double>::infinity();
    for (int dir = 0; dir < 2; ++dir) {
        if (dir == 1) std::reverse(b.begin(), b.end());
        for (int l = 0; l < m; ++l) {
            double cost = 0.0;
            for (int i = 0; i < m; ++i) cost += inst.cost(a[i], b[(i + l) % m]);
            best = std::min(best, cost);
        }
    }
    return best;
}

// Exact TSP cost by (k-1)! enumeration with a fixed first vertex; usable to
// about 9 vertices.
inline double brute_tsp_cost(const duo::Instance& inst, std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    std::vector<int> rest(verts.begin() + 1, verts.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = inst.cost(verts[0], rest.front());
        for (std::size_t i = 0; i + 1 < rest.size(); ++i) cost += inst.cost(rest[i], rest[i + 1]);
        cost += inst.cost(rest.back(), verts[0]);
        best = std::min(best, cost);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

}  // namespace duotest

#endif
