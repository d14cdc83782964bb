#ifndef DUO_TSP_HPP
#define DUO_TSP_HPP

#include <utility>
#include <vector>

#include "duo/instance.hpp"
#include "duo/tour.hpp"

namespace duo {

// Bitmask-DP size limit; keeps the table under ~20 MB.
inline constexpr int kHeldKarpLimit = 18;

// Default move-evaluation budget for local search.
inline constexpr long kDefaultImproveBudget = 20'000'000;

// Subgradient iterations for the 1-tree bound.
inline constexpr int kDefaultOneTreeIterations = 1000;

struct SpanningTree {
    std::vector<std::pair<int, int>> edges;
    double total_cost = 0.0;
};

// Minimum spanning tree over the induced complete subgraph (Kruskal). Ties
// are broken toward the lexicographically smallest (cost, u, v) edge, so the
// result is deterministic.
SpanningTree minimum_spanning_tree(const Instance& inst, std::vector<int> vertices);

// Christofides' 1.5-approximation: MST + minimum-weight perfect matching on
// the odd-degree vertices + Euler circuit (deterministic Hierholzer, lowest
// vertex first) + shortcutting.
Tour christofides(const Instance& inst, std::vector<int> vertices);

// Exact TSP by Held-Karp dynamic programming; 3..18 vertices.
Tour held_karp(const Instance& inst, std::vector<int> vertices);

// 2-opt + Or-opt (segment lengths 1-3) first-improvement local search in a
// fixed scan order. Never increases cost; stops at a local minimum or when
// the evaluation budget runs out.
Tour improve_tour(const Instance& inst, const Tour& tour,
                  long max_evaluations = kDefaultImproveBudget);

// Held-Karp 1-tree bound with subgradient ascent; valid lower bound on the
// optimal tour cost for any iteration count.
double one_tree_lower_bound(const Instance& inst, std::vector<int> vertices,
                            int iterations = kDefaultOneTreeIterations);

// Lower bound on the optimal tour cost: exact (Held-Karp) up to 18 vertices,
// 1-tree bound beyond.
double tsp_lower_bound(const Instance& inst, std::vector<int> vertices);

}  // namespace duo

#endif
