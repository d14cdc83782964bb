#ifndef DUO_EXACT_HPP
#define DUO_EXACT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "duo/instance.hpp"
#include "duo/solution.hpp"

namespace duo {

inline constexpr double kDefaultExactTimeLimit = 600.0;

struct ExactResult {
    DuoSolution solution;
    bool optimal = false;
    double best_bound = 0.0;
    std::uint64_t nodes_explored = 0;
    double runtime_seconds = 0.0;
};

// Test probe: one entry per incumbent or bound change.
struct SearchTrace {
    std::vector<std::pair<double, double>> events;  // (incumbent cost, proven bound)
};

// Ground-truth oracle: enumerates every balanced partition (vertex 0 pinned
// to vehicle 1), every pair of tour orders, and every cyclic alignment.
// Limited to 12 targets.
ExactResult brute_force_solve(const Instance& inst);

// Best-first branch-and-bound over partition assignments with an admissible
// bound (partial MSTs plus half of each assigned target's cheapest cross
// edge); complete partitions are solved exactly by joint tour/alignment
// optimization. On timeout the incumbent is returned with optimal = false
// and the largest bound proven.
ExactResult exact_solve(const Instance& inst, double time_limit_seconds = kDefaultExactTimeLimit,
                        SearchTrace* trace = nullptr);

}  // namespace duo

#endif
