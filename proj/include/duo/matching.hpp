#ifndef DUO_MATCHING_HPP
#define DUO_MATCHING_HPP

#include <utility>
#include <vector>

#include "duo/instance.hpp"

namespace duo {

// Perfect matching over a vertex subset. Pairs are stored as (lo, hi) and
// sorted ascending, so equal matchings compare equal.
struct Matching {
    std::vector<std::pair<int, int>> pairs;
    double total_cost = 0.0;
};

// Exact minimum-weight perfect matching (Edmonds blossom, primal-dual).
// Every call verifies an LP duality certificate, so a silently suboptimal
// result is impossible. Among equal-cost optima the lexicographically
// smallest sorted pair list is returned.
Matching min_weight_perfect_matching(const Instance& inst, std::vector<int> vertices);

// Exhaustive enumeration over all perfect matchings; the independent test
// oracle. Limited to 12 vertices.
Matching brute_force_matching(const Instance& inst, std::vector<int> vertices);

}  // namespace duo

#endif
