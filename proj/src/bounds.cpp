#include "duo/bounds.hpp"

#include <algorithm>
#include <vector>

#include "duo/matching.hpp"
#include "duo/tsp.hpp"

namespace duo {

namespace {

std::vector<int> all_vertices(const Instance& inst) {
    std::vector<int> v(inst.n_targets);
    for (int i = 0; i < inst.n_targets; ++i) v[i] = i;
    return v;
}

}  // namespace

double mst_matching_bound(const Instance& inst) {
    const auto all = all_vertices(inst);
    const SpanningTree mst = minimum_spanning_tree(inst, all);

    std::vector<int> degree(inst.n_targets, 0);
    for (const auto& [u, v] : mst.edges) {
        ++degree[u];
        ++degree[v];
    }
    std::vector<int> even;
    for (int v = 0; v < inst.n_targets; ++v)
        if (degree[v] % 2 == 0) even.push_back(v);

    // |even| is even because |V| is even and odd-degree vertices pair up.
    double matching = 0.0;
    if (!even.empty()) matching = min_weight_perfect_matching(inst, even).total_cost;
    return mst.total_cost + matching;
}

BoundReport lower_bound(const Instance& inst) {
    const auto all = all_vertices(inst);
    BoundReport r;
    r.tsp_component = tsp_lower_bound(inst, all);
    r.tsp_exact = inst.n_targets <= kHeldKarpLimit;
    r.matching_component = min_weight_perfect_matching(inst, all).total_cost;
    r.tsp_matching_bound = r.tsp_component + r.matching_component;
    r.mst_matching_bound = mst_matching_bound(inst);
    r.best = std::max(r.tsp_matching_bound, r.mst_matching_bound);
    return r;
}

}  // namespace duo
