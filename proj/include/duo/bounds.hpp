#ifndef DUO_BOUNDS_HPP
#define DUO_BOUNDS_HPP

#include "duo/instance.hpp"

namespace duo {

// Lower bounds on the optimal two-vehicle cost.
struct BoundReport {
    double tsp_component = 0.0;       // lower bound on a spanning single tour
    double matching_component = 0.0;  // minimum perfect matching over all targets
    double tsp_matching_bound = 0.0;  // sum of the two components
    double mst_matching_bound = 0.0;  // MST + matching over even-degree MST vertices
    double best = 0.0;                // max of the two bounds
    bool tsp_exact = false;           // tsp_component came from Held-Karp, not the 1-tree
};

// tsp_component + matching_component: any optimal solution contains a
// spanning tour (>= TSP bound) and a disjoint perfect matching (>= matching
// optimum), so the sum is a valid lower bound.
BoundReport lower_bound(const Instance& inst);

// MST cost plus the minimum matching over the even-degree MST vertices.
double mst_matching_bound(const Instance& inst);

}  // namespace duo

#endif
