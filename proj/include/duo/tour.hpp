#ifndef DUO_TOUR_HPP
#define DUO_TOUR_HPP

#include <vector>

#include "duo/instance.hpp"

namespace duo {

// Closed tour over a vertex subset, stored in canonical form: rotated so the
// smallest vertex comes first and oriented so the second element is the
// smaller of the first element's two neighbors.
struct Tour {
    std::vector<int> order;
    double cost = 0.0;

    int length() const { return static_cast<int>(order.size()); }
};

// Sum of consecutive edge costs including the closing edge.
double cycle_cost(const Instance& inst, const std::vector<int>& order);

// Rotates/reflects `order` into canonical form in place.
void canonicalize_cycle(std::vector<int>& order);

// Builds a canonical Tour; rejects orders with fewer than 3 vertices,
// repeats, or out-of-range indices.
Tour make_tour(const Instance& inst, std::vector<int> order);

// Throws ValidationError unless `tour` satisfies the Tour invariants
// (distinct in-range vertices, consistent cost, canonical form).
void check_tour(const Instance& inst, const Tour& tour);

}  // namespace duo

#endif
