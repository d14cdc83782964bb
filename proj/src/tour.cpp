#include "duo/tour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace duo {

double cycle_cost(const Instance& inst, const std::vector<int>& order) {
    const int k = static_cast<int>(order.size());
    double total = 0.0;
    for (int i = 0; i < k; ++i) total += inst.cost(order[i], order[(i + 1) % k]);
    return total;
}

void canonicalize_cycle(std::vector<int>& order) {
    const auto lowest = std::min_element(order.begin(), order.end());
    std::rotate(order.begin(), lowest, order.end());
    if (order.size() >= 3 && order[1] > order.back())
        std::reverse(order.begin() + 1, order.end());
}

Tour make_tour(const Instance& inst, std::vector<int> order) {
    const int k = static_cast<int>(order.size());
    if (k < 3) throw std::invalid_argument("a tour needs at least 3 vertices");
    std::vector<bool> seen(inst.n_targets, false);
    for (int v : order) {
        if (v < 0 || v >= inst.n_targets)
            throw std::invalid_argument("tour vertex " + std::to_string(v) + " out of range");
        if (seen[v]) throw std::invalid_argument("tour repeats vertex " + std::to_string(v));
        seen[v] = true;
    }
    canonicalize_cycle(order);
    Tour t;
    t.cost = cycle_cost(inst, order);
    t.order = std::move(order);
    return t;
}

void check_tour(const Instance& inst, const Tour& tour) {
    const int k = tour.length();
    if (k < 3) throw ValidationError("tour has fewer than 3 vertices");
    std::vector<bool> seen(inst.n_targets, false);
    for (int v : tour.order) {
        if (v < 0 || v >= inst.n_targets)
            throw ValidationError("tour vertex " + std::to_string(v) + " out of range");
        if (seen[v]) throw ValidationError("tour repeats vertex " + std::to_string(v));
        seen[v] = true;
    }
    if (std::abs(tour.cost - cycle_cost(inst, tour.order)) > kCostEps)
        throw ValidationError("stored tour cost disagrees with edge costs");
    std::vector<int> canon = tour.order;
    canonicalize_cycle(canon);
    if (canon != tour.order) throw ValidationError("tour is not in canonical form");
}

}  // namespace duo
