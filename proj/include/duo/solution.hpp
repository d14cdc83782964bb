#ifndef DUO_SOLUTION_HPP
#define DUO_SOLUTION_HPP

#include <string>
#include <utility>
#include <vector>

#include "duo/instance.hpp"
#include "duo/tour.hpp"

namespace duo {

// Full two-vehicle solution: a balanced partition, one closed tour per
// vehicle, and one communication link per target pairing the two visit
// sequences step by step.
struct DuoSolution {
    std::vector<int> assignment;                   // per vertex: 1 or 2
    Tour tour1, tour2;                             // over the label-1 / label-2 vertices
    std::vector<std::pair<int, int>> comm_links;   // (lo, hi), sorted ascending
    double travel_cost = 0.0;
    double comm_cost = 0.0;
    double total_cost = 0.0;
};

enum class ConstraintFamily {
    cardinality,         // m targets per vehicle
    tour_partition,      // tours are cycles over exactly their label class
    link_multiplicity,   // one link per target, m links total
    cross_partition,     // links join label 1 to label 2
    order_preservation,  // visit sequences pair consistently (shift alignment)
    degree_connectivity, // union graph is connected and 3-regular
    cost_consistency,    // stored costs match recomputed costs
};

std::string constraint_family_name(ConstraintFamily f);

struct Violation {
    ConstraintFamily family;
    std::string detail;
};

struct FeasibilityReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

struct CommLinkSelection {
    std::vector<std::pair<int, int>> links;
    double cost = 0.0;
};

struct AlignmentResult {
    int shift = 0;
    bool reversed = false;
    std::vector<std::pair<int, int>> links;
    double cost = 0.0;
};

struct CostBreakdown {
    double travel = 0.0;
    double comm = 0.0;
    double total = 0.0;
};

// Splits a spanning tour into the tours over its even- and odd-position
// vertices (start_offset 0 or 1). Under the triangle inequality each piece
// costs at most the input tour.
std::pair<Tour, Tour> split_tour(const Instance& inst, const Tour& tour, int start_offset);

// Cheaper of the two alternating edge classes of a spanning tour; ties go to
// the class containing the edge leaving tour position 0.
CommLinkSelection select_comm_links(const Instance& inst, const Tour& tour);

// The 3.75-approximation: Christofides tour, alternate-vertex split,
// cheapest alternating edge class as links.
DuoSolution approx_solve(const Instance& inst);

// Same pipeline with the local-search-improved tour.
DuoSolution heuristic_solve(const Instance& inst);

// Cheapest order-preserving pairing of two equal-length disjoint tours over
// all m cyclic shifts in both traversal directions of tour2 (2m candidates).
AlignmentResult best_alignment(const Instance& inst, const Tour& tour1, const Tour& tour2);

// Replaces the solution's links with the best alignment of its tours when
// that is cheaper. Never increases the total cost.
DuoSolution with_best_alignment(const Instance& inst, const DuoSolution& sol);

// Checks every constraint family and reports all violations; arbitrary
// candidate solutions are accepted without throwing.
FeasibilityReport validate(const Instance& inst, const DuoSolution& sol);

// Recomputed cost breakdown (travel = tour costs, comm = link costs).
CostBreakdown solution_cost(const Instance& inst, const DuoSolution& sol);

// Assembles and validates a solution from parts; assignment and costs are
// derived. Throws ValidationError if the parts are infeasible.
DuoSolution assemble_solution(const Instance& inst, Tour tour1, Tour tour2,
                              std::vector<std::pair<int, int>> comm_links);

// JSON persistence (schema: assignment, tour1, tour2, comm_links, costs).
void save_solution(const DuoSolution& sol, const std::string& path);
DuoSolution load_solution(const Instance& inst, const std::string& path);

}  // namespace duo

#endif
