#ifndef DUO_INSTANCE_HPP
#define DUO_INSTANCE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace duo {

// Tolerance used for every cost comparison in the library.
inline constexpr double kCostEps = 1e-9;

// Thrown when a file cannot be read or parsed.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when data is structurally readable but violates an invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Point {
    double x;
    double y;
};

// A problem instance: 2m targets and a symmetric metric cost matrix.
// Instances are immutable after construction and safe to share between
// concurrent solver runs.
struct Instance {
    std::string id;
    int n_targets = 0;
    std::optional<std::vector<Point>> points;
    std::vector<double> costs;  // row-major n_targets x n_targets

    double cost(int i, int j) const { return costs[static_cast<std::size_t>(i) * n_targets + j]; }
    const double* cost_row(int i) const { return costs.data() + static_cast<std::size_t>(i) * n_targets; }
    int size() const { return n_targets; }
};

// Uniform points on [0, grid_size]^2 from a fixed, portable generator
// (std::mt19937_64; see README). Identical arguments give bit-identical
// instances on every platform.
Instance generate_random(int n_targets, std::uint64_t seed, double grid_size = 500.0);

// Euclidean instance from explicit coordinates. Rejects odd or short point
// lists and near-duplicate points (closer than 1e-9).
Instance from_points(std::vector<Point> points, std::string id = "points");

// Metric instance from an explicit cost matrix (no coordinates). The matrix
// must be symmetric, non-negative, zero-diagonal, and triangle-consistent.
Instance from_cost_matrix(std::vector<std::vector<double>> costs, std::string id = "matrix");

// Throws ValidationError if any Instance invariant fails (parity, size,
// symmetry, diagonal, non-negativity, triangle inequality, point/cost
// consistency).
void check_instance(const Instance& inst);

// JSON persistence. Coordinates and costs are written with 17 significant
// digits so load(save(x)) reproduces x exactly.
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace duo

#endif
