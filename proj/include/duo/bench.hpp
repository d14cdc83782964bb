#ifndef DUO_BENCH_HPP
#define DUO_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duo/bounds.hpp"
#include "duo/instance.hpp"
#include "duo/solution.hpp"

namespace duo {

// Suite configuration (JSON keys of the same names).
struct BenchConfig {
    std::vector<int> counts;            // target counts, each even >= 6
    int per_count = 1;                  // instances per count
    std::uint64_t base_seed = 0;
    double grid = 500.0;
    std::vector<std::string> solvers;   // approx | heuristic | exact | brute | bounds
    double time_limit_seconds = 600.0;  // per exact solve
};

BenchConfig load_bench_config(const std::string& path);

struct SolverOutcome {
    bool ran = false;
    double cost = 0.0;
    double runtime_seconds = 0.0;
    bool feasible = false;
    bool optimal = false;  // exact / brute only
    std::optional<double> apost_ratio;
    std::optional<double> ratio_to_lb;
};

struct BenchRecord {
    std::string instance_id;
    int n_targets = 0;
    int index = 0;
    std::optional<double> lower_bound_best;
    double bounds_runtime_seconds = 0.0;
    std::map<std::string, SolverOutcome> by_solver;
};

// Deterministic per-instance seed derivation (documented in the README).
std::uint64_t bench_instance_seed(std::uint64_t base_seed, int count, int index);

// Generates instances, runs the enabled solvers, validates every solution,
// and writes records.csv / aggregate.csv (runtime-free, byte-deterministic)
// plus timings.csv / aggregate_timings.csv into out_dir.
std::vector<BenchRecord> run_suite(const BenchConfig& config, const std::string& out_dir);

// Draws targets (black dots), the two tours (blue/red closed paths), and the
// communication links (green dashed segments) into an SVG file. Refuses
// infeasible solutions and instances without coordinates.
void render_solution(const Instance& inst, const DuoSolution& sol, const std::string& path);

}  // namespace duo

#endif
