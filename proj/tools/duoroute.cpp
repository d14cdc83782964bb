// duoroute: command-line front end for the two-vehicle coverage solvers.
//
// Exit codes: 0 success, 1 usage/config error, 2 infeasibility detected,
// 3 time limit reached without an optimum (solve --method exact).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "duo/bench.hpp"
#include "duo/bounds.hpp"
#include "duo/exact.hpp"
#include "duo/instance.hpp"
#include "duo/kernels.hpp"
#include "duo/solution.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kInfeasible = 2;
constexpr int kTimeLimit = 3;

int cmd_generate(int n, std::uint64_t seed, double grid, const std::string& out) {
    const duo::Instance inst = duo::generate_random(n, seed, grid);
    duo::save_instance(inst, out);
    std::printf("wrote %s (%d targets, seed %llu, grid %g)\n", out.c_str(), inst.n_targets,
                static_cast<unsigned long long>(seed), grid);
    return kOk;
}

int cmd_solve(const std::string& instance_path, const std::string& method, bool align,
              double time_limit, const std::string& out) {
    const duo::Instance inst = duo::load_instance(instance_path);
    duo::DuoSolution sol;
    bool timed_out = false;
    if (method == "approx") {
        sol = duo::approx_solve(inst);
    } else if (method == "heuristic") {
        sol = duo::heuristic_solve(inst);
    } else if (method == "exact") {
        const duo::ExactResult r = duo::exact_solve(inst, time_limit);
        sol = r.solution;
        timed_out = !r.optimal;
        std::printf("exact: %s, bound %.6f, %llu nodes, %.2f s\n",
                    r.optimal ? "optimal" : "time limit reached", r.best_bound,
                    static_cast<unsigned long long>(r.nodes_explored), r.runtime_seconds);
    } else if (method == "brute") {
        const duo::ExactResult r = duo::brute_force_solve(inst);
        sol = r.solution;
        std::printf("brute force: %llu partitions, %.2f s\n",
                    static_cast<unsigned long long>(r.nodes_explored), r.runtime_seconds);
    } else {
        std::fprintf(stderr, "unknown method \"%s\"\n", method.c_str());
        return kUsageError;
    }
    if (align) sol = duo::with_best_alignment(inst, sol);
    duo::save_solution(sol, out);
    std::printf("total %.6f (travel %.6f + comm %.6f) -> %s\n", sol.total_cost, sol.travel_cost,
                sol.comm_cost, out.c_str());
    return timed_out ? kTimeLimit : kOk;
}

int cmd_bound(const std::string& instance_path) {
    const duo::Instance inst = duo::load_instance(instance_path);
    const duo::BoundReport r = duo::lower_bound(inst);
    std::printf("tsp_component      %.6f (%s)\n", r.tsp_component,
                r.tsp_exact ? "exact" : "1-tree");
    std::printf("matching_component %.6f\n", r.matching_component);
    std::printf("tsp_matching_bound %.6f\n", r.tsp_matching_bound);
    std::printf("mst_matching_bound %.6f\n", r.mst_matching_bound);
    std::printf("best               %.6f\n", r.best);
    return kOk;
}

int cmd_validate(const std::string& instance_path, const std::string& solution_path) {
    const duo::Instance inst = duo::load_instance(instance_path);
    const duo::DuoSolution sol = duo::load_solution(inst, solution_path);
    const duo::FeasibilityReport rep = duo::validate(inst, sol);
    std::printf("%s", rep.to_string().c_str());
    if (rep.ok()) {
        std::printf("\n");
        return kOk;
    }
    return kInfeasible;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir) {
    const duo::BenchConfig cfg = duo::load_bench_config(config_path);
    const auto records = duo::run_suite(cfg, out_dir);
    bool any_infeasible = false;
    for (const auto& r : records)
        for (const auto& [name, out] : r.by_solver)
            if (!out.feasible) {
                any_infeasible = true;
                std::fprintf(stderr, "infeasible: %s on %s\n", name.c_str(),
                             r.instance_id.c_str());
            }
    std::printf("%zu records -> %s (records.csv, aggregate.csv, timings.csv)\n", records.size(),
                out_dir.c_str());
    return any_infeasible ? kInfeasible : kOk;
}

int cmd_render(const std::string& instance_path, const std::string& solution_path,
               const std::string& out) {
    const duo::Instance inst = duo::load_instance(instance_path);
    const duo::DuoSolution sol = duo::load_solution(inst, solution_path);
    duo::render_solution(inst, sol, out);
    std::printf("wrote %s\n", out.c_str());
    return kOk;
}

int cmd_report(const std::string& csv_path) {
    std::ifstream f(csv_path);
    if (!f) {
        std::fprintf(stderr, "cannot open %s\n", csv_path.c_str());
        return kUsageError;
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t cols = 0;
    while (std::getline(f, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        if (!line.empty() && line.back() == ',') row.push_back("");
        cols = std::max(cols, row.size());
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(cols, 0);
    for (auto& row : rows) {
        row.resize(cols);
        for (std::size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < cols; ++c)
            std::printf("%-*s%s", static_cast<int>(width[c]), row[c].c_str(),
                        c + 1 < cols ? "  " : "");
        std::printf("\n");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-vehicle cooperative coverage routing"};
    app.require_subcommand(1);

    // generate
    int gen_n = 0;
    std::uint64_t gen_seed = 0;
    double gen_grid = 500.0;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "generate a random instance");
    gen->add_option("--n", gen_n, "number of targets (even, >= 6)")->required();
    gen->add_option("--seed", gen_seed, "random seed")->required();
    gen->add_option("--grid", gen_grid, "grid side length");
    gen->add_option("--out", gen_out, "output instance JSON")->required();

    // solve
    std::string sol_instance, sol_method, sol_out;
    bool sol_align = false;
    double sol_time_limit = duo::kDefaultExactTimeLimit;
    auto* solve = app.add_subcommand("solve", "solve an instance");
    solve->add_option("--instance", sol_instance, "instance JSON")->required();
    solve->add_option("--method", sol_method, "approx | heuristic | exact | brute")->required();
    solve->add_flag("--align", sol_align, "apply the best-alignment link post-pass");
    solve->add_option("--time-limit", sol_time_limit, "seconds (exact only)");
    solve->add_option("--out", sol_out, "output solution JSON")->required();

    // bound
    std::string bound_instance;
    auto* bound = app.add_subcommand("bound", "print lower bounds");
    bound->add_option("--instance", bound_instance, "instance JSON")->required();

    // validate
    std::string val_instance, val_solution;
    auto* val = app.add_subcommand("validate", "check a solution against an instance");
    val->add_option("--instance", val_instance, "instance JSON")->required();
    val->add_option("--solution", val_solution, "solution JSON")->required();

    // bench
    std::string bench_config, bench_out_dir;
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("--config", bench_config, "suite config JSON")->required();
    bench->add_option("--out-dir", bench_out_dir, "output directory for CSV files")->required();

    // render
    std::string ren_instance, ren_solution, ren_out;
    auto* ren = app.add_subcommand("render", "draw a solution as SVG");
    ren->add_option("--instance", ren_instance, "instance JSON")->required();
    ren->add_option("--solution", ren_solution, "solution JSON")->required();
    ren->add_option("--out", ren_out, "output SVG path")->required();

    // report
    std::string rep_in;
    auto* rep = app.add_subcommand("report", "pretty-print an aggregate CSV");
    rep->add_option("--in", rep_in, "CSV file (e.g. aggregate.csv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_n, gen_seed, gen_grid, gen_out);
        if (solve->parsed())
            return cmd_solve(sol_instance, sol_method, sol_align, sol_time_limit, sol_out);
        if (bound->parsed()) return cmd_bound(bound_instance);
        if (val->parsed()) return cmd_validate(val_instance, val_solution);
        if (bench->parsed()) return cmd_bench(bench_config, bench_out_dir);
        if (ren->parsed()) return cmd_render(ren_instance, ren_solution, ren_out);
        if (rep->parsed()) return cmd_report(rep_in);
    } catch (const duo::ValidationError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kInfeasible;
    } catch (const duo::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsageError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kUsageError;
    }
    return kUsageError;
}
