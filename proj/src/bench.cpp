#include "duo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "duo/exact.hpp"
#include "json.hpp"

namespace duo {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kSolverOrder = {"approx", "heuristic", "exact", "brute"};

bool is_known_solver(const std::string& s) {
    return s == "bounds" ||
           std::find(kSolverOrder.begin(), kSolverOrder.end(), s) != kSolverOrder.end();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t bench_instance_seed(std::uint64_t base_seed, int count, int index) {
    const std::uint64_t tag =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(count)) << 32) |
        static_cast<std::uint32_t>(index);
    return splitmix64(base_seed ^ splitmix64(tag));
}

BenchConfig load_bench_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    try {
        BenchConfig cfg;
        if (!j.contains("counts")) throw std::invalid_argument(path + ": missing \"counts\"");
        cfg.counts = j["counts"].get<std::vector<int>>();
        if (!j.contains("per_count")) throw std::invalid_argument(path + ": missing \"per_count\"");
        cfg.per_count = j["per_count"].get<int>();
        if (!j.contains("solvers")) throw std::invalid_argument(path + ": missing \"solvers\"");
        cfg.solvers = j["solvers"].get<std::vector<std::string>>();
        if (j.contains("base_seed")) cfg.base_seed = j["base_seed"].get<std::uint64_t>();
        if (j.contains("grid")) cfg.grid = j["grid"].get<double>();
        if (j.contains("time_limit_seconds"))
            cfg.time_limit_seconds = j["time_limit_seconds"].get<double>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace {

void check_config(const BenchConfig& cfg) {
    if (cfg.counts.empty()) throw std::invalid_argument("bench config: counts must be non-empty");
    for (int c : cfg.counts)
        if (c < 6 || c % 2 != 0)
            throw std::invalid_argument("bench config: target counts must be even and >= 6");
    if (cfg.per_count < 1) throw std::invalid_argument("bench config: per_count must be >= 1");
    if (cfg.solvers.empty())
        throw std::invalid_argument("bench config: solvers must be non-empty");
    for (const auto& s : cfg.solvers)
        if (!is_known_solver(s))
            throw std::invalid_argument("bench config: unknown solver \"" + s + "\"");
    if (!(cfg.grid > 0.0)) throw std::invalid_argument("bench config: grid must be positive");
}

struct SolveOutput {
    DuoSolution solution;
    bool optimal = false;
};

}  // namespace

std::vector<BenchRecord> run_suite(const BenchConfig& cfg, const std::string& out_dir) {
    check_config(cfg);
    std::filesystem::create_directories(out_dir);

    const bool want_bounds =
        std::find(cfg.solvers.begin(), cfg.solvers.end(), "bounds") != cfg.solvers.end();
    std::vector<std::string> solvers;
    for (const auto& s : kSolverOrder)
        if (std::find(cfg.solvers.begin(), cfg.solvers.end(), s) != cfg.solvers.end())
            solvers.push_back(s);

    std::vector<BenchRecord> records;
    for (int count : cfg.counts) {
        for (int index = 0; index < cfg.per_count; ++index) {
            const std::uint64_t seed = bench_instance_seed(cfg.base_seed, count, index);
            Instance inst = generate_random(count, seed, cfg.grid);
            inst.id = "bench-n" + std::to_string(count) + "-i" + std::to_string(index);

            BenchRecord rec;
            rec.instance_id = inst.id;
            rec.n_targets = count;
            rec.index = index;

            if (want_bounds) {
                const auto t0 = Clock::now();
                rec.lower_bound_best = lower_bound(inst).best;
                rec.bounds_runtime_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            }

            for (const auto& name : solvers) {
                SolverOutcome out;
                out.ran = true;
                const auto t0 = Clock::now();
                SolveOutput so;
                if (name == "approx") {
                    so.solution = approx_solve(inst);
                } else if (name == "heuristic") {
                    so.solution = heuristic_solve(inst);
                } else if (name == "exact") {
                    ExactResult r = exact_solve(inst, cfg.time_limit_seconds);
                    so.solution = std::move(r.solution);
                    so.optimal = r.optimal;
                } else {
                    ExactResult r = brute_force_solve(inst);
                    so.solution = std::move(r.solution);
                    so.optimal = r.optimal;
                }
                out.runtime_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
                out.optimal = so.optimal;
                out.cost = so.solution.total_cost;

                // Feasibility gate: validator plus cost re-derivation.
                const FeasibilityReport rep = validate(inst, so.solution);
                const CostBreakdown cb = solution_cost(inst, so.solution);
                out.feasible = rep.ok() && std::abs(cb.total - out.cost) <= kCostEps;
                rec.by_solver[name] = out;
            }

            // Ratios need the reference values in place first.
            std::optional<double> exact_cost;
            if (auto it = rec.by_solver.find("exact");
                it != rec.by_solver.end() && it->second.optimal && it->second.feasible)
                exact_cost = it->second.cost;
            else if (auto bt = rec.by_solver.find("brute");
                     bt != rec.by_solver.end() && bt->second.feasible)
                exact_cost = bt->second.cost;
            for (auto& [name, out] : rec.by_solver) {
                if (!out.feasible) continue;
                if (exact_cost && (name == "approx" || name == "heuristic"))
                    out.apost_ratio = out.cost / *exact_cost;
                if (rec.lower_bound_best && *rec.lower_bound_best > 0.0)
                    out.ratio_to_lb = out.cost / *rec.lower_bound_best;
            }
            records.push_back(std::move(rec));
        }
    }

    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        if (a.n_targets != b.n_targets) return a.n_targets < b.n_targets;
        return a.index < b.index;
    });

    // records.csv: everything except runtimes, byte-deterministic.
    {
        std::ostringstream out;
        out << "instance_id,n_targets,index,lower_bound";
        for (const auto& s : solvers) {
            out << ',' << s << "_cost," << s << "_feasible";
            if (s == "exact" || s == "brute") out << ',' << s << "_optimal";
            out << ',' << s << "_apost_ratio," << s << "_ratio_lb";
        }
        out << '\n';
        for (const auto& r : records) {
            out << r.instance_id << ',' << r.n_targets << ',' << r.index << ','
                << (r.lower_bound_best ? fmt(*r.lower_bound_best) : std::string());
            for (const auto& s : solvers) {
                const SolverOutcome& o = r.by_solver.at(s);
                out << ',' << fmt(o.cost) << ',' << (o.feasible ? "1" : "0");
                if (s == "exact" || s == "brute") out << ',' << (o.optimal ? "1" : "0");
                out << ',' << opt_fmt(o.apost_ratio) << ',' << opt_fmt(o.ratio_to_lb);
            }
            out << '\n';
        }
        std::ofstream f(std::filesystem::path(out_dir) / "records.csv", std::ios::binary);
        f << out.str();
    }

    // timings.csv: the runtime column set, excluded from determinism checks.
    {
        std::ostringstream out;
        out << "instance_id,n_targets,index";
        if (want_bounds) out << ",bounds_runtime_seconds";
        for (const auto& s : solvers) out << ',' << s << "_runtime_seconds";
        out << '\n';
        for (const auto& r : records) {
            out << r.instance_id << ',' << r.n_targets << ',' << r.index;
            if (want_bounds) out << ',' << fmt(r.bounds_runtime_seconds);
            for (const auto& s : solvers) out << ',' << fmt(r.by_solver.at(s).runtime_seconds);
            out << '\n';
        }
        std::ofstream f(std::filesystem::path(out_dir) / "timings.csv", std::ios::binary);
        f << out.str();
    }

    // Aggregates per size (Table I / III shape).
    {
        std::ostringstream out, tim;
        out << "n_targets,instances";
        for (const auto& s : solvers)
            out << ',' << s << "_mean_apost_ratio," << s << "_mean_ratio_lb," << s
                << "_solved_count";
        out << '\n';
        tim << "n_targets,instances";
        if (want_bounds) tim << ",bounds_mean_runtime_seconds";
        for (const auto& s : solvers) tim << ',' << s << "_mean_runtime_seconds";
        tim << '\n';
        for (int count : cfg.counts) {
            out << count << ',' << cfg.per_count;
            tim << count << ',' << cfg.per_count;
            if (want_bounds) {
                double rt = 0.0;
                for (const auto& r : records)
                    if (r.n_targets == count) rt += r.bounds_runtime_seconds;
                tim << ',' << fmt(rt / cfg.per_count);
            }
            for (const auto& s : solvers) {
                double apost = 0.0, lbr = 0.0, rt = 0.0;
                int n_apost = 0, n_lbr = 0, n_rt = 0, solved = 0;
                for (const auto& r : records) {
                    if (r.n_targets != count) continue;
                    const SolverOutcome& o = r.by_solver.at(s);
                    rt += o.runtime_seconds;
                    ++n_rt;
                    if (o.apost_ratio) {
                        apost += *o.apost_ratio;
                        ++n_apost;
                    }
                    if (o.ratio_to_lb) {
                        lbr += *o.ratio_to_lb;
                        ++n_lbr;
                    }
                    solved += o.feasible && ((s != "exact" && s != "brute") || o.optimal);
                }
                out << ',' << (n_apost ? fmt(apost / n_apost) : std::string()) << ','
                    << (n_lbr ? fmt(lbr / n_lbr) : std::string()) << ',' << solved;
                tim << ',' << (n_rt ? fmt(rt / n_rt) : std::string());
            }
            out << '\n';
            tim << '\n';
        }
        std::ofstream fa(std::filesystem::path(out_dir) / "aggregate.csv", std::ios::binary);
        fa << out.str();
        std::ofstream ft(std::filesystem::path(out_dir) / "aggregate_timings.csv",
                         std::ios::binary);
        ft << tim.str();
    }

    return records;
}

void render_solution(const Instance& inst, const DuoSolution& sol, const std::string& path) {
    const FeasibilityReport rep = validate(inst, sol);
    if (!rep.ok())
        throw ValidationError("refusing to render an infeasible solution: " + rep.to_string());
    if (!inst.points)
        throw std::invalid_argument("instance has no coordinates to draw");

    const auto& pts = *inst.points;
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double size = 800.0, margin = 40.0;  // 5% margins on a fixed canvas
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double scale = (size - 2.0 * margin) / span;
    auto X = [&](int v) { return margin + (pts[v].x - min_x) * scale; };
    auto Y = [&](int v) { return size - margin - (pts[v].y - min_y) * scale; };
    auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    svg << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    auto tour_path = [&](const Tour& t, const char* color) {
        svg << "<path d=\"M " << coord(X(t.order[0])) << ' ' << coord(Y(t.order[0]));
        for (int i = 1; i < t.length(); ++i)
            svg << " L " << coord(X(t.order[i])) << ' ' << coord(Y(t.order[i]));
        svg << " Z\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    };
    tour_path(sol.tour1, "blue");
    tour_path(sol.tour2, "red");
    for (const auto& [a, b] : sol.comm_links)
        svg << "<line x1=\"" << coord(X(a)) << "\" y1=\"" << coord(Y(a)) << "\" x2=\""
            << coord(X(b)) << "\" y2=\"" << coord(Y(b))
            << "\" stroke=\"green\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    for (int v = 0; v < inst.n_targets; ++v)
        svg << "<circle cx=\"" << coord(X(v)) << "\" cy=\"" << coord(Y(v))
            << "\" r=\"4\" fill=\"black\"/>\n";
    svg << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << svg.str();
    if (!f) throw ParseError("failed to write " + path);
}

}  // namespace duo
