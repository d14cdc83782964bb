#include "duo/solution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "duo/kernels.hpp"
#include "duo/tsp.hpp"
#include "json.hpp"

namespace duo {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<int> all_vertices(const Instance& inst) {
    std::vector<int> v(inst.n_targets);
    for (int i = 0; i < inst.n_targets; ++i) v[i] = i;
    return v;
}

std::vector<std::pair<int, int>> normalized_links(std::vector<std::pair<int, int>> links) {
    for (auto& [a, b] : links)
        if (a > b) std::swap(a, b);
    std::sort(links.begin(), links.end());
    return links;
}

double links_cost(const Instance& inst, const std::vector<std::pair<int, int>>& links) {
    double c = 0.0;
    for (const auto& [a, b] : links) c += inst.cost(a, b);
    return c;
}

// Cycle edges of a raw visit order (tolerates malformed candidates).
std::vector<std::pair<int, int>> cycle_edges(const std::vector<int>& order) {
    std::vector<std::pair<int, int>> edges;
    const int k = static_cast<int>(order.size());
    if (k < 2) return edges;
    for (int i = 0; i < k; ++i) {
        const int a = order[i], b = order[(i + 1) % k];
        if (a != b) edges.emplace_back(a, b);
    }
    return edges;
}

}  // namespace

std::string constraint_family_name(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::cardinality: return "cardinality";
        case ConstraintFamily::tour_partition: return "tour-partition";
        case ConstraintFamily::link_multiplicity: return "link-multiplicity";
        case ConstraintFamily::cross_partition: return "cross-partition";
        case ConstraintFamily::order_preservation: return "order-preservation";
        case ConstraintFamily::degree_connectivity: return "degree-connectivity";
        case ConstraintFamily::cost_consistency: return "cost-consistency";
    }
    return "unknown";
}

std::string FeasibilityReport::to_string() const {
    if (ok()) return "feasible";
    std::ostringstream out;
    out << violations.size() << " violation(s):\n";
    for (const auto& v : violations)
        out << "  [" << constraint_family_name(v.family) << "] " << v.detail << "\n";
    return out.str();
}

std::pair<Tour, Tour> split_tour(const Instance& inst, const Tour& tour, int start_offset) {
    if (start_offset != 0 && start_offset != 1)
        throw std::invalid_argument("split_tour start_offset must be 0 or 1");
    if (tour.length() != inst.n_targets)
        throw std::invalid_argument("split_tour needs a tour spanning all targets");
    check_tour(inst, tour);

    std::vector<int> a, b;
    for (int i = 0; i < tour.length(); ++i)
        ((i % 2 == start_offset) ? a : b).push_back(tour.order[i]);
    return {make_tour(inst, std::move(a)), make_tour(inst, std::move(b))};
}

CommLinkSelection select_comm_links(const Instance& inst, const Tour& tour) {
    if (tour.length() != inst.n_targets)
        throw std::invalid_argument("select_comm_links needs a tour spanning all targets");
    check_tour(inst, tour);

    const int n = tour.length();
    double cost_even = 0.0, cost_odd = 0.0;
    for (int p = 0; p < n; ++p) {
        const double c = inst.cost(tour.order[p], tour.order[(p + 1) % n]);
        (p % 2 == 0 ? cost_even : cost_odd) += c;
    }

    // Ties go to the class containing the edge leaving position 0.
    const int keep = (cost_even <= cost_odd) ? 0 : 1;
    CommLinkSelection out;
    out.cost = keep == 0 ? cost_even : cost_odd;
    for (int p = keep; p < n; p += 2)
        out.links.emplace_back(tour.order[p], tour.order[(p + 1) % n]);
    out.links = normalized_links(std::move(out.links));
    return out;
}

DuoSolution assemble_solution(const Instance& inst, Tour tour1, Tour tour2,
                              std::vector<std::pair<int, int>> comm_links) {
    DuoSolution sol;
    sol.assignment.assign(inst.n_targets, 0);
    for (int v : tour1.order) sol.assignment[v] = 1;
    for (int v : tour2.order) sol.assignment[v] = 2;
    sol.tour1 = std::move(tour1);
    sol.tour2 = std::move(tour2);
    sol.comm_links = normalized_links(std::move(comm_links));
    sol.travel_cost = sol.tour1.cost + sol.tour2.cost;
    sol.comm_cost = links_cost(inst, sol.comm_links);
    sol.total_cost = sol.travel_cost + sol.comm_cost;

    const FeasibilityReport rep = validate(inst, sol);
    if (!rep.ok())
        throw ValidationError("assembled solution is infeasible: " + rep.to_string());
    return sol;
}

DuoSolution approx_solve(const Instance& inst) {
    const Tour t = christofides(inst, all_vertices(inst));
    auto [t1, t2] = split_tour(inst, t, 0);
    CommLinkSelection links = select_comm_links(inst, t);
    return assemble_solution(inst, std::move(t1), std::move(t2), std::move(links.links));
}

DuoSolution heuristic_solve(const Instance& inst) {
    const Tour t = improve_tour(inst, christofides(inst, all_vertices(inst)));
    auto [t1, t2] = split_tour(inst, t, 0);
    CommLinkSelection links = select_comm_links(inst, t);
    return assemble_solution(inst, std::move(t1), std::move(t2), std::move(links.links));
}

AlignmentResult best_alignment(const Instance& inst, const Tour& tour1, const Tour& tour2) {
    const int m = tour1.length();
    if (tour2.length() != m)
        throw std::invalid_argument("best_alignment needs tours of equal length");
    {
        std::vector<bool> seen(inst.n_targets, false);
        for (int v : tour1.order) seen[v] = true;
        for (int v : tour2.order)
            if (seen[v])
                throw std::invalid_argument("best_alignment needs disjoint tours, vertex " +
                                            std::to_string(v) + " is shared");
    }

    const std::vector<int>& a = tour1.order;
    AlignmentResult best;
    best.cost = std::numeric_limits<double>::infinity();

    std::vector<double> row(m), acc(m);
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> b = tour2.order;
        if (dir == 1) std::reverse(b.begin(), b.end());

        // acc[l] = sum_i c(a[i], b[(i + l) mod m]) via the rotation kernel.
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double* crow = inst.cost_row(a[i]);
            for (int j = 0; j < m; ++j) row[j] = crow[b[j]];
            kernels::rotate_accumulate(acc.data(), row.data(), i, m);
        }
        for (int l = 0; l < m; ++l) {
            if (acc[l] < best.cost) {
                best.cost = acc[l];
                best.shift = l;
                best.reversed = (dir == 1);
                best.links.clear();
                for (int i = 0; i < m; ++i) best.links.emplace_back(a[i], b[(i + l) % m]);
            }
        }
    }
    best.links = normalized_links(std::move(best.links));
    return best;
}

DuoSolution with_best_alignment(const Instance& inst, const DuoSolution& sol) {
    const AlignmentResult aligned = best_alignment(inst, sol.tour1, sol.tour2);
    if (aligned.cost >= solution_cost(inst, sol).comm - kCostEps) return sol;
    return assemble_solution(inst, sol.tour1, sol.tour2, aligned.links);
}

CostBreakdown solution_cost(const Instance& inst, const DuoSolution& sol) {
    CostBreakdown cb;
    cb.travel = cycle_cost(inst, sol.tour1.order) + cycle_cost(inst, sol.tour2.order);
    cb.comm = links_cost(inst, sol.comm_links);
    cb.total = cb.travel + cb.comm;
    return cb;
}

FeasibilityReport validate(const Instance& inst, const DuoSolution& sol) {
    FeasibilityReport rep;
    const int n = inst.n_targets;
    const int m = n / 2;
    auto add = [&](ConstraintFamily f, std::string d) {
        rep.violations.push_back({f, std::move(d)});
    };

    // Shape: everything below indexes by vertex, so bail out on bad indices.
    bool shape_ok = true;
    if (static_cast<int>(sol.assignment.size()) != n) {
        add(ConstraintFamily::cardinality,
            "assignment has " + std::to_string(sol.assignment.size()) + " entries, expected " +
                std::to_string(n));
        shape_ok = false;
    } else {
        for (int i = 0; i < n; ++i)
            if (sol.assignment[i] != 1 && sol.assignment[i] != 2) {
                add(ConstraintFamily::cardinality,
                    "assignment[" + std::to_string(i) + "] is not 1 or 2");
                shape_ok = false;
            }
    }
    auto range_ok = [&](const std::vector<int>& vs) {
        for (int v : vs)
            if (v < 0 || v >= n) return false;
        return true;
    };
    if (!range_ok(sol.tour1.order) || !range_ok(sol.tour2.order)) {
        add(ConstraintFamily::tour_partition, "tour contains an out-of-range vertex");
        shape_ok = false;
    }
    for (const auto& [x, y] : sol.comm_links)
        if (x < 0 || x >= n || y < 0 || y >= n) {
            add(ConstraintFamily::link_multiplicity, "link endpoint out of range");
            shape_ok = false;
        }
    if (!shape_ok) return rep;

    // Cardinality: m targets per label.
    int count1 = 0;
    for (int v : sol.assignment) count1 += (v == 1);
    if (count1 != m)
        add(ConstraintFamily::cardinality, "label 1 has " + std::to_string(count1) +
                                               " targets, expected " + std::to_string(m));

    // Tour/partition consistency.
    auto check_tour_set = [&](const Tour& t, int label, const char* name) {
        std::vector<int> seen(n, 0);
        for (int v : t.order) {
            if (seen[v]++)
                add(ConstraintFamily::tour_partition,
                    std::string(name) + " repeats vertex " + std::to_string(v));
        }
        for (int v = 0; v < n; ++v) {
            const bool in_tour = seen[v] > 0;
            const bool in_class = sol.assignment[v] == label;
            if (in_tour && !in_class)
                add(ConstraintFamily::tour_partition, std::string(name) + " visits vertex " +
                                                          std::to_string(v) +
                                                          " of the other class");
            if (!in_tour && in_class)
                add(ConstraintFamily::tour_partition, std::string(name) + " misses vertex " +
                                                          std::to_string(v));
        }
    };
    check_tour_set(sol.tour1, 1, "tour1");
    check_tour_set(sol.tour2, 2, "tour2");

    // Link multiplicity: each target communicates exactly once.
    std::vector<int> link_count(n, 0);
    for (const auto& [x, y] : sol.comm_links) {
        ++link_count[x];
        ++link_count[y];
    }
    if (static_cast<int>(sol.comm_links.size()) != m)
        add(ConstraintFamily::link_multiplicity,
            std::to_string(sol.comm_links.size()) + " links, expected " + std::to_string(m));
    for (int v = 0; v < n; ++v)
        if (link_count[v] != 1)
            add(ConstraintFamily::link_multiplicity, "vertex " + std::to_string(v) + " has " +
                                                         std::to_string(link_count[v]) +
                                                         " links");

    // Links must cross the partition.
    for (const auto& [x, y] : sol.comm_links)
        if (sol.assignment[x] == sol.assignment[y])
            add(ConstraintFamily::cross_partition, "link (" + std::to_string(x) + ", " +
                                                       std::to_string(y) +
                                                       ") joins same-class targets");

    // Order preservation (Lemma 1): for every ordered pair (i, l) there is a
    // tour1 step into a link ending at l exactly when there is a link from i
    // into a tour2 step ending at l.
    std::vector<char> adj1(static_cast<std::size_t>(n) * n, 0), adj2(adj1);
    for (const auto& [x, y] : cycle_edges(sol.tour1.order))
        adj1[static_cast<std::size_t>(x) * n + y] = adj1[static_cast<std::size_t>(y) * n + x] = 1;
    for (const auto& [x, y] : cycle_edges(sol.tour2.order))
        adj2[static_cast<std::size_t>(x) * n + y] = adj2[static_cast<std::size_t>(y) * n + x] = 1;
    std::vector<std::vector<int>> partners(n);
    for (const auto& [x, y] : sol.comm_links) {
        partners[x].push_back(y);
        partners[y].push_back(x);
    }
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (i == l) continue;
            bool lhs = false, rhs = false;
            for (int j : partners[l]) lhs = lhs || adj1[static_cast<std::size_t>(i) * n + j];
            for (int k : partners[i]) rhs = rhs || adj2[static_cast<std::size_t>(k) * n + l];
            if (lhs != rhs)
                add(ConstraintFamily::order_preservation,
                    "pair (" + std::to_string(i) + ", " + std::to_string(l) +
                        "): tour1-side and tour2-side disagree");
        }

    // Union graph: 3-regular and connected.
    std::vector<std::vector<int>> adj(n);
    auto add_union_edge = [&](int x, int y) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    };
    for (const auto& [x, y] : cycle_edges(sol.tour1.order)) add_union_edge(x, y);
    for (const auto& [x, y] : cycle_edges(sol.tour2.order)) add_union_edge(x, y);
    for (const auto& [x, y] : sol.comm_links) add_union_edge(x, y);
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(adj[v].size()) != 3)
            add(ConstraintFamily::degree_connectivity,
                "vertex " + std::to_string(v) + " has union degree " +
                    std::to_string(adj[v].size()) + ", expected 3");
    {
        std::vector<char> vis(n, 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n)
            add(ConstraintFamily::degree_connectivity,
                "union graph is disconnected (" + std::to_string(reached) + " of " +
                    std::to_string(n) + " targets reachable)");
    }

    // Stored costs vs recomputation.
    const CostBreakdown cb = solution_cost(inst, sol);
    if (std::abs(cb.travel - sol.travel_cost) > kCostEps)
        add(ConstraintFamily::cost_consistency, "stored travel cost is off by " +
                                                    std::to_string(cb.travel - sol.travel_cost));
    if (std::abs(cb.comm - sol.comm_cost) > kCostEps)
        add(ConstraintFamily::cost_consistency,
            "stored comm cost is off by " + std::to_string(cb.comm - sol.comm_cost));
    if (std::abs(cb.total - sol.total_cost) > kCostEps)
        add(ConstraintFamily::cost_consistency,
            "stored total cost is off by " + std::to_string(cb.total - sol.total_cost));

    return rep;
}

void save_solution(const DuoSolution& sol, const std::string& path) {
    std::ostringstream out;
    auto int_array = [&](const std::vector<int>& v) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(v[i]);
        }
        return s + "]";
    };
    out << "{\n";
    out << "  \"assignment\": " << int_array(sol.assignment) << ",\n";
    out << "  \"tour1\": " << int_array(sol.tour1.order) << ",\n";
    out << "  \"tour2\": " << int_array(sol.tour2.order) << ",\n";
    out << "  \"comm_links\": [";
    for (std::size_t i = 0; i < sol.comm_links.size(); ++i) {
        if (i) out << ", ";
        out << '[' << sol.comm_links[i].first << ", " << sol.comm_links[i].second << ']';
    }
    out << "],\n";
    out << "  \"costs\": {\"travel\": " << fmt_double(sol.travel_cost)
        << ", \"comm\": " << fmt_double(sol.comm_cost)
        << ", \"total\": " << fmt_double(sol.total_cost) << "}\n";
    out << "}\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path + " for writing");
    f << out.str();
    if (!f) throw ParseError("failed to write " + path);
}

DuoSolution load_solution(const Instance& inst, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }

    try {
        for (const char* key : {"assignment", "tour1", "tour2", "comm_links", "costs"})
            if (!j.contains(key))
                throw ParseError(path + ": missing field \"" + std::string(key) + "\"");

        DuoSolution sol;
        sol.assignment = j["assignment"].get<std::vector<int>>();
        sol.tour1.order = j["tour1"].get<std::vector<int>>();
        sol.tour2.order = j["tour2"].get<std::vector<int>>();
        for (const auto& e : j["comm_links"]) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError(path + ": comm_links entries must be [i, j] pairs");
            sol.comm_links.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        sol.travel_cost = j["costs"].at("travel").get<double>();
        sol.comm_cost = j["costs"].at("comm").get<double>();
        sol.total_cost = j["costs"].at("total").get<double>();

        // Indices must be addressable before any cost can be recomputed.
        auto in_range = [&](int v) { return v >= 0 && v < inst.n_targets; };
        for (int v : sol.tour1.order)
            if (!in_range(v)) throw ValidationError(path + ": tour1 vertex out of range");
        for (int v : sol.tour2.order)
            if (!in_range(v)) throw ValidationError(path + ": tour2 vertex out of range");
        for (const auto& [x, y] : sol.comm_links)
            if (!in_range(x) || !in_range(y))
                throw ValidationError(path + ": comm link endpoint out of range");

        sol.tour1.cost = cycle_cost(inst, sol.tour1.order);
        sol.tour2.cost = cycle_cost(inst, sol.tour2.order);
        return sol;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace duo
