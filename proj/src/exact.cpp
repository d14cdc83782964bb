#include "duo/exact.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "duo/tsp.hpp"

namespace duo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Candidate produced by a leaf solve: tour orders plus the step pairing.
struct LeafSolution {
    double cost = kInf;
    std::vector<int> order1, order2;               // order2[i] is linked to order1[i]
};

std::vector<std::pair<int, int>> step_links(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::pair<int, int>> links;
    for (std::size_t i = 0; i < a.size(); ++i) links.emplace_back(a[i], b[i]);
    return links;
}

// Exhaustive joint optimization over tour orders and alignments; exact for
// any m, practical for m <= 6. Only candidates strictly cheaper than
// `cutoff` are reported.
LeafSolution joint_enumerate(const Instance& inst, std::vector<int> v1, std::vector<int> v2,
                             double cutoff) {
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());
    const int m = static_cast<int>(v1.size());

    LeafSolution best;
    best.cost = cutoff;
    std::vector<int> a = v1, b = v2, rotated(m);
    do {
        const double t1 = cycle_cost(inst, a);
        if (t1 >= best.cost) continue;
        std::vector<int>& bb = b;
        do {
            const double t2 = cycle_cost(inst, bb);
            if (t1 + t2 >= best.cost) continue;
            for (int shift = 0; shift < m; ++shift) {
                double links = 0.0;
                for (int i = 0; i < m; ++i) links += inst.cost(a[i], bb[(i + shift) % m]);
                const double total = t1 + t2 + links;
                if (total < best.cost) {
                    best.cost = total;
                    best.order1 = a;
                    for (int i = 0; i < m; ++i) rotated[i] = bb[(i + shift) % m];
                    best.order2 = rotated;
                }
            }
        } while (std::next_permutation(bb.begin() + 1, bb.end()));
    } while (std::next_permutation(a.begin() + 1, a.end()));
    return best;
}

// Leaf solve for larger m: enumerate vehicle-1 orders (with prefix pruning),
// then fold vehicle-2 ordering and the alignment into one DP over sequences:
// position i of the sequence is linked to a[i], so every shift and traversal
// direction of tour 2 appears as some sequence.
class SequenceDpLeaf {
public:
    SequenceDpLeaf(const Instance& inst, std::vector<int> v1, std::vector<int> v2, double cutoff)
        : inst_(inst), v1_(std::move(v1)), v2_(std::move(v2)) {
        std::sort(v1_.begin(), v1_.end());
        std::sort(v2_.begin(), v2_.end());
        m_ = static_cast<int>(v1_.size());
        best_.cost = cutoff;

        min_edge1_ = kInf;
        for (int i = 0; i < m_; ++i)
            for (int j = i + 1; j < m_; ++j) min_edge1_ = std::min(min_edge1_, inst_.cost(v1_[i], v1_[j]));

        hk2_ = held_karp(inst_, v2_).cost;
        half_links_ = 0.0;
        for (int v : v1_) {
            double mn = kInf;
            for (int u : v2_) mn = std::min(mn, inst_.cost(v, u));
            half_links_ += 0.5 * mn;
        }
        for (int v : v2_) {
            double mn = kInf;
            for (int u : v1_) mn = std::min(mn, inst_.cost(v, u));
            half_links_ += 0.5 * mn;
        }

        const std::size_t full = std::size_t{1} << m_;
        dp_.resize(full * m_);
        parent_.resize(full * m_);
    }

    LeafSolution run() {
        std::vector<int> a(m_);
        a[0] = v1_[0];
        std::vector<bool> used(m_, false);
        used[0] = true;
        extend(a, used, 1, 0.0);
        return best_;
    }

private:
    void extend(std::vector<int>& a, std::vector<bool>& used, int depth, double path) {
        // Admissible completion estimate: every remaining tour-1 edge costs at
        // least the cheapest vehicle-1 edge.
        if (path + (m_ - depth + 1) * min_edge1_ + hk2_ + half_links_ >= best_.cost) return;
        if (depth == m_) {
            const double t1 = path + inst_.cost(a[m_ - 1], a[0]);
            if (t1 + hk2_ + half_links_ >= best_.cost) return;
            solve_sequences(a, t1);
            return;
        }
        for (int i = 1; i < m_; ++i) {
            if (used[i]) continue;
            used[i] = true;
            a[depth] = v1_[i];
            extend(a, used, depth + 1, path + inst_.cost(a[depth - 1], v1_[i]));
            used[i] = false;
        }
    }

    void solve_sequences(const std::vector<int>& a, double t1) {
        const std::size_t full = (std::size_t{1} << m_) - 1;
        for (int start = 0; start < m_; ++start) {
            std::fill(dp_.begin(), dp_.end(), kInf);
            dp_[(std::size_t{1} << start) * m_ + start] = inst_.cost(a[0], v2_[start]);
            for (std::size_t mask = 1; mask <= full; ++mask) {
                if (!(mask >> start & 1)) continue;
                const int pos = std::popcount(mask);
                if (pos == m_) continue;
                for (int j = 0; j < m_; ++j) {
                    if (!(mask >> j & 1)) continue;
                    const double d = dp_[mask * m_ + j];
                    if (d == kInf || t1 + d >= best_.cost) continue;
                    for (int w = 0; w < m_; ++w) {
                        if (mask >> w & 1) continue;
                        const std::size_t nmask = mask | (std::size_t{1} << w);
                        const double nd =
                            d + inst_.cost(v2_[j], v2_[w]) + inst_.cost(a[pos], v2_[w]);
                        if (nd < dp_[nmask * m_ + w]) {
                            dp_[nmask * m_ + w] = nd;
                            parent_[nmask * m_ + w] = static_cast<std::uint8_t>(j);
                        }
                    }
                }
            }
            for (int j = 0; j < m_; ++j) {
                const double d = dp_[full * m_ + j];
                if (d == kInf) continue;
                const double total = t1 + d + inst_.cost(v2_[j], v2_[start]);
                if (total < best_.cost) {
                    best_.cost = total;
                    best_.order1 = a;
                    best_.order2.assign(m_, -1);
                    std::size_t mask = full;
                    int cur = j;
                    for (int pos = m_ - 1; pos >= 0; --pos) {
                        best_.order2[pos] = v2_[cur];
                        const int prev = parent_[mask * m_ + cur];
                        mask &= ~(std::size_t{1} << cur);
                        cur = prev;
                    }
                }
            }
        }
    }

    const Instance& inst_;
    std::vector<int> v1_, v2_;
    int m_ = 0;
    double min_edge1_ = kInf, hk2_ = 0.0, half_links_ = 0.0;
    LeafSolution best_;
    std::vector<double> dp_;
    std::vector<std::uint8_t> parent_;
};

LeafSolution solve_leaf(const Instance& inst, const std::vector<int>& v1,
                        const std::vector<int>& v2, double cutoff) {
    const int m = static_cast<int>(v1.size());
    if (m <= 6) {
        // Cheap admissible prescreen before full enumeration.
        const double lb = held_karp(inst, v1).cost + held_karp(inst, v2).cost;
        if (lb >= cutoff) {
            LeafSolution none;
            none.cost = cutoff;
            return none;
        }
        return joint_enumerate(inst, v1, v2, cutoff);
    }
    const double lb = held_karp(inst, v1).cost + held_karp(inst, v2).cost;
    if (lb >= cutoff) {
        LeafSolution none;
        none.cost = cutoff;
        return none;
    }
    return SequenceDpLeaf(inst, v1, v2, cutoff).run();
}

double subset_mst_cost(const Instance& inst, const std::vector<int>& verts) {
    const int k = static_cast<int>(verts.size());
    if (k < 2) return 0.0;
    std::vector<double> key(k, kInf);
    std::vector<bool> in(k, false);
    key[0] = 0.0;
    double total = 0.0;
    for (int step = 0; step < k; ++step) {
        int u = -1;
        for (int i = 0; i < k; ++i)
            if (!in[i] && (u < 0 || key[i] < key[u])) u = i;
        in[u] = true;
        total += key[u];
        for (int i = 0; i < k; ++i)
            if (!in[i]) key[i] = std::min(key[i], inst.cost(verts[u], verts[i]));
    }
    return total;
}

DuoSolution leaf_to_solution(const Instance& inst, const LeafSolution& leaf) {
    return assemble_solution(inst, make_tour(inst, leaf.order1), make_tour(inst, leaf.order2),
                             step_links(leaf.order1, leaf.order2));
}

}  // namespace

ExactResult brute_force_solve(const Instance& inst) {
    if (inst.n_targets > 12)
        throw std::invalid_argument("brute_force_solve is limited to 12 targets, got " +
                                    std::to_string(inst.n_targets));
    const auto t0 = Clock::now();
    const int n = inst.n_targets;
    const int m = n / 2;

    LeafSolution best;
    best.cost = kInf;
    std::uint64_t partitions = 0;

    // All balanced partitions with vertex 0 on vehicle 1 (labels are
    // interchangeable, so this halves the space without loss).
    std::vector<int> pick(m - 1);
    for (int i = 0; i < m - 1; ++i) pick[i] = i;
    while (true) {
        std::vector<int> v1{0}, v2;
        std::vector<bool> chosen(n, false);
        chosen[0] = true;
        for (int i : pick) chosen[i + 1] = true;
        for (int v = 1; v < n; ++v) (chosen[v] ? v1 : v2).push_back(v);
        ++partitions;

        const LeafSolution cand = joint_enumerate(inst, v1, v2, best.cost);
        if (cand.cost < best.cost) best = cand;

        // Next (m-1)-combination of {0, ..., n-2}.
        int i = m - 2;
        while (i >= 0 && pick[i] == n - 2 - (m - 2 - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m - 1; ++j) pick[j] = pick[j - 1] + 1;
    }

    ExactResult res;
    res.solution = leaf_to_solution(inst, best);
    res.optimal = true;
    res.best_bound = res.solution.total_cost;
    res.nodes_explored = partitions;
    res.runtime_seconds = seconds_since(t0);
    return res;
}

ExactResult exact_solve(const Instance& inst, double time_limit_seconds, SearchTrace* trace) {
    const auto t0 = Clock::now();
    const int n = inst.n_targets;
    const int m = n / 2;

    // Incumbent: improved-tour pipeline with the alignment post-pass.
    DuoSolution incumbent = with_best_alignment(inst, heuristic_solve(inst));
    double inc_cost = incumbent.total_cost;

    // Branch on vertices far from vertex 0 first.
    std::vector<int> branch_order;
    for (int v = 1; v < n; ++v) branch_order.push_back(v);
    std::sort(branch_order.begin(), branch_order.end(), [&](int a, int b) {
        if (inst.cost(0, a) != inst.cost(0, b)) return inst.cost(0, a) > inst.cost(0, b);
        return a < b;
    });

    struct Node {
        double bound;
        std::uint64_t seq;
        std::uint32_t mask1, mask2;
        int depth;
    };
    auto cmp = [](const Node& a, const Node& b) {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.seq > b.seq;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);

    auto mask_to_list = [&](std::uint32_t mask) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) out.push_back(v);
        return out;
    };

    // Admissible bound: shortcutting any completion's tour to the assigned
    // vertices dominates the partial MSTs, and every assigned vertex pays at
    // least half of its cheapest possible cross link.
    auto node_bound = [&](std::uint32_t mask1, std::uint32_t mask2) {
        const auto v1 = mask_to_list(mask1);
        const auto v2 = mask_to_list(mask2);
        double b = subset_mst_cost(inst, v1) + subset_mst_cost(inst, v2);
        for (int v : v1) {
            double mn = kInf;
            for (int u = 0; u < n; ++u)
                if (!(mask1 >> u & 1)) mn = std::min(mn, inst.cost(v, u));
            b += 0.5 * mn;
        }
        for (int v : v2) {
            double mn = kInf;
            for (int u = 0; u < n; ++u)
                if (!(mask2 >> u & 1)) mn = std::min(mn, inst.cost(v, u));
            b += 0.5 * mn;
        }
        return b;
    };

    std::uint64_t seq = 0;
    std::uint64_t pops = 0;
    const double root_bound = node_bound(1u, 0u);
    double best_bound = std::min(inc_cost, root_bound);
    if (trace) trace->events.emplace_back(inc_cost, best_bound);
    open.push({root_bound, seq++, 1u, 0u, 0});

    bool timed_out = false;
    while (!open.empty()) {
        if (seconds_since(t0) > time_limit_seconds) {
            timed_out = true;
            break;
        }
        const Node node = open.top();
        open.pop();
        ++pops;

        const double proven = std::min(inc_cost, node.bound);
        if (proven > best_bound) {
            best_bound = proven;
            if (trace) trace->events.emplace_back(inc_cost, best_bound);
        }
        if (node.bound >= inc_cost - 1e-12) break;  // frontier minimum: optimality proven

        const int n1 = std::popcount(node.mask1);
        const int n2 = std::popcount(node.mask2);
        if (node.depth == n - 1) {
            const LeafSolution leaf =
                solve_leaf(inst, mask_to_list(node.mask1), mask_to_list(node.mask2), inc_cost);
            if (leaf.cost < inc_cost) {
                incumbent = leaf_to_solution(inst, leaf);
                inc_cost = incumbent.total_cost;
                if (trace) trace->events.emplace_back(inc_cost, best_bound);
            }
            continue;
        }

        const int v = branch_order[node.depth];
        if (n1 < m) {
            const std::uint32_t mask1 = node.mask1 | (1u << v);
            const double b = node_bound(mask1, node.mask2);
            if (b < inc_cost - 1e-12) open.push({b, seq++, mask1, node.mask2, node.depth + 1});
        }
        if (n2 < m) {
            const std::uint32_t mask2 = node.mask2 | (1u << v);
            const double b = node_bound(node.mask1, mask2);
            if (b < inc_cost - 1e-12) open.push({b, seq++, node.mask1, mask2, node.depth + 1});
        }
    }

    ExactResult res;
    res.solution = std::move(incumbent);
    res.optimal = !timed_out;
    res.best_bound = res.optimal ? res.solution.total_cost : best_bound;
    res.nodes_explored = pops;
    res.runtime_seconds = seconds_since(t0);
    return res;
}

}  // namespace duo
