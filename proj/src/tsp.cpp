#include "duo/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "duo/kernels.hpp"
#include "duo/matching.hpp"

namespace duo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> checked_vertices(const Instance& inst, std::vector<int> vertices, int min_size,
                                  const char* who) {
    if (static_cast<int>(vertices.size()) < min_size)
        throw std::invalid_argument(std::string(who) + " needs at least " +
                                    std::to_string(min_size) + " vertices, got " +
                                    std::to_string(vertices.size()));
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= inst.n_targets)
            throw std::invalid_argument(std::string(who) + ": vertex out of range");
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw std::invalid_argument(std::string(who) + ": repeated vertex");
    }
    return vertices;
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[a] = b;
        return true;
    }
};

}  // namespace

SpanningTree minimum_spanning_tree(const Instance& inst, std::vector<int> vertices) {
    const auto verts = checked_vertices(inst, std::move(vertices), 2, "minimum_spanning_tree");
    const int k = static_cast<int>(verts.size());

    struct E {
        double c;
        int u, v;  // global ids, u < v
        int lu, lv;
    };
    std::vector<E> edges;
    edges.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            edges.push_back({inst.cost(verts[i], verts[j]), verts[i], verts[j], i, j});
    std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) {
        if (a.c != b.c) return a.c < b.c;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    SpanningTree out;
    UnionFind uf(k);
    for (const E& e : edges) {
        if (!uf.unite(e.lu, e.lv)) continue;
        out.edges.emplace_back(e.u, e.v);
        out.total_cost += e.c;
        if (static_cast<int>(out.edges.size()) == k - 1) break;
    }
    return out;
}

Tour christofides(const Instance& inst, std::vector<int> vertices) {
    const auto verts = checked_vertices(inst, std::move(vertices), 3, "christofides");
    const int k = static_cast<int>(verts.size());
    std::vector<int> local(inst.n_targets, -1);
    for (int i = 0; i < k; ++i) local[verts[i]] = i;

    const SpanningTree mst = minimum_spanning_tree(inst, verts);

    std::vector<int> degree(k, 0);
    for (const auto& [u, v] : mst.edges) {
        ++degree[local[u]];
        ++degree[local[v]];
    }
    std::vector<int> odd;
    for (int i = 0; i < k; ++i)
        if (degree[i] % 2 == 1) odd.push_back(verts[i]);

    const Matching matching = min_weight_perfect_matching(inst, odd);

    // Multigraph adjacency (MST edges plus matching edges, duplicates kept).
    struct Arc {
        int to;
        int edge_id;
    };
    std::vector<std::vector<Arc>> adj(k);
    int edge_id = 0;
    auto add_edge = [&](int gu, int gv) {
        adj[local[gu]].push_back({local[gv], edge_id});
        adj[local[gv]].push_back({local[gu], edge_id});
        ++edge_id;
    };
    for (const auto& [u, v] : mst.edges) add_edge(u, v);
    for (const auto& [u, v] : matching.pairs) add_edge(u, v);
    for (auto& a : adj)
        std::sort(a.begin(), a.end(), [&](const Arc& x, const Arc& y) {
            if (verts[x.to] != verts[y.to]) return verts[x.to] < verts[y.to];
            return x.edge_id < y.edge_id;
        });

    // Hierholzer from the lowest vertex, always taking the lowest-numbered
    // available neighbor.
    std::vector<bool> used(edge_id, false);
    std::vector<std::size_t> next(k, 0);
    std::vector<int> stack{0}, circuit;
    while (!stack.empty()) {
        const int v = stack.back();
        bool advanced = false;
        while (next[v] < adj[v].size()) {
            const Arc a = adj[v][next[v]];
            if (used[a.edge_id]) {
                ++next[v];
                continue;
            }
            used[a.edge_id] = true;
            stack.push_back(a.to);
            advanced = true;
            break;
        }
        if (!advanced) {
            circuit.push_back(v);
            stack.pop_back();
        }
    }

    std::vector<bool> seen(k, false);
    std::vector<int> order;
    for (int v : circuit) {
        if (seen[v]) continue;
        seen[v] = true;
        order.push_back(verts[v]);
    }
    return make_tour(inst, std::move(order));
}

Tour held_karp(const Instance& inst, std::vector<int> vertices) {
    const auto verts = checked_vertices(inst, std::move(vertices), 3, "held_karp");
    const int k = static_cast<int>(verts.size());
    if (k > kHeldKarpLimit)
        throw std::invalid_argument("held_karp is limited to " + std::to_string(kHeldKarpLimit) +
                                    " vertices, got " + std::to_string(k));

    // dp[mask][j]: cheapest path from verts[0] visiting exactly the "other"
    // vertices in mask, ending at other-vertex j. Row width m with +inf at
    // unreachable slots keeps the min_plus kernel scanning contiguously.
    const int m = k - 1;
    const std::size_t rows = std::size_t{1} << m;
    std::vector<double> dp(rows * m, kInf);
    std::vector<std::uint8_t> parent(rows * m, 0);

    // cost_to[j][t] = cost between other-vertices t and j.
    std::vector<double> cost_to(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < m; ++t)
            cost_to[static_cast<std::size_t>(j) * m + t] = inst.cost(verts[t + 1], verts[j + 1]);

    for (int j = 0; j < m; ++j)
        dp[(std::size_t{1} << j) * m + j] = inst.cost(verts[0], verts[j + 1]);

    for (std::size_t mask = 1; mask < rows; ++mask) {
        if ((mask & (mask - 1)) == 0) continue;  // singletons initialized above
        for (int j = 0; j < m; ++j) {
            if (!(mask >> j & 1)) continue;
            const std::size_t prev = mask & ~(std::size_t{1} << j);
            int arg = 0;
            const double best = kernels::min_plus(
                dp.data() + prev * m, cost_to.data() + static_cast<std::size_t>(j) * m, m, &arg);
            dp[mask * m + j] = best;
            parent[mask * m + j] = static_cast<std::uint8_t>(arg);
        }
    }

    const std::size_t full = rows - 1;
    double best = kInf;
    int last = -1;
    for (int j = 0; j < m; ++j) {
        const double v = dp[full * m + j] + inst.cost(verts[j + 1], verts[0]);
        if (v < best) {
            best = v;
            last = j;
        }
    }

    std::vector<int> order{verts[0]};
    std::vector<int> tail;
    std::size_t mask = full;
    int j = last;
    while (true) {
        tail.push_back(verts[j + 1]);
        const std::size_t prev = mask & ~(std::size_t{1} << j);
        if (prev == 0) break;
        j = parent[mask * m + j];
        mask = prev;
    }
    order.insert(order.end(), tail.rbegin(), tail.rend());
    return make_tour(inst, std::move(order));
}

Tour improve_tour(const Instance& inst, const Tour& tour, long max_evaluations) {
    check_tour(inst, tour);
    std::vector<int> o = tour.order;
    const int n = static_cast<int>(o.size());
    long budget = max_evaluations;

    auto c = [&](int a, int b) { return inst.cost(a, b); };

    bool improved = true;
    while (improved && budget > 0) {
        improved = false;

        // 2-opt over edge position pairs (a, b), skipping adjacent edges.
        for (int a = 0; a < n - 1 && !improved; ++a) {
            for (int b = a + 1; b < n && !improved; ++b) {
                if (b == a + 1 || (a == 0 && b == n - 1)) continue;
                if (--budget < 0) return make_tour(inst, std::move(o));
                const int oa = o[a], oa1 = o[a + 1];
                const int ob = o[b], ob1 = o[(b + 1) % n];
                const double delta = c(oa, ob) + c(oa1, ob1) - c(oa, oa1) - c(ob, ob1);
                if (delta < -1e-12) {
                    std::reverse(o.begin() + a + 1, o.begin() + b + 1);
                    improved = true;
                }
            }
        }
        if (improved) continue;

        // Or-opt: move a segment of length 1..3 into another gap, trying the
        // forward and reversed orientations.
        for (int len = 1; len <= 3 && !improved; ++len) {
            if (n - len < 3) break;
            for (int s = 0; s + len <= n && !improved; ++s) {
                const int prev = o[(s - 1 + n) % n];
                const int next = o[(s + len) % n];
                const int front = o[s], back = o[s + len - 1];
                const double removal_gain = c(prev, front) + c(back, next) - c(prev, next);

                std::vector<int> rest;
                rest.reserve(n - len);
                for (int i = (s + len) % n; i != s; i = (i + 1) % n) rest.push_back(o[i]);

                // Gaps between consecutive rest elements; the wrap gap
                // (rest.back(), rest.front()) = (prev, next) would undo the
                // removal and is skipped.
                for (int q = 0; q + 1 < static_cast<int>(rest.size()) && !improved; ++q) {
                    const int x = rest[q], y = rest[q + 1];
                    const double base = c(x, y) - removal_gain;
                    for (int rev = 0; rev < (len > 1 ? 2 : 1) && !improved; ++rev) {
                        if (--budget < 0) return make_tour(inst, std::move(o));
                        const int head = rev ? back : front;
                        const int tail = rev ? front : back;
                        const double delta = base + c(x, head) + c(tail, y);
                        if (delta < -1e-12) {
                            std::vector<int> seg(o.begin() + s, o.begin() + s + len);
                            if (rev) std::reverse(seg.begin(), seg.end());
                            std::vector<int> merged(rest.begin(), rest.begin() + q + 1);
                            merged.insert(merged.end(), seg.begin(), seg.end());
                            merged.insert(merged.end(), rest.begin() + q + 1, rest.end());
                            o = std::move(merged);
                            improved = true;
                        }
                    }
                }
            }
        }
    }
    return make_tour(inst, std::move(o));
}

double one_tree_lower_bound(const Instance& inst, std::vector<int> vertices, int iterations) {
    const auto verts = checked_vertices(inst, std::move(vertices), 3, "one_tree_lower_bound");
    const int k = static_cast<int>(verts.size());

    const double ub = improve_tour(inst, christofides(inst, verts)).cost;

    std::vector<double> local(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            local[static_cast<std::size_t>(i) * k + j] = inst.cost(verts[i], verts[j]);

    std::vector<double> pi(k, 0.0), key(k);
    std::vector<int> parent(k, -1), deg(k);
    std::vector<int> visited;
    visited.reserve(k);

    double best = -kInf;
    double alpha = 2.0;
    int stall = 0;

    for (int it = 0; it < iterations; ++it) {
        // Minimum spanning tree over locals 1..k-1 on penalized costs
        // c(i,j) + pi[i] + pi[j], grown with the prim_scan kernel.
        std::fill(key.begin(), key.end(), kInf);
        std::fill(deg.begin(), deg.end(), 0);
        visited.clear();
        double tree_cost = 0.0;
        int u = 1;
        for (int step = 0; step < k - 1; ++step) {
            visited.push_back(u);
            if (step == k - 2) break;
            kernels::prim_scan(key.data(), parent.data(), local.data() + static_cast<std::size_t>(u) * k,
                               pi.data(), pi[u], u, k);
            key[0] = kInf;
            for (int w : visited) key[w] = kInf;
            const int nxt = kernels::argmin(key.data(), k);
            tree_cost += key[nxt];
            ++deg[parent[nxt]];
            ++deg[nxt];
            u = nxt;
        }

        // Two cheapest penalized edges out of local 0.
        double e1 = kInf, e2 = kInf;
        int j1 = -1, j2 = -1;
        for (int j = 1; j < k; ++j) {
            const double cand = local[j] + pi[0] + pi[j];
            if (cand < e1) {
                e2 = e1;
                j2 = j1;
                e1 = cand;
                j1 = j;
            } else if (cand < e2) {
                e2 = cand;
                j2 = j;
            }
        }
        deg[0] += 2;
        ++deg[j1];
        ++deg[j2];

        double pisum = 0.0;
        for (double p : pi) pisum += p;
        const double bound = tree_cost + e1 + e2 - 2.0 * pisum;
        if (bound > best) {
            best = bound;
            stall = 0;
        } else if (++stall >= 20) {
            alpha /= 2.0;
            stall = 0;
        }

        double norm2 = 0.0;
        for (int i = 0; i < k; ++i) {
            const double g = deg[i] - 2;
            norm2 += g * g;
        }
        if (norm2 == 0.0) break;  // the 1-tree is a tour: bound is tight
        const double step_len = std::max(0.0, alpha * (ub - bound) / norm2);
        if (step_len == 0.0) break;
        for (int i = 0; i < k; ++i) pi[i] += step_len * (deg[i] - 2);
    }
    return best;
}

double tsp_lower_bound(const Instance& inst, std::vector<int> vertices) {
    auto verts = checked_vertices(inst, std::move(vertices), 3, "tsp_lower_bound");
    if (static_cast<int>(verts.size()) <= kHeldKarpLimit)
        return held_karp(inst, std::move(verts)).cost;
    return one_tree_lower_bound(inst, std::move(verts));
}

}  // namespace duo
