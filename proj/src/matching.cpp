#include "duo/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace duo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Edmonds' blossom algorithm, primal-dual, for maximum-weight perfect
// matching on a dense graph. Minimum-weight matchings are obtained through
// the reflection w = C - c, which preserves perfect matchings.
//
// The dual uses the "inside" convention: an edge's slack is
//     pi(u,v) = y[u] + y[v] - w(u,v) + sum of z[B] over alive blossoms B
//               containing BOTH endpoints,
// so slacks between different surface nodes need vertex duals only. Every
// solve ends with an LP duality check (feasibility of (y, z) plus objective
// equality), which certifies optimality of the returned matching.

struct DualBlossom {
    std::vector<int> members;
    double z = 0.0;
};

struct PmResult {
    std::vector<int> match;             // per local vertex
    double min_cost = 0.0;              // under the original (minimization) costs
    double transform_c = 0.0;           // C in w = C - c
    std::vector<double> y;              // max-form vertex duals
    std::vector<DualBlossom> blossoms;  // alive blossoms, z >= 0
};

class BlossomSolver {
public:
    BlossomSolver(const double* min_cost, int stride, const std::vector<int>& verts)
        : n_(static_cast<int>(verts.size())) {
        c_.resize(static_cast<std::size_t>(n_) * n_);
        w_.resize(static_cast<std::size_t>(n_) * n_);
        double cmax = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double cij = min_cost[static_cast<std::size_t>(verts[i]) * stride + verts[j]];
                c_[static_cast<std::size_t>(i) * n_ + j] = cij;
                cmax = std::max(cmax, cij);
            }
        c_big_ = cmax + 1.0;
        for (std::size_t e = 0; e < w_.size(); ++e) w_[e] = c_big_ - c_[e];
        scale_ = std::max(1.0, c_big_);
        eps_ = 1e-10 * scale_;
    }

    PmResult solve() {
        nodes_.clear();
        nodes_.resize(n_);
        match_.assign(n_, -1);
        double wmax = 0.0;
        for (double v : w_) wmax = std::max(wmax, v);
        y_.assign(n_, wmax / 2.0);

        for (int phase = 0; phase < n_ / 2; ++phase) run_phase();

        verify_certificate();

        PmResult r;
        r.match = match_;
        r.transform_c = c_big_;
        r.y = y_;
        for (int b = n_; b < static_cast<int>(nodes_.size()); ++b) {
            if (!nodes_[b].alive) continue;
            DualBlossom db;
            db.z = std::max(0.0, nodes_[b].z);
            collect_vertices(b, db.members);
            r.blossoms.push_back(std::move(db));
        }
        r.min_cost = 0.0;
        for (int u = 0; u < n_; ++u)
            if (u < match_[u]) r.min_cost += c_[static_cast<std::size_t>(u) * n_ + match_[u]];
        return r;
    }

private:
    enum : int { kFree = 0, kS = 1, kT = 2 };
    enum : int { kNone = 0, kChanged = 1, kAugmented = 2 };

    struct Node {
        int parent = -1;
        std::vector<int> children;                       // odd cycle, children[0] = base
        std::vector<std::pair<int, int>> cycle_edges;    // edge i joins children[i], children[i+1]
        double z = 0.0;
        bool alive = true;
    };

    int n_;
    std::vector<double> c_;
    std::vector<double> w_;
    double c_big_ = 0.0, scale_ = 1.0, eps_ = 0.0;
    std::vector<Node> nodes_;
    std::vector<double> y_;
    std::vector<int> match_;
    std::vector<int> label_;
    std::vector<std::pair<int, int>> parent_edge_;
    std::vector<int> surf_;  // per original vertex, valid within a pass

    double wt(int u, int v) const { return w_[static_cast<std::size_t>(u) * n_ + v]; }

    int surface(int x) const {
        while (nodes_[x].parent >= 0) x = nodes_[x].parent;
        return x;
    }

    int base_vertex(int x) const {
        while (!nodes_[x].children.empty()) x = nodes_[x].children[0];
        return x;
    }

    void collect_vertices(int x, std::vector<int>& out) const {
        if (x < n_) {
            out.push_back(x);
            return;
        }
        for (int c : nodes_[x].children) collect_vertices(c, out);
    }

    void refresh_surfaces() {
        surf_.resize(n_);
        for (int v = 0; v < n_; ++v) surf_[v] = surface(v);
    }

    bool is_root(int x) const { return match_[base_vertex(x)] < 0; }

    void run_phase() {
        label_.assign(nodes_.size(), kFree);
        parent_edge_.assign(nodes_.size(), {-1, -1});
        for (int x = 0; x < static_cast<int>(nodes_.size()); ++x)
            if (nodes_[x].alive && nodes_[x].parent < 0 && is_root(x)) label_[x] = kS;

        long guard = 64L * n_ * n_ + 4096;
        while (true) {
            if (--guard < 0) throw std::logic_error("matching: phase failed to converge");
            const int ev = scan_pass();
            if (ev == kAugmented) return;
            if (ev == kChanged) continue;
            adjust_duals();
        }
    }

    int scan_pass() {
        refresh_surfaces();
        bool grew = false;
        for (int u = 0; u < n_; ++u) {
            if (label_[surf_[u]] != kS) continue;
            for (int v = 0; v < n_; ++v) {
                const int su = surf_[u];
                const int sv = surf_[v];
                if (sv == su) continue;
                if (y_[u] + y_[v] - wt(u, v) > eps_) continue;
                if (label_[sv] == kFree) {
                    label_[sv] = kT;
                    parent_edge_[sv] = {u, v};
                    const int bv = base_vertex(sv);
                    const int mv = match_[bv];
                    const int sm = surf_[mv];
                    label_[sm] = kS;
                    parent_edge_[sm] = {bv, mv};
                    grew = true;
                } else if (label_[sv] == kS) {
                    const int l = lca(su, sv);
                    if (l < 0) {
                        augment(u, v);
                        return kAugmented;
                    }
                    add_blossom(u, v, l);
                    return kChanged;
                }
            }
        }
        return grew ? kChanged : kNone;
    }

    int lca(int a, int b) const {
        std::vector<int> anc;
        for (int x = a;;) {
            anc.push_back(x);
            if (is_root(x)) break;
            x = surface(parent_edge_[x].first);
        }
        for (int x = b;;) {
            if (std::find(anc.begin(), anc.end(), x) != anc.end()) return x;
            if (is_root(x)) break;
            x = surface(parent_edge_[x].first);
        }
        return -1;
    }

    // Realigns the internal matching of node x so that vertex u becomes its
    // externally matched vertex; the caller sets match_[u].
    void blossom_align(int x, int u) {
        if (x == u) return;
        Node& nd = nodes_[x];
        const int k = static_cast<int>(nd.children.size());
        int p = 0;
        {
            int c = u;
            while (nodes_[c].parent != x) c = nodes_[c].parent;
            while (nd.children[p] != c) ++p;
        }
        for (int t = 1; t < k; t += 2) {
            const int ei = (p + t) % k;
            const auto [ea, eb] = nd.cycle_edges[ei];
            blossom_align(nd.children[ei], ea);
            blossom_align(nd.children[(ei + 1) % k], eb);
            match_[ea] = eb;
            match_[eb] = ea;
        }
        std::rotate(nd.children.begin(), nd.children.begin() + p, nd.children.end());
        std::rotate(nd.cycle_edges.begin(), nd.cycle_edges.begin() + p, nd.cycle_edges.end());
        blossom_align(nd.children[0], u);
    }

    void augment(int u, int v) {
        augment_side(u, v);
        augment_side(v, u);
    }

    void augment_side(int u, int v) {
        while (true) {
            const int x = surface(u);
            const bool root = is_root(x);
            const auto pe = parent_edge_[x];  // matched edge into the T parent
            blossom_align(x, u);
            match_[u] = v;
            if (root) return;
            const int a = pe.first;
            const int xt = surface(a);
            const auto pe_t = parent_edge_[xt];  // unmatched edge (c in S node, d in xt)
            const int c = pe_t.first, d = pe_t.second;
            blossom_align(xt, d);
            match_[d] = c;
            u = c;
            v = d;
        }
    }

    void add_blossom(int u, int v, int l) {
        const int b = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        label_.push_back(kS);
        parent_edge_.push_back(parent_edge_[l]);
        Node& nb = nodes_.back();

        std::vector<int> path_u, path_v;
        std::vector<std::pair<int, int>> pe_u, pe_v;
        for (int x = surface(u); x != l; x = surface(parent_edge_[x].first)) {
            path_u.push_back(x);
            pe_u.push_back(parent_edge_[x]);
        }
        for (int x = surface(v); x != l; x = surface(parent_edge_[x].first)) {
            path_v.push_back(x);
            pe_v.push_back(parent_edge_[x]);
        }

        nb.children.push_back(l);
        for (int i = static_cast<int>(path_u.size()) - 1; i >= 0; --i) {
            nb.children.push_back(path_u[i]);
            nb.cycle_edges.push_back(pe_u[i]);  // (in children[i], in children[i+1])
        }
        nb.cycle_edges.emplace_back(u, v);
        for (int i = 0; i < static_cast<int>(path_v.size()); ++i) {
            nb.children.push_back(path_v[i]);
            nb.cycle_edges.emplace_back(pe_v[i].second, pe_v[i].first);
        }
        for (int c : nb.children) nodes_[c].parent = b;
        nb.z = 0.0;
    }

    void expand_blossom(int b) {
        Node& nb = nodes_[b];
        const int k = static_cast<int>(nb.children.size());
        for (int c : nb.children) {
            nodes_[c].parent = -1;
            label_[c] = kFree;
        }
        int p = 0;
        {
            int c = parent_edge_[b].second;
            while (nodes_[c].parent != -1) c = nodes_[c].parent;
            // c is now the entry child; children were just detached
            while (p < k && nb.children[p] != c) ++p;
        }
        label_[nb.children[p]] = kT;
        parent_edge_[nb.children[p]] = parent_edge_[b];
        if (p % 2 == 0) {
            for (int i = p - 1; i >= 0; --i) {
                const auto [ea, eb] = nb.cycle_edges[i];  // children[i] -- children[i+1]
                label_[nb.children[i]] = (i % 2 == 0) ? kT : kS;
                parent_edge_[nb.children[i]] = {eb, ea};
            }
        } else {
            for (int i = p + 1; i < k; ++i) {
                const auto [ea, eb] = nb.cycle_edges[i - 1];
                label_[nb.children[i]] = ((i - p) % 2 == 1) ? kS : kT;
                parent_edge_[nb.children[i]] = {ea, eb};
            }
            const auto [ea, eb] = nb.cycle_edges[k - 1];  // children[k-1] -- children[0]
            label_[nb.children[0]] = kT;
            parent_edge_[nb.children[0]] = {ea, eb};
        }
        nb.alive = false;
    }

    void adjust_duals() {
        refresh_surfaces();
        double d2 = kInf, d3 = kInf, d4 = kInf;
        for (int u = 0; u < n_; ++u) {
            if (label_[surf_[u]] != kS) continue;
            for (int v = 0; v < n_; ++v) {
                const int sv = surf_[v];
                if (sv == surf_[u]) continue;
                const double pi = y_[u] + y_[v] - wt(u, v);
                if (label_[sv] == kFree)
                    d2 = std::min(d2, pi);
                else if (label_[sv] == kS)
                    d3 = std::min(d3, pi / 2.0);
            }
        }
        for (int x = n_; x < static_cast<int>(nodes_.size()); ++x)
            if (nodes_[x].alive && nodes_[x].parent < 0 && label_[x] == kT)
                d4 = std::min(d4, nodes_[x].z / 2.0);
        const double delta = std::min({d2, d3, d4});
        if (delta == kInf) throw std::logic_error("matching: dual adjustment unbounded");

        for (int x = 0; x < static_cast<int>(nodes_.size()); ++x) {
            if (!nodes_[x].alive || nodes_[x].parent >= 0 || label_[x] == kFree) continue;
            std::vector<int> verts;
            collect_vertices(x, verts);
            if (label_[x] == kS) {
                for (int v : verts) y_[v] -= delta;
                if (x >= n_) nodes_[x].z += 2.0 * delta;
            } else {
                for (int v : verts) y_[v] += delta;
                if (x >= n_) nodes_[x].z -= 2.0 * delta;
            }
        }
        for (int x = n_; x < static_cast<int>(nodes_.size()); ++x)
            if (nodes_[x].alive && nodes_[x].parent < 0 && label_[x] == kT && nodes_[x].z <= eps_)
                expand_blossom(x);
    }

    void verify_certificate() const {
        const double edge_eps = 1e-7 * scale_;
        std::vector<double> zpair(static_cast<std::size_t>(n_) * n_, 0.0);
        double zobj = 0.0;
        for (int b = n_; b < static_cast<int>(nodes_.size()); ++b) {
            if (!nodes_[b].alive) continue;
            const double z = nodes_[b].z;
            if (z < -edge_eps) throw std::logic_error("matching: negative blossom dual");
            std::vector<int> verts;
            collect_vertices(b, verts);
            zobj += z * ((static_cast<int>(verts.size()) - 1) / 2);
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t j = i + 1; j < verts.size(); ++j) {
                    zpair[static_cast<std::size_t>(verts[i]) * n_ + verts[j]] += z;
                    zpair[static_cast<std::size_t>(verts[j]) * n_ + verts[i]] += z;
                }
        }
        double primal = 0.0, dual = zobj;
        for (int u = 0; u < n_; ++u) dual += y_[u];
        for (int u = 0; u < n_; ++u) {
            if (match_[u] < 0) throw std::logic_error("matching: not perfect");
            for (int v = u + 1; v < n_; ++v) {
                const double pi =
                    y_[u] + y_[v] + zpair[static_cast<std::size_t>(u) * n_ + v] - wt(u, v);
                if (pi < -edge_eps) throw std::logic_error("matching: infeasible dual");
                if (match_[u] == v) {
                    if (std::abs(pi) > edge_eps)
                        throw std::logic_error("matching: matched edge not tight");
                    primal += wt(u, v);
                }
            }
        }
        if (std::abs(primal - dual) > edge_eps * n_)
            throw std::logic_error("matching: duality gap");
    }
};

// ---------------------------------------------------------------------------
// Lexicographic tie-break over equal-cost optima: fix the smallest vertex to
// its smallest extendable partner, recursing on the rest. Candidates are
// rejected without a re-solve whenever the incumbent dual certificate proves
// the residual matching cannot be cheap enough.

struct RefineState {
    std::vector<int> live;  // local ids, ascending
    std::vector<int> match;
    double cost;     // min-form optimum over live
    double c_ref;    // transform constant of the certificate
    std::vector<double> y;
    std::vector<DualBlossom> blossoms;
};

double dual_lower_bound_excluding(const RefineState& st, int u, int v) {
    double obj = 0.0;
    for (int x : st.live)
        if (x != u && x != v) obj += st.y[x];
    for (const auto& b : st.blossoms) {
        int hit = 0;
        for (int m : b.members) hit += (m == u || m == v);
        if (hit > 0)
            obj += b.z * static_cast<double>(static_cast<int>(b.members.size()) - hit);
        else
            obj += b.z * ((static_cast<int>(b.members.size()) - 1) / 2);
    }
    const double pairs = static_cast<double>(st.live.size() - 2) / 2.0;
    return pairs * st.c_ref - obj;
}

void drop_blossoms_hitting(RefineState& st, int u, int v) {
    std::vector<DualBlossom> kept;
    for (auto& b : st.blossoms) {
        bool hit = false;
        for (int m : b.members) hit = hit || m == u || m == v;
        if (!hit) {
            kept.push_back(std::move(b));
            continue;
        }
        for (int m : b.members)
            if (m != u && m != v) st.y[m] += b.z;
    }
    st.blossoms = std::move(kept);
}

PmResult solve_local(const std::vector<double>& c, int k, const std::vector<int>& verts) {
    BlossomSolver solver(c.data(), k, verts);
    return solver.solve();
}

std::vector<std::pair<int, int>> lexicographic_pairs(const std::vector<double>& c, int k) {
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i;
    PmResult base = solve_local(c, k, all);

    const double eps_tie = 1e-9 * std::max(1.0, base.transform_c);
    RefineState st;
    st.live = all;
    st.match = base.match;
    st.cost = base.min_cost;
    st.c_ref = base.transform_c;
    st.y = base.y;
    st.blossoms = std::move(base.blossoms);

    std::vector<std::pair<int, int>> out;
    while (st.live.size() > 2) {
        const int u = st.live.front();
        int chosen = -1;
        for (std::size_t vi = 1; vi < st.live.size(); ++vi) {
            const int v = st.live[vi];
            const double cuv = c[static_cast<std::size_t>(u) * k + v];
            if (v == st.match[u]) {
                chosen = v;
                drop_blossoms_hitting(st, u, v);
                st.cost -= cuv;
                break;
            }
            if (cuv + dual_lower_bound_excluding(st, u, v) > st.cost + eps_tie) continue;

            // Exact probe on the residual set.
            std::vector<int> sub;
            for (int x : st.live)
                if (x != u && x != v) sub.push_back(x);
            PmResult res = solve_local(c, k, sub);
            if (cuv + res.min_cost <= st.cost + eps_tie) {
                chosen = v;
                st.cost = res.min_cost;
                // Map sub-local results back to root-local ids; align the
                // certificate transform with c_ref.
                const double shift = (st.c_ref - res.transform_c) / 2.0;
                st.match.assign(k, -1);
                std::fill(st.y.begin(), st.y.end(), 0.0);
                for (std::size_t i = 0; i < sub.size(); ++i) {
                    st.match[sub[i]] = sub[res.match[i]];
                    st.y[sub[i]] = res.y[i] + shift;
                }
                st.blossoms.clear();
                for (auto& b : res.blossoms) {
                    DualBlossom mapped;
                    mapped.z = b.z;
                    for (int m : b.members) mapped.members.push_back(sub[m]);
                    st.blossoms.push_back(std::move(mapped));
                }
                break;
            }
        }
        if (chosen < 0) throw std::logic_error("matching: tie-break found no extendable partner");
        out.emplace_back(u, chosen);
        std::vector<int> next;
        for (int x : st.live)
            if (x != u && x != chosen) next.push_back(x);
        st.live = std::move(next);
    }
    out.emplace_back(st.live[0], st.live[1]);
    return out;
}

std::vector<int> checked_subset(const Instance& inst, std::vector<int> vertices) {
    if (vertices.size() < 2 || vertices.size() % 2 != 0)
        throw std::invalid_argument("matching needs an even vertex subset of size >= 2, got " +
                                    std::to_string(vertices.size()));
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= inst.n_targets)
            throw std::invalid_argument("matching vertex out of range");
        if (i > 0 && vertices[i] == vertices[i - 1])
            throw std::invalid_argument("matching vertex subset has repeats");
    }
    return vertices;
}

Matching finish(const Instance& inst, const std::vector<int>& verts,
                std::vector<std::pair<int, int>> local_pairs) {
    Matching m;
    for (auto& [a, b] : local_pairs) {
        int ga = verts[a], gb = verts[b];
        if (ga > gb) std::swap(ga, gb);
        m.pairs.emplace_back(ga, gb);
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    m.total_cost = 0.0;
    for (const auto& [a, b] : m.pairs) m.total_cost += inst.cost(a, b);
    return m;
}

}  // namespace

Matching min_weight_perfect_matching(const Instance& inst, std::vector<int> vertices) {
    const std::vector<int> verts = checked_subset(inst, std::move(vertices));
    const int k = static_cast<int>(verts.size());
    if (k == 2) return finish(inst, verts, {{0, 1}});

    std::vector<double> c(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(i) * k + j] = inst.cost(verts[i], verts[j]);

    return finish(inst, verts, lexicographic_pairs(c, k));
}

Matching brute_force_matching(const Instance& inst, std::vector<int> vertices) {
    const std::vector<int> verts = checked_subset(inst, std::move(vertices));
    const int k = static_cast<int>(verts.size());
    if (k > 12)
        throw std::invalid_argument("brute_force_matching is limited to 12 vertices, got " +
                                    std::to_string(k));

    std::vector<std::pair<int, int>> current, best;
    double best_cost = kInf;
    std::vector<bool> used(k, false);

    // Smallest unmatched vertex first with ascending partners enumerates pair
    // lists in lexicographic order, so the first optimum found is the
    // lexicographically smallest.
    auto rec = [&](auto&& self, int matched, double cost) -> void {
        if (cost >= best_cost - 1e-12) return;
        if (matched == k) {
            best = current;
            best_cost = cost;
            return;
        }
        int u = 0;
        while (used[u]) ++u;
        used[u] = true;
        for (int v = u + 1; v < k; ++v) {
            if (used[v]) continue;
            used[v] = true;
            current.emplace_back(u, v);
            self(self, matched + 2, cost + inst.cost(verts[u], verts[v]));
            current.pop_back();
            used[v] = false;
        }
        used[u] = false;
    };
    rec(rec, 0, 0.0);
    return finish(inst, verts, std::move(best));
}

}  // namespace duo
