#pragma once
/**
 * The pixelation graph: bipartite intersection graph of horizontal and
 * vertical slices. Neighborhoods of one side induce paths in the other
 * side's tree, so the whole graph is stored as one path-endpoint pair per
 * node; edges are expanded lazily. The full edge list may be quadratic and
 * is only materialized by oracles and dumps.
 */

#include <functional>
#include <memory>
#include <mutex>

#include "rgallery/slicing.hpp"

namespace rgallery {

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// An edge of the pixelation graph; its pixel is the slice intersection.
struct PixelEdge {
    int h = -1;
    int v = -1;
    friend bool operator==(const PixelEdge& a, const PixelEdge& b) { return a.h == b.h && a.v == b.v; }
    friend bool operator<(const PixelEdge& a, const PixelEdge& b) {
        return a.h != b.h ? a.h < b.h : a.v < b.v;
    }
};

namespace detail {

/// Offline Tarjan lowest common ancestors, iterative. Linear-time up to the
/// inverse Ackermann factor, with no precomputed tables.
inline std::vector<int> offline_lca(const std::vector<std::vector<int>>& adj, int root,
                                    const std::vector<std::pair<int, int>>& queries) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> result(queries.size(), -1);
    // Queries bucketed per node in one flat array.
    std::vector<int> bucket_start(static_cast<size_t>(n) + 1, 0);
    for (const auto& [a, b] : queries)
        if (a != b) {
            ++bucket_start[static_cast<size_t>(a) + 1];
            ++bucket_start[static_cast<size_t>(b) + 1];
        }
    for (int i = 0; i < n; ++i)
        bucket_start[static_cast<size_t>(i) + 1] += bucket_start[static_cast<size_t>(i)];
    std::vector<std::pair<int, int>> bucket(static_cast<size_t>(bucket_start.back()));
    {
        std::vector<int> fill = bucket_start;
        for (size_t qi = 0; qi < queries.size(); ++qi) {
            auto [a, b] = queries[qi];
            if (a == b) { result[qi] = a; continue; }
            bucket[static_cast<size_t>(fill[static_cast<size_t>(a)]++)] = {b, static_cast<int>(qi)};
            bucket[static_cast<size_t>(fill[static_cast<size_t>(b)]++)] = {a, static_cast<int>(qi)};
        }
    }
    std::vector<int> dsu(static_cast<size_t>(n));
    std::vector<int> anc(static_cast<size_t>(n));
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<char> visited(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) dsu[static_cast<size_t>(i)] = i;
    auto find = [&](int x) {
        while (dsu[static_cast<size_t>(x)] != x) {
            dsu[static_cast<size_t>(x)] = dsu[static_cast<size_t>(dsu[static_cast<size_t>(x)])];
            x = dsu[static_cast<size_t>(x)];
        }
        return x;
    };
    std::vector<std::pair<int, size_t>> stack;
    stack.push_back({root, 0});
    anc[static_cast<size_t>(root)] = root;
    while (!stack.empty()) {
        auto& [u, idx] = stack.back();
        const auto& nbrs = adj[static_cast<size_t>(u)];
        if (idx < nbrs.size()) {
            int w = nbrs[idx++];
            if (w == parent[static_cast<size_t>(u)]) continue;
            parent[static_cast<size_t>(w)] = u;
            anc[static_cast<size_t>(w)] = w;
            stack.push_back({w, 0});
            continue;
        }
        visited[static_cast<size_t>(u)] = 1;
        for (int bi = bucket_start[static_cast<size_t>(u)];
             bi < bucket_start[static_cast<size_t>(u) + 1]; ++bi) {
            const auto& [other, qi] = bucket[static_cast<size_t>(bi)];
            if (visited[static_cast<size_t>(other)] && result[static_cast<size_t>(qi)] < 0)
                result[static_cast<size_t>(qi)] = anc[static_cast<size_t>(find(other))];
        }
        stack.pop_back();
        if (!stack.empty()) {
            int p = stack.back().first;
            dsu[static_cast<size_t>(find(u))] = find(p);
            anc[static_cast<size_t>(find(p))] = p;
        }
    }
    return result;
}

/// LCA by walking parent pointers; costs the length of the a-b path.
inline int walk_lca(const RTree& t, int a, int b) {
    while (t.depth[static_cast<size_t>(a)] > t.depth[static_cast<size_t>(b)])
        a = t.parent[static_cast<size_t>(a)];
    while (t.depth[static_cast<size_t>(b)] > t.depth[static_cast<size_t>(a)])
        b = t.parent[static_cast<size_t>(b)];
    while (a != b) {
        a = t.parent[static_cast<size_t>(a)];
        b = t.parent[static_cast<size_t>(b)];
    }
    return a;
}

/// Euler-tour sparse table for O(1) LCA queries on an RTree.
class LcaTable {
  public:
    explicit LcaTable(const RTree& t) {
        const int n = t.size();
        first_.assign(static_cast<size_t>(n), -1);
        euler_.reserve(static_cast<size_t>(2 * n));
        depth_.reserve(static_cast<size_t>(2 * n));
        // Iterative Euler tour.
        std::vector<std::pair<int, size_t>> stack;
        stack.push_back({t.root, 0});
        push_euler(t, t.root);
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            const auto& nbrs = t.adj[static_cast<size_t>(u)];
            bool descended = false;
            while (idx < nbrs.size()) {
                int w = nbrs[idx++];
                if (w == t.parent[static_cast<size_t>(u)]) continue;
                stack.push_back({w, 0});
                push_euler(t, w);
                descended = true;
                break;
            }
            if (!descended) {
                stack.pop_back();
                if (!stack.empty()) push_euler(t, stack.back().first);
            }
        }
        const size_t m = euler_.size();
        int logm = 1;
        while ((1u << logm) < m) ++logm;
        table_.assign(static_cast<size_t>(logm) + 1, std::vector<int>(m));
        for (size_t i = 0; i < m; ++i) table_[0][i] = static_cast<int>(i);
        for (size_t k = 1; k < table_.size(); ++k)
            for (size_t i = 0; i + (1u << k) <= m; ++i) {
                int a = table_[k - 1][i];
                int b = table_[k - 1][i + (1u << (k - 1))];
                table_[k][i] = depth_[static_cast<size_t>(a)] <= depth_[static_cast<size_t>(b)] ? a : b;
            }
        depth_of_node_ = t.depth;
    }

    int lca(int a, int b) const {
        size_t ia = static_cast<size_t>(first_[static_cast<size_t>(a)]);
        size_t ib = static_cast<size_t>(first_[static_cast<size_t>(b)]);
        if (ia > ib) std::swap(ia, ib);
        size_t len = ib - ia + 1;
        size_t k = 0;
        while ((2u << k) <= len) ++k;
        int x = table_[k][ia];
        int y = table_[k][ib + 1 - (1u << k)];
        int pos = depth_[static_cast<size_t>(x)] <= depth_[static_cast<size_t>(y)] ? x : y;
        return euler_[static_cast<size_t>(pos)];
    }

    /// True iff x lies on the tree path between a and b (inclusive).
    bool on_path(int a, int b, int x) const {
        int ab = lca(a, b);
        if (lca(a, x) == x && lca(x, b) == ab) return true;
        if (lca(b, x) == x && lca(x, a) == ab) return true;
        return false;
    }

    int depth(int u) const { return depth_of_node_[static_cast<size_t>(u)]; }

  private:
    void push_euler(const RTree& t, int u) {
        if (first_[static_cast<size_t>(u)] < 0)
            first_[static_cast<size_t>(u)] = static_cast<int>(euler_.size());
        euler_.push_back(u);
        depth_.push_back(t.depth[static_cast<size_t>(u)]);
    }

    std::vector<int> euler_, depth_, first_, depth_of_node_;
    std::vector<std::vector<int>> table_;
};

}  // namespace detail

class PixelationGraph {
  public:
    PixelationGraph(const SliceSet& hs, const SliceSet& vs, const RTree& th, const RTree& tv,
                    const SideLabels& hlabels, const SideLabels& vlabels)
        : hs_(&hs), vs_(&vs), th_(&th), tv_(&tv) {
        const int nv = vs.size();
        const int nh = hs.size();
        vfirst_.resize(static_cast<size_t>(nv));
        vlast_.resize(static_cast<size_t>(nv));
        hfirst_.resize(static_cast<size_t>(nh));
        hlast_.resize(static_cast<size_t>(nh));
        for (const Slice& v : vs.slices) {
            // The slice just above the bottom side and just below the top side
            // are the endpoints of this column's neighborhood path in T_H.
            int lo = hlabels.slice_starting_at(hs, v.rect.ymin, v.rect.xmin, v.rect.xmax);
            int hi = hlabels.slice_ending_at(hs, v.rect.ymax, v.rect.xmin, v.rect.xmax);
            if (lo < 0 || hi < 0) throw StructureViolation("vertical slice sides unlabeled");
            vfirst_[static_cast<size_t>(v.id)] = lo;
            vlast_[static_cast<size_t>(v.id)] = hi;
        }
        for (const Slice& h : hs.slices) {
            int lo = vlabels.slice_starting_at(vs, h.rect.xmin, h.rect.ymin, h.rect.ymax);
            int hi = vlabels.slice_ending_at(vs, h.rect.xmax, h.rect.ymin, h.rect.ymax);
            if (lo < 0 || hi < 0) throw StructureViolation("horizontal slice sides unlabeled");
            hfirst_[static_cast<size_t>(h.id)] = lo;
            hlast_[static_cast<size_t>(h.id)] = hi;
        }
        // Count edges from both sides with one offline pass each; tables for
        // O(1) queries are built lazily on first use.
        std::vector<std::pair<int, int>> vq, hq;
        vq.reserve(static_cast<size_t>(nv));
        hq.reserve(static_cast<size_t>(nh));
        for (int v = 0; v < nv; ++v) vq.push_back({vfirst(v), vlast(v)});
        for (int h = 0; h < nh; ++h) hq.push_back({hfirst(h), hlast(h)});
        std::vector<int> vl = detail::offline_lca(th.adj, th.root, vq);
        std::vector<int> hl = detail::offline_lca(tv.adj, tv.root, hq);
        edge_count_ = 0;
        for (int v = 0; v < nv; ++v)
            edge_count_ += th.depth[static_cast<size_t>(vfirst(v))] +
                           th.depth[static_cast<size_t>(vlast(v))] -
                           2 * th.depth[static_cast<size_t>(vl[static_cast<size_t>(v)])] + 1;
        long long check = 0;
        for (int h = 0; h < nh; ++h)
            check += tv.depth[static_cast<size_t>(hfirst(h))] +
                     tv.depth[static_cast<size_t>(hlast(h))] -
                     2 * tv.depth[static_cast<size_t>(hl[static_cast<size_t>(h)])] + 1;
        if (check != edge_count_) throw StructureViolation("pixelation edge counts disagree");
    }

    const SliceSet& hslices() const { return *hs_; }
    const SliceSet& vslices() const { return *vs_; }
    const RTree& htree() const { return *th_; }
    const RTree& vtree() const { return *tv_; }

    int vfirst(int v) const { return vfirst_[static_cast<size_t>(v)]; }
    int vlast(int v) const { return vlast_[static_cast<size_t>(v)]; }
    int hfirst(int h) const { return hfirst_[static_cast<size_t>(h)]; }
    int hlast(int h) const { return hlast_[static_cast<size_t>(h)]; }

    long long edge_count() const { return edge_count_; }

    bool edge_exists(int h, int v) const {
        return hlca().on_path(vfirst(v), vlast(v), h);
    }

    /// Visits N_G(v) in T_H path order (bottom to top).
    void for_each_h_neighbor(int v, const std::function<void(int)>& fn) const {
        walk_path(*th_, vfirst(v), vlast(v), fn);
    }
    /// Visits N_G(h) in T_V path order (left to right).
    void for_each_v_neighbor(int h, const std::function<void(int)>& fn) const {
        walk_path(*tv_, hfirst(h), hlast(h), fn);
    }

    AxisRect pixel(PixelEdge e) const {
        AxisRect r = hs_->rect(e.h).intersect(vs_->rect(e.v));
        if (!r.valid()) throw StructureViolation("pixel of a non-edge requested");
        return r;
    }

    const detail::LcaTable& hlca() const {
        std::call_once(th_once_, [&] { th_lca_ = std::make_unique<detail::LcaTable>(*th_); });
        return *th_lca_;
    }
    const detail::LcaTable& vlca() const {
        std::call_once(tv_once_, [&] { tv_lca_ = std::make_unique<detail::LcaTable>(*tv_); });
        return *tv_lca_;
    }

  private:
    static void walk_path(const RTree& t, int a, int b, const std::function<void(int)>& fn) {
        int m = detail::walk_lca(t, a, b);
        std::vector<int> up;
        for (int x = a; x != m; x = t.parent[static_cast<size_t>(x)]) up.push_back(x);
        for (int x : up) fn(x);
        fn(m);
        std::vector<int> down;
        for (int x = b; x != m; x = t.parent[static_cast<size_t>(x)]) down.push_back(x);
        for (size_t i = down.size(); i-- > 0;) fn(down[i]);
    }

    const SliceSet* hs_;
    const SliceSet* vs_;
    const RTree* th_;
    const RTree* tv_;
    std::vector<int> vfirst_, vlast_, hfirst_, hlast_;
    mutable std::once_flag th_once_, tv_once_;
    mutable std::unique_ptr<detail::LcaTable> th_lca_, tv_lca_;
    long long edge_count_ = 0;
};

inline PixelationGraph build_pixelation(const SliceSet& hs, const SliceSet& vs, const RTree& th,
                                        const RTree& tv, const SideLabels& hlabels,
                                        const SideLabels& vlabels) {
    return PixelationGraph(hs, vs, th, tv, hlabels, vlabels);
}

/// Oracle-mode edge list, sorted by (h, v).
inline std::vector<PixelEdge> materialize_edges(const PixelationGraph& g) {
    std::vector<PixelEdge> edges;
    edges.reserve(static_cast<size_t>(g.edge_count()));
    for (int h = 0; h < g.hslices().size(); ++h)
        g.for_each_v_neighbor(h, [&](int v) { edges.push_back({h, v}); });
    std::sort(edges.begin(), edges.end());
    return edges;
}

/// Two pixel-graph edges see each other iff they share a slice or their four
/// slices induce a 4-cycle.
inline bool edges_r_visible(const PixelationGraph& g, PixelEdge e1, PixelEdge e2) {
    if (e1.h == e2.h || e1.v == e2.v) return true;
    return g.edge_exists(e1.h, e2.v) && g.edge_exists(e2.h, e1.v);
}

/// Cross-checks the geometric and graph-side visibility predicates for
/// points interior to the pixels of e1 and e2.
inline bool r_vision_agrees(const RectilinearDomain& d, const PixelationGraph& g, PixelEdge e1,
                            PixelEdge e2, Point p1, Point p2) {
    return points_r_visible(d, p1, p2) == edges_r_visible(g, e1, e2);
}

namespace detail {

/// True iff the graph has no chordless cycle of length >= 6. Exhaustive
/// induced-path search; intended for small graphs.
inline bool chordal_bipartite_adj(const std::vector<std::vector<int>>& nbrs) {
    const int n = static_cast<int>(nbrs.size());
    std::vector<std::vector<char>> adj(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
    for (int u = 0; u < n; ++u)
        for (int w : nbrs[static_cast<size_t>(u)]) adj[static_cast<size_t>(u)][static_cast<size_t>(w)] = 1;

    // Grow induced paths from each start node s (the cycle's smallest node).
    std::vector<int> path;
    std::vector<char> in_path(static_cast<size_t>(n), 0);
    std::function<bool(int)> grow = [&](int s) -> bool {
        int last = path.back();
        for (int w : nbrs[static_cast<size_t>(last)]) {
            if (w <= s || in_path[static_cast<size_t>(w)]) continue;
            bool chord = false;
            for (size_t i = 1; i + 1 < path.size(); ++i)
                if (adj[static_cast<size_t>(w)][static_cast<size_t>(path[i])]) { chord = true; break; }
            if (chord) continue;
            if (adj[static_cast<size_t>(w)][static_cast<size_t>(s)]) {
                if (path.size() >= 5) return true;  // cycle length path.size()+1 >= 6
                continue;
            }
            path.push_back(w);
            in_path[static_cast<size_t>(w)] = 1;
            if (grow(s)) return true;
            in_path[static_cast<size_t>(w)] = 0;
            path.pop_back();
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        path.assign(1, s);
        std::fill(in_path.begin(), in_path.end(), 0);
        in_path[static_cast<size_t>(s)] = 1;
        for (int v1 : nbrs[static_cast<size_t>(s)]) {
            if (v1 <= s) continue;
            path.push_back(v1);
            in_path[static_cast<size_t>(v1)] = 1;
            if (grow(s)) return false;
            in_path[static_cast<size_t>(v1)] = 0;
            path.pop_back();
        }
    }
    return true;
}

}  // namespace detail

/// Exhaustively verifies that no induced cycle of length >= 6 is chordless.
/// Test utility for small graphs only.
inline bool check_chordal_bipartite(const PixelationGraph& g, long long edge_cap = 64) {
    if (g.edge_count() > edge_cap) throw TooLarge("pixelation graph too large for chordality check");
    const int nh = g.hslices().size();
    const int nv = g.vslices().size();
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(nh + nv));
    for (int h = 0; h < nh; ++h)
        g.for_each_v_neighbor(h, [&](int v) {
            nbrs[static_cast<size_t>(h)].push_back(nh + v);
            nbrs[static_cast<size_t>(nh + v)].push_back(h);
        });
    return detail::chordal_bipartite_adj(nbrs);
}

/// Debug dump of the sparse representation plus the edge list.
inline std::string dump_pixelation(const PixelationGraph& g, bool with_edges) {
    std::string out;
    for (int h = 0; h < g.hslices().size(); ++h) out += "h " + std::to_string(h) + '\n';
    for (int v = 0; v < g.vslices().size(); ++v)
        out += "v " + std::to_string(v) + ' ' + std::to_string(g.vfirst(v)) + ' ' +
               std::to_string(g.vlast(v)) + '\n';
    if (with_edges)
        for (const PixelEdge& e : materialize_edges(g))
            out += std::to_string(e.h) + ' ' + std::to_string(e.v) + '\n';
    return out;
}

}  // namespace rgallery
