#pragma once
/**
 * Exact minimum mobile guard systems (horizontal or vertical) in near-linear
 * time. A guard on a slice covers exactly the union of its neighbors in the
 * pixelation graph, so the problem is covering one side of the graph by
 * tree-path neighborhoods of the other side. The greedy below selects a
 * maximal family of pairwise disjoint neighborhoods, processing them by
 * decreasing distance of their shallowest node from the root, and covers
 * each selected neighborhood with that shallowest node. The family and the
 * cover have equal size, which certifies optimality: pairwise disjoint
 * neighborhoods lower-bound any cover.
 */

#include "rgallery/pixelation.hpp"

namespace rgallery {

struct MobileGuardSolution {
    Orientation guard_orientation = Orientation::Horizontal;
    std::vector<int> guards;   // slice ids of guard_orientation
    std::vector<int> witness;  // opposite slices with pairwise disjoint neighborhoods
    int root = 0;

    int size() const { return static_cast<int>(guards.size()); }
};

namespace detail {

struct MobileProblem {
    const RTree* guard_tree;                     // tree of the guard orientation
    std::vector<std::pair<int, int>> endpoints;  // per opposite slice: path endpoints
};

inline MobileProblem problem_for(const PixelationGraph& g, Orientation guard_orientation) {
    MobileProblem p;
    if (guard_orientation == Orientation::Horizontal) {
        p.guard_tree = &g.htree();
        p.endpoints.reserve(static_cast<size_t>(g.vslices().size()));
        for (int v = 0; v < g.vslices().size(); ++v) p.endpoints.push_back({g.vfirst(v), g.vlast(v)});
    } else {
        p.guard_tree = &g.vtree();
        p.endpoints.reserve(static_cast<size_t>(g.hslices().size()));
        for (int h = 0; h < g.hslices().size(); ++h) p.endpoints.push_back({g.hfirst(h), g.hlast(h)});
    }
    return p;
}

}  // namespace detail

/// Checks the optimality certificate: as many guards as witnesses, and the
/// witnesses' neighborhoods pairwise disjoint.
inline bool verify_certificate(const PixelationGraph& g, const MobileGuardSolution& sol) {
    if (sol.guards.size() != sol.witness.size()) return false;
    detail::MobileProblem p = detail::problem_for(g, sol.guard_orientation);
    const RTree& t = *p.guard_tree;
    std::vector<char> seen(static_cast<size_t>(t.size()), 0);
    for (int w : sol.witness) {
        auto [a, b] = p.endpoints[static_cast<size_t>(w)];
        int m = detail::walk_lca(t, a, b);
        for (int x = a;; x = t.parent[static_cast<size_t>(x)]) {
            if (seen[static_cast<size_t>(x)]) return false;
            seen[static_cast<size_t>(x)] = 1;
            if (x == m) break;
        }
        for (int x = b; x != m; x = t.parent[static_cast<size_t>(x)]) {
            if (seen[static_cast<size_t>(x)]) return false;
            seen[static_cast<size_t>(x)] = 1;
        }
    }
    return true;
}

/// True iff every opposite-orientation slice crosses some guard. Linear: a
/// path contains a marked node iff the deepest marked ancestor of one of its
/// endpoints is at least as deep as the path's shallowest node.
inline bool verify_mobile_cover(const PixelationGraph& g, const std::vector<int>& guards,
                                Orientation guard_orientation) {
    detail::MobileProblem p = detail::problem_for(g, guard_orientation);
    const RTree& t = *p.guard_tree;
    std::vector<int> tops = detail::offline_lca(t.adj, t.root, p.endpoints);
    std::vector<char> marked(static_cast<size_t>(t.size()), 0);
    for (int gid : guards) marked[static_cast<size_t>(gid)] = 1;
    std::vector<int> deepest(static_cast<size_t>(t.size()), -1);
    for (int u : t.bfs_order) {
        int pd = t.parent[static_cast<size_t>(u)] < 0
                     ? -1
                     : deepest[static_cast<size_t>(t.parent[static_cast<size_t>(u)])];
        deepest[static_cast<size_t>(u)] =
            marked[static_cast<size_t>(u)] ? t.depth[static_cast<size_t>(u)] : pd;
    }
    for (size_t i = 0; i < p.endpoints.size(); ++i) {
        auto [a, b] = p.endpoints[i];
        int top = t.depth[static_cast<size_t>(tops[i])];
        if (deepest[static_cast<size_t>(a)] < top && deepest[static_cast<size_t>(b)] < top)
            return false;
    }
    return true;
}

namespace detail {

inline MobileGuardSolution solve_mobile(const PixelationGraph& g, Orientation guard_orientation,
                                        int root) {
    MobileProblem p = problem_for(g, guard_orientation);
    const RTree& t = *p.guard_tree;
    const int nt = static_cast<int>(p.endpoints.size());
    const int nodes = t.size();

    // Depths from the chosen root (the tree may be re-rooted per call).
    std::vector<int> depth(static_cast<size_t>(nodes), -1);
    std::vector<int> bfs{root};
    depth[static_cast<size_t>(root)] = 0;
    for (size_t head = 0; head < bfs.size(); ++head) {
        int u = bfs[head];
        for (int w : t.adj[static_cast<size_t>(u)])
            if (depth[static_cast<size_t>(w)] < 0) {
                depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(u)] + 1;
                bfs.push_back(w);
            }
    }

    std::vector<int> lca = offline_lca(t.adj, root, p.endpoints);

    std::vector<int> order(static_cast<size_t>(nt));
    for (int i = 0; i < nt; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = depth[static_cast<size_t>(lca[static_cast<size_t>(a)])];
        int db = depth[static_cast<size_t>(lca[static_cast<size_t>(b)])];
        return da != db ? da > db : a < b;
    });

    MobileGuardSolution sol;
    sol.guard_orientation = guard_orientation;
    sol.root = root;
    std::vector<char> marked(static_cast<size_t>(nodes), 0);
    std::vector<int> stack;
    for (int ti : order) {
        auto [a, b] = p.endpoints[static_cast<size_t>(ti)];
        if (marked[static_cast<size_t>(a)] || marked[static_cast<size_t>(b)]) continue;
        int top = lca[static_cast<size_t>(ti)];
        sol.guards.push_back(top);
        sol.witness.push_back(ti);
        marked[static_cast<size_t>(top)] = 1;
        stack.assign(1, top);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : t.adj[static_cast<size_t>(u)])
                if (depth[static_cast<size_t>(w)] > depth[static_cast<size_t>(u)] &&
                    !marked[static_cast<size_t>(w)]) {
                    marked[static_cast<size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }

    if (!verify_certificate(g, sol) || !verify_mobile_cover(g, sol.guards, guard_orientation))
        throw StructureViolation("mobile guard certificate failed");
    return sol;
}

}  // namespace detail

/// Minimum horizontal mobile guard system (guards are horizontal slices).
/// The root only affects which optimal solution is returned, not its size.
inline MobileGuardSolution solve_mhsc(const PixelationGraph& g, int root = 0) {
    return detail::solve_mobile(g, Orientation::Horizontal, root);
}

/// Minimum vertical mobile guard system.
inline MobileGuardSolution solve_mvsc(const PixelationGraph& g, int root = 0) {
    return detail::solve_mobile(g, Orientation::Vertical, root);
}

}  // namespace rgallery
