#pragma once
/**
 * Point guard construction. Given dominating slice sets M_H, M_V of the
 * pixelation graph, builds a set Z of pixels, |Z| <= ⌊4(|M_H|+|M_V|-1)/3⌋,
 * from which every pixel of the graph is r-visible. Placing one interior
 * point (the centroid) in each chosen pixel yields a point guard system.
 *
 * The work happens per 2-connected block of the induced guard subgraph M:
 * the union of the bounding boxes of the block's 4-cycles forms a core
 * region; every pixel of the block is classified by how many of its corners
 * lie on that region's boundary; slices whose both long sides touch the
 * boundary are split in half; and a guard set is grown over the resulting
 * replaceability structure in five phases. Across blocks and components the
 * pieces are joined by cut vertices and a connector edge set W.
 */

#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

#include "rgallery/mobile_guards.hpp"

namespace rgallery {

struct NotDominating : std::runtime_error {
    explicit NotDominating(const std::string& what) : std::runtime_error(what) {}
};
struct CoverageFailure : std::runtime_error {
    explicit CoverageFailure(const std::string& what) : std::runtime_error(what) {}
};
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class EdgeClass { Convex, Reflex, Side, Internal };

/// Verification ledger for one processed 2-connected block.
struct BlockStats {
    int m_nodes = 0;        // |V(M)| before refinement
    int refined_nodes = 0;  // |V(M')|
    int convex = 0, reflex = 0, side = 0, internal = 0;
    int split_h = 0, split_v = 0;
    int necks = 0;
    int cycles_cut = 0;    // whole 4-cycle intervals replaced by one guard
    int windows_cut = 0;   // chord windows removed from cycles or walks
    int paths_consumed = 0;
    int guard_count = 0;  // after projecting back through the split map
    bool identities_ok = false;  // c'+r'+s' = 2|V(M')|-4 and |V(M')| = c'+s'/2
    bool x_structure_ok = false;  // degrees and path count of the auxiliary graph
    bool phase1_ok = false;       // opening weight inequality
    bool ledger_ok = false;       // per-step weight inequality held throughout
    bool closure_ok = false;      // guard-set closure properties verified
};

namespace detail {

/// Tree on a subset of slices; adjacency per the consecutive-crosser rule.
class SubTree {
  public:
    explicit SubTree(int n = 0) : adj_(static_cast<size_t>(n)) {}

    void add_edge(int a, int b) {
        if (a == b) return;
        auto& na = adj_[static_cast<size_t>(a)];
        if (std::find(na.begin(), na.end(), b) != na.end()) return;
        na.push_back(b);
        adj_[static_cast<size_t>(b)].push_back(a);
        ++edges_;
    }

    void verify_tree(const char* what) const {
        const int n = static_cast<int>(adj_.size());
        if (edges_ != n - 1) throw StructureViolation(std::string(what) + ": not a tree");
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj_[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n) throw StructureViolation(std::string(what) + ": disconnected");
    }

    std::vector<int> path(int a, int b) const {
        const int n = static_cast<int>(adj_.size());
        std::vector<int> prev(static_cast<size_t>(n), -2);
        std::vector<int> queue{a};
        prev[static_cast<size_t>(a)] = -1;
        for (size_t head = 0; head < queue.size() && prev[static_cast<size_t>(b)] == -2; ++head) {
            int u = queue[head];
            for (int w : adj_[static_cast<size_t>(u)])
                if (prev[static_cast<size_t>(w)] == -2) {
                    prev[static_cast<size_t>(w)] = u;
                    queue.push_back(w);
                }
        }
        std::vector<int> out;
        for (int x = b; x != -1; x = prev[static_cast<size_t>(x)]) out.push_back(x);
        std::reverse(out.begin(), out.end());
        return out;
    }

    bool on_path(int a, int b, int x) const {
        auto p = path(a, b);
        return std::find(p.begin(), p.end(), x) != p.end();
    }

    std::vector<int> bfs_depth(int root) const {
        std::vector<int> depth(adj_.size(), -1);
        std::vector<int> queue{root};
        depth[static_cast<size_t>(root)] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int w : adj_[static_cast<size_t>(u)])
                if (depth[static_cast<size_t>(w)] < 0) {
                    depth[static_cast<size_t>(w)] = depth[static_cast<size_t>(u)] + 1;
                    queue.push_back(w);
                }
        }
        return depth;
    }

    std::vector<int> bfs_parent(int root) const {
        std::vector<int> parent(adj_.size(), -2);
        std::vector<int> queue{root};
        parent[static_cast<size_t>(root)] = -1;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int w : adj_[static_cast<size_t>(u)])
                if (parent[static_cast<size_t>(w)] == -2) {
                    parent[static_cast<size_t>(w)] = u;
                    queue.push_back(w);
                }
        }
        return parent;
    }

    const std::vector<std::vector<int>>& adj() const { return adj_; }
    int size() const { return static_cast<int>(adj_.size()); }

  private:
    std::vector<std::vector<int>> adj_;
    int edges_ = 0;
};

/// Minimum dominating set of a path given by node order; if required >= 0,
/// that position must be chosen. Returns chosen positions.
inline std::vector<int> path_dominating_set(int k, int required) {
    constexpr int kInf = 1 << 28;
    // state 0: chosen; 1: covered, not chosen; 2: uncovered, not chosen
    std::vector<std::array<int, 3>> dp(static_cast<size_t>(k), {kInf, kInf, kInf});
    std::vector<std::array<int, 3>> from(static_cast<size_t>(k), {-1, -1, -1});
    dp[0][0] = 1;
    dp[0][2] = 0;
    if (required == 0) dp[0][2] = kInf;
    for (int i = 1; i < k; ++i) {
        for (int s = 0; s < 3; ++s) {
            if (dp[static_cast<size_t>(i - 1)][static_cast<size_t>(s)] >= kInf) continue;
            int base = dp[static_cast<size_t>(i - 1)][static_cast<size_t>(s)];
            // choose i
            if (base + 1 < dp[static_cast<size_t>(i)][0]) {
                dp[static_cast<size_t>(i)][0] = base + 1;
                from[static_cast<size_t>(i)][0] = s;
            }
            if (required == i) continue;  // forced choice
            if (s == 0 && base < dp[static_cast<size_t>(i)][1]) {
                dp[static_cast<size_t>(i)][1] = base;
                from[static_cast<size_t>(i)][1] = s;
            }
            if (s == 1 && base < dp[static_cast<size_t>(i)][2]) {
                dp[static_cast<size_t>(i)][2] = base;
                from[static_cast<size_t>(i)][2] = s;
            }
        }
    }
    int best_state = dp[static_cast<size_t>(k - 1)][0] <= dp[static_cast<size_t>(k - 1)][1] ? 0 : 1;
    std::vector<int> chosen;
    int state = best_state;
    for (int i = k - 1; i >= 0; --i) {
        if (state == 0) chosen.push_back(i);
        state = i > 0 ? from[static_cast<size_t>(i)][static_cast<size_t>(state)] : -1;
    }
    std::reverse(chosen.begin(), chosen.end());
    return chosen;
}

/// The 2-connected case: classification, refinement, replaceability graph
/// and the five construction phases, on an abstract slice system.
class BlockSolver {
  public:
    struct Input {
        std::vector<AxisRect> h, v;
    };

    struct Edge {
        int h = -1, v = -1;
        friend bool operator==(const Edge& a, const Edge& b) { return a.h == b.h && a.v == b.v; }
        friend bool operator<(const Edge& a, const Edge& b) {
            return a.h != b.h ? a.h < b.h : a.v < b.v;
        }
    };

    explicit BlockSolver(Input in) : in_(std::move(in)) {
        build_core();
        split_slices();
        build_trees();
        classify_all();
        build_x();
    }

    /// Runs the construction and returns guards as (original h, original v)
    /// index pairs into the input lists.
    std::vector<std::pair<int, int>> solve() {
        phase1();
        phase2_cycles();
        phase3_self_intersections();
        phase4_necks();
        phase5_paths();
        verify_closure();
        std::set<std::pair<int, int>> projected;
        for (const Edge& e : guards_)
            projected.insert({H_[static_cast<size_t>(e.h)].orig, V_[static_cast<size_t>(e.v)].orig});
        stats_.guard_count = static_cast<int>(projected.size());
        if (stats_.guard_count + 2 * (stats_.split_h + stats_.split_v) <
            static_cast<int>(guards_.size()))
            throw StructureViolation("projection lost more guards than the split halves");
        long long m_nodes = static_cast<long long>(in_.h.size() + in_.v.size());
        if (3 * stats_.guard_count > 4 * (m_nodes - 1))
            throw BoundExceeded("block guard set exceeds 4(|V|-1)/3");
        return {projected.begin(), projected.end()};
    }

    const BlockStats& stats() const { return stats_; }

    // --- structure accessors (used by tests) ---
    int refined_h_count() const { return static_cast<int>(H_.size()); }
    int refined_v_count() const { return static_cast<int>(V_.size()); }
    const AxisRect& refined_h(int i) const { return H_[static_cast<size_t>(i)].rect; }
    const AxisRect& refined_v(int i) const { return V_[static_cast<size_t>(i)].rect; }
    int orig_h(int i) const { return H_[static_cast<size_t>(i)].orig; }
    int orig_v(int i) const { return V_[static_cast<size_t>(i)].orig; }
    const std::vector<int>& split_h() const { return split_h_; }
    const std::vector<int>& split_v() const { return split_v_; }
    const std::vector<AxisRect>& core_rects() const { return core_; }
    bool crosses(int hi, int vi) const {
        return H_[static_cast<size_t>(hi)].rect.crosses(V_[static_cast<size_t>(vi)].rect);
    }
    EdgeClass edge_class(int hi, int vi) const {
        auto it = class_.find({hi, vi});
        if (it == class_.end()) throw StructureViolation("class of a non-edge requested");
        return it->second;
    }
    int x_node_count() const { return static_cast<int>(xnodes_.size()); }
    const Edge& x_node(int i) const { return xnodes_[static_cast<size_t>(i)]; }
    const std::vector<int>& x_adj(int i) const { return xadj_[static_cast<size_t>(i)]; }

    /// Replaceability: a guard at e2 sees everything whose closest witness
    /// was e1. Strict betweenness; reflexive.
    bool dominates(Edge e2, Edge e1) const {
        if (e2 == e1) return true;
        if (e1.h == e2.h) return shared_slice_dom(e1.h, e1.v, e2.v, true);
        if (e1.v == e2.v) return shared_slice_dom(e1.v, e1.h, e2.h, false);
        if (!crosses(e2.h, e1.v) || !crosses(e1.h, e2.v)) return false;
        bool ok_h = false;
        for (int h3 = 0; h3 < refined_h_count() && !ok_h; ++h3)
            if (h3 != e1.h && h3 != e2.h && crosses(h3, e1.v) && crosses(h3, e2.v) &&
                th_.on_path(e2.h, h3, e1.h))
                ok_h = true;
        if (!ok_h) return false;
        for (int v3 = 0; v3 < refined_v_count(); ++v3)
            if (v3 != e1.v && v3 != e2.v && crosses(e1.h, v3) && crosses(e2.h, v3) &&
                tv_.on_path(e2.v, v3, e1.v))
                return true;
        return false;
    }

  private:
    struct RefSlice {
        AxisRect rect;
        int orig;
    };

    // --- core region -------------------------------------------------------

    bool covered2(Coord px, Coord py) const {
        for (const AxisRect& r : core_)
            if (2 * r.xmin <= px && px <= 2 * r.xmax && 2 * r.ymin <= py && py <= 2 * r.ymax)
                return true;
        return false;
    }

    bool on_core_boundary(Point p) const {
        if (!covered2(2 * p.x, 2 * p.y)) return false;
        for (Coord dx : {-1LL, 1LL})
            for (Coord dy : {-1LL, 1LL})
                if (!covered2(2 * p.x + dx, 2 * p.y + dy)) return true;
        return false;
    }

    /// Positive-length overlap of an axis segment with the core boundary.
    bool segment_meets_boundary(Coord lo, Coord hi, Coord fixed, bool horizontal_segment) const {
        std::vector<Coord> cuts{lo, hi};
        for (const AxisRect& r : core_) {
            Coord a = horizontal_segment ? r.xmin : r.ymin;
            Coord b = horizontal_segment ? r.xmax : r.ymax;
            if (a > lo && a < hi) cuts.push_back(a);
            if (b > lo && b < hi) cuts.push_back(b);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            Coord mid2 = cuts[i] + cuts[i + 1];  // doubled midpoint of the piece
            Coord px = horizontal_segment ? mid2 : 2 * fixed;
            Coord py = horizontal_segment ? 2 * fixed : mid2;
            if (!covered2(px, py)) continue;
            bool interior;
            if (horizontal_segment)
                interior = covered2(px, py - 1) && covered2(px, py + 1);
            else
                interior = covered2(px - 1, py) && covered2(px + 1, py);
            if (!interior) return true;
        }
        return false;
    }

    void build_core() {
        const int nh = static_cast<int>(in_.h.size());
        const int nv = static_cast<int>(in_.v.size());
        if (nh + nv < 4) throw StructureViolation("block too small for the 4-cycle construction");
        for (int hi = 0; hi < nh; ++hi)
            for (int vi = 0; vi < nv; ++vi)
                if (in_.h[static_cast<size_t>(hi)].crosses(in_.v[static_cast<size_t>(vi)])) {
                    const AxisRect& h = in_.h[static_cast<size_t>(hi)];
                    const AxisRect& v = in_.v[static_cast<size_t>(vi)];
                    if (!(h.xmin <= v.xmin && v.xmax <= h.xmax && v.ymin <= h.ymin &&
                          h.ymax <= v.ymax))
                        throw StructureViolation("slice pair crosses without full overlap");
                }
        // Tree on the input horizontal slices; its edges generate the core.
        SubTree mh(nh);
        for (int vi = 0; vi < nv; ++vi) {
            std::vector<int> crossers;
            for (int hi = 0; hi < nh; ++hi)
                if (in_.h[static_cast<size_t>(hi)].crosses(in_.v[static_cast<size_t>(vi)]))
                    crossers.push_back(hi);
            std::sort(crossers.begin(), crossers.end(), [&](int a, int b) {
                return in_.h[static_cast<size_t>(a)].ymin < in_.h[static_cast<size_t>(b)].ymin;
            });
            for (size_t i = 0; i + 1 < crossers.size(); ++i) mh.add_edge(crossers[i], crossers[i + 1]);
        }
        mh.verify_tree("block horizontal tree");
        for (int a = 0; a < nh; ++a)
            for (int b : mh.adj()[static_cast<size_t>(a)]) {
                if (b < a) continue;
                Coord xmin = 0, xmax = 0;
                bool first = true;
                int commons = 0;
                for (int vi = 0; vi < nv; ++vi) {
                    const AxisRect& v = in_.v[static_cast<size_t>(vi)];
                    if (!in_.h[static_cast<size_t>(a)].crosses(v) ||
                        !in_.h[static_cast<size_t>(b)].crosses(v))
                        continue;
                    ++commons;
                    xmin = first ? v.xmin : std::min(xmin, v.xmin);
                    xmax = first ? v.xmax : std::max(xmax, v.xmax);
                    first = false;
                }
                if (commons < 2) throw StructureViolation("adjacent block slices share <2 crossers");
                core_.push_back({xmin,
                                 std::min(in_.h[static_cast<size_t>(a)].ymin,
                                          in_.h[static_cast<size_t>(b)].ymin),
                                 xmax,
                                 std::max(in_.h[static_cast<size_t>(a)].ymax,
                                          in_.h[static_cast<size_t>(b)].ymax)});
            }
    }

    // --- refinement ---------------------------------------------------------

    void split_slices() {
        for (int hi = 0; hi < static_cast<int>(in_.h.size()); ++hi) {
            const AxisRect& r = in_.h[static_cast<size_t>(hi)];
            bool top = segment_meets_boundary(r.xmin, r.xmax, r.ymax, true);
            bool bottom = segment_meets_boundary(r.xmin, r.xmax, r.ymin, true);
            if (top && bottom) {
                split_h_.push_back(hi);
                Coord mid = (r.ymin + r.ymax) / 2;
                H_.push_back({{r.xmin, r.ymin, r.xmax, mid}, hi});
                H_.push_back({{r.xmin, mid, r.xmax, r.ymax}, hi});
            } else {
                H_.push_back({r, hi});
            }
        }
        for (int vi = 0; vi < static_cast<int>(in_.v.size()); ++vi) {
            const AxisRect& r = in_.v[static_cast<size_t>(vi)];
            bool left = segment_meets_boundary(r.ymin, r.ymax, r.xmin, false);
            bool right = segment_meets_boundary(r.ymin, r.ymax, r.xmax, false);
            if (left && right) {
                split_v_.push_back(vi);
                Coord mid = (r.xmin + r.xmax) / 2;
                V_.push_back({{r.xmin, r.ymin, mid, r.ymax}, vi});
                V_.push_back({{mid, r.ymin, r.xmax, r.ymax}, vi});
            } else {
                V_.push_back({r, vi});
            }
        }
        stats_.m_nodes = static_cast<int>(in_.h.size() + in_.v.size());
        stats_.refined_nodes = static_cast<int>(H_.size() + V_.size());
        stats_.split_h = static_cast<int>(split_h_.size());
        stats_.split_v = static_cast<int>(split_v_.size());
    }

    void build_trees() {
        th_ = SubTree(refined_h_count());
        for (int vi = 0; vi < refined_v_count(); ++vi) {
            std::vector<int> crossers;
            for (int hi = 0; hi < refined_h_count(); ++hi)
                if (crosses(hi, vi)) crossers.push_back(hi);
            std::sort(crossers.begin(), crossers.end(), [&](int a, int b) {
                return H_[static_cast<size_t>(a)].rect.ymin < H_[static_cast<size_t>(b)].rect.ymin;
            });
            for (size_t i = 0; i + 1 < crossers.size(); ++i) th_.add_edge(crossers[i], crossers[i + 1]);
        }
        th_.verify_tree("refined horizontal tree");
        tv_ = SubTree(refined_v_count());
        for (int hi = 0; hi < refined_h_count(); ++hi) {
            std::vector<int> crossers;
            for (int vi = 0; vi < refined_v_count(); ++vi)
                if (crosses(hi, vi)) crossers.push_back(vi);
            std::sort(crossers.begin(), crossers.end(), [&](int a, int b) {
                return V_[static_cast<size_t>(a)].rect.xmin < V_[static_cast<size_t>(b)].rect.xmin;
            });
            for (size_t i = 0; i + 1 < crossers.size(); ++i) tv_.add_edge(crossers[i], crossers[i + 1]);
        }
        tv_.verify_tree("refined vertical tree");
    }

    // --- classification -----------------------------------------------------

    AxisRect pixel(Edge e) const {
        return H_[static_cast<size_t>(e.h)].rect.intersect(V_[static_cast<size_t>(e.v)].rect);
    }

    EdgeClass cls_of(Edge e) const { return class_.at({e.h, e.v}); }

    void classify_all() {
        for (int hi = 0; hi < refined_h_count(); ++hi)
            for (int vi = 0; vi < refined_v_count(); ++vi) {
                if (!crosses(hi, vi)) continue;
                AxisRect px = pixel({hi, vi});
                bool c00 = on_core_boundary({px.xmin, px.ymin});
                bool c10 = on_core_boundary({px.xmax, px.ymin});
                bool c01 = on_core_boundary({px.xmin, px.ymax});
                bool c11 = on_core_boundary({px.xmax, px.ymax});
                int n = (c00 ? 1 : 0) + (c10 ? 1 : 0) + (c01 ? 1 : 0) + (c11 ? 1 : 0);
                EdgeClass cls;
                if (n == 3) cls = EdgeClass::Convex;
                else if (n == 1) cls = EdgeClass::Reflex;
                else if (n == 0) cls = EdgeClass::Internal;
                else if (n == 2 && ((c00 && c10) || (c01 && c11) || (c00 && c01) || (c10 && c11)))
                    cls = EdgeClass::Side;
                else
                    throw StructureViolation("refined pixel with diagonal or full boundary corners");
                class_[{hi, vi}] = cls;
                switch (cls) {
                    case EdgeClass::Convex: ++stats_.convex; break;
                    case EdgeClass::Reflex: ++stats_.reflex; break;
                    case EdgeClass::Side: ++stats_.side; break;
                    case EdgeClass::Internal: ++stats_.internal; break;
                }
            }
        int n_ref = stats_.refined_nodes;
        stats_.identities_ok = (stats_.convex + stats_.reflex + stats_.side == 2 * n_ref - 4) &&
                               (stats_.side % 2 == 0) &&
                               (n_ref == stats_.convex + stats_.side / 2);
    }

    /// Corner classification of an unrefined pixel of the input system; only
    /// side/convex matter for the split bookkeeping.
    bool input_edge_is_side(int horig, int vorig) const {
        const AxisRect px = in_.h[static_cast<size_t>(horig)].intersect(in_.v[static_cast<size_t>(vorig)]);
        bool c00 = on_core_boundary({px.xmin, px.ymin});
        bool c10 = on_core_boundary({px.xmax, px.ymin});
        bool c01 = on_core_boundary({px.xmin, px.ymax});
        bool c11 = on_core_boundary({px.xmax, px.ymax});
        int n = (c00 ? 1 : 0) + (c10 ? 1 : 0) + (c01 ? 1 : 0) + (c11 ? 1 : 0);
        return n == 2 && ((c00 && c10) || (c01 && c11) || (c00 && c01) || (c10 && c11));
    }

    // --- the auxiliary graph X ----------------------------------------------

    bool shared_slice_dom(int shared, int p1, int p2, bool shared_is_h) const {
        // Common crossers of the two partner slices, within the other class.
        const SubTree& tree = shared_is_h ? th_ : tv_;
        std::vector<int> common;
        int count = shared_is_h ? refined_h_count() : refined_v_count();
        for (int s = 0; s < count; ++s) {
            bool c1 = shared_is_h ? crosses(s, p1) : crosses(p1, s);
            bool c2 = shared_is_h ? crosses(s, p2) : crosses(p2, s);
            if (c1 && c2) common.push_back(s);
        }
        for (size_t i = 0; i < common.size(); ++i)
            for (size_t j = i + 1; j < common.size(); ++j) {
                if (common[i] == shared || common[j] == shared) continue;
                if (tree.on_path(common[i], common[j], shared)) return true;
            }
        return false;
    }

    void build_x() {
        for (int hi = 0; hi < refined_h_count(); ++hi)
            for (int vi = 0; vi < refined_v_count(); ++vi) {
                auto it = class_.find({hi, vi});
                if (it == class_.end()) continue;
                if (it->second == EdgeClass::Reflex || it->second == EdgeClass::Side)
                    xnodes_.push_back({hi, vi});
            }
        std::sort(xnodes_.begin(), xnodes_.end());
        xadj_.assign(xnodes_.size(), {});
        for (size_t a = 0; a < xnodes_.size(); ++a)
            for (size_t b = a + 1; b < xnodes_.size(); ++b) {
                const Edge& ea = xnodes_[a];
                const Edge& eb = xnodes_[b];
                if (ea.h != eb.h && ea.v != eb.v) continue;
                if (!dominates(ea, eb)) continue;
                if (!dominates(eb, ea))
                    throw StructureViolation("shared-slice replaceability is not symmetric");
                xadj_[a].push_back(static_cast<int>(b));
                xadj_[b].push_back(static_cast<int>(a));
            }
        int paths = 0;
        bool degrees_ok = true;
        for (size_t a = 0; a < xnodes_.size(); ++a) {
            size_t deg = xadj_[a].size();
            if (deg > 2) throw StructureViolation("auxiliary graph node of degree > 2");
            EdgeClass cls = cls_of(xnodes_[a]);
            if (cls == EdgeClass::Side && deg != 1) degrees_ok = false;
            if (cls == EdgeClass::Reflex && deg != 2) degrees_ok = false;
            if (deg <= 1) ++paths;  // path endpoints counted twice below
        }
        stats_.x_structure_ok = degrees_ok && (paths == stats_.side);
        alive_.assign(xnodes_.size(), 1);
        weight_.assign(xnodes_.size(), 0);
        for (size_t a = 0; a < xnodes_.size(); ++a)
            if (xadj_[a].size() == 1) weight_[a] = 1;
            else if (xadj_[a].empty()) weight_[a] = 2;
    }

    // --- phase machinery ------------------------------------------------------

    int xindex(Edge e) const {
        auto it = std::lower_bound(xnodes_.begin(), xnodes_.end(), e);
        if (it == xnodes_.end() || !(*it == e)) return -1;
        return static_cast<int>(it - xnodes_.begin());
    }

    std::vector<int> alive_neighbors(int xi) const {
        std::vector<int> out;
        for (int b : xadj_[static_cast<size_t>(xi)])
            if (alive_[static_cast<size_t>(b)]) out.push_back(b);
        return out;
    }

    long long potential() const {
        long long z = static_cast<long long>(guards_.size());
        long long nodes = 0, w = 0;
        for (size_t i = 0; i < xnodes_.size(); ++i) {
            if (alive_[i]) ++nodes;
            w += weight_[i];
        }
        return 3 * z + nodes + w;
    }

    void ledger_step() {
        long long now = potential();
        if (now > ledger_potential_) stats_.ledger_ok = false;
        ledger_potential_ = now;
    }

    void remove_node(int xi) { alive_[static_cast<size_t>(xi)] = 0; }

    /// Components of the surviving auxiliary graph, each listed in path or
    /// cycle order; smallest member first, deterministic direction.
    struct Component {
        std::vector<int> nodes;  // in order
        bool cycle = false;
    };

    std::vector<Component> components() const {
        std::vector<Component> out;
        std::vector<char> seen(xnodes_.size(), 0);
        for (size_t s = 0; s < xnodes_.size(); ++s) {
            if (!alive_[s] || seen[s]) continue;
            // Gather the component.
            std::vector<int> comp{static_cast<int>(s)};
            seen[s] = 1;
            for (size_t head = 0; head < comp.size(); ++head)
                for (int w : alive_neighbors(comp[head]))
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        comp.push_back(w);
                    }
            Component c;
            int start = -1;
            for (int n : comp)
                if (alive_neighbors(n).size() <= 1 && (start < 0 || n < start)) start = n;
            c.cycle = (start < 0);
            if (c.cycle) {
                start = *std::min_element(comp.begin(), comp.end());
            }
            // Walk from start.
            int prev = -1, cur = start;
            while (true) {
                c.nodes.push_back(cur);
                auto nbrs = alive_neighbors(cur);
                int next = -1;
                for (int w : nbrs)
                    if (w != prev && (next < 0 || w < next)) next = w;
                if (next < 0) break;
                if (c.cycle && next == start) break;
                if (static_cast<int>(c.nodes.size()) > static_cast<int>(comp.size())) break;
                prev = cur;
                cur = next;
            }
            if (c.nodes.size() != comp.size())
                throw StructureViolation("auxiliary component is neither path nor cycle");
            out.push_back(std::move(c));
        }
        return out;
    }

    // Sibling of e across its horizontal slice's split, if any.
    std::vector<Edge> eta_h(Edge e) const {
        std::vector<Edge> out{e};
        int orig = H_[static_cast<size_t>(e.h)].orig;
        for (int hi = 0; hi < refined_h_count(); ++hi)
            if (hi != e.h && H_[static_cast<size_t>(hi)].orig == orig && crosses(hi, e.v))
                out.push_back({hi, e.v});
        return out;
    }
    std::vector<Edge> eta_v(Edge e) const {
        std::vector<Edge> out{e};
        int orig = V_[static_cast<size_t>(e.v)].orig;
        for (int vi = 0; vi < refined_v_count(); ++vi)
            if (vi != e.v && V_[static_cast<size_t>(vi)].orig == orig && crosses(e.h, vi))
                out.push_back({e.h, vi});
        return out;
    }

    void phase1() {
        stats_.ledger_ok = true;
        // Convex edges and the split-induced bookkeeping sets.
        std::vector<Edge> convex;
        for (const auto& [e, cls] : class_)
            if (cls == EdgeClass::Convex) convex.push_back({e.first, e.second});
        std::set<std::pair<int, int>> convex_images;  // original images of convex edges
        for (const Edge& c : convex)
            convex_images.insert({H_[static_cast<size_t>(c.h)].orig, V_[static_cast<size_t>(c.v)].orig});
        std::vector<char> in_s(xnodes_.size(), 0), in_u(xnodes_.size(), 0), in_q(xnodes_.size(), 0);
        for (size_t i = 0; i < xnodes_.size(); ++i)
            if (convex_images.count({H_[static_cast<size_t>(xnodes_[i].h)].orig,
                                     V_[static_cast<size_t>(xnodes_[i].v)].orig}))
                in_u[i] = 1;
        for (size_t i = 0; i < xnodes_.size(); ++i) {
            if (cls_of(xnodes_[i]) != EdgeClass::Side) continue;
            if (input_edge_is_side(H_[static_cast<size_t>(xnodes_[i].h)].orig,
                                   V_[static_cast<size_t>(xnodes_[i].v)].orig))
                in_s[i] = 1;
        }
        // Q': reflex-or-side edges on a split slice whose sibling can take
        // over the other end of the attached structure.
        for (size_t f = 0; f < xnodes_.size(); ++f) {
            const Edge fe = xnodes_[f];
            for (int ei : xadj_[f]) {
                const Edge ee = xnodes_[static_cast<size_t>(ei)];
                if (!in_s[static_cast<size_t>(ei)]) continue;
                bool shared_h = (fe.h == ee.h);
                std::vector<Edge> f_sibs = shared_h ? eta_h(fe) : eta_v(fe);
                if (f_sibs.size() < 2) continue;  // shared slice not split
                std::vector<Edge> e_closure = shared_h ? eta_h(ee) : eta_v(ee);
                std::vector<int> targets;
                for (const Edge& em : e_closure)
                    if (int xi = xindex(em); xi >= 0)
                        for (int b : xadj_[static_cast<size_t>(xi)])
                            if (b != static_cast<int>(f)) targets.push_back(b);
                bool ok = true;
                for (size_t si = 1; si < f_sibs.size() && ok; ++si)
                    for (int b : targets)
                        if (!dominates(f_sibs[si], xnodes_[static_cast<size_t>(b)])) { ok = false; break; }
                if (ok) { in_q[f] = 1; break; }
            }
        }

        // Z'_1 and the removals.
        std::vector<int> q_or_u_removals;
        for (const Edge& c : convex) {
            for (const Edge& e : eta_h(c)) guards_.insert(e);
            for (const Edge& e : eta_v(c)) guards_.insert(e);
        }
        for (size_t f = 0; f < xnodes_.size(); ++f) {
            if (!in_q[f]) continue;
            for (const Edge& e : eta_h(xnodes_[f])) guards_.insert(e);
            for (const Edge& e : eta_v(xnodes_[f])) guards_.insert(e);
        }
        std::vector<char> to_remove(xnodes_.size(), 0);
        for (size_t f = 0; f < xnodes_.size(); ++f)
            if (in_q[f] || in_u[f]) {
                to_remove[f] = 1;
                for (int b : xadj_[f]) to_remove[static_cast<size_t>(b)] = 1;
            }
        // Weights. Spent side and sibling markers are dropped from the
        // removed nodes (their leftover value is the budget later phases
        // may cash in), while every survivor carries 2 minus its remaining
        // degree: path endpoints hold 1 and isolated nodes hold 2, which is
        // the invariant the per-step inequality needs.
        for (size_t i = 0; i < xnodes_.size(); ++i)
            if (in_s[i] || in_u[i]) weight_[i] = std::max(0, weight_[i] - 1);
        for (size_t i = 0; i < xnodes_.size(); ++i)
            if (to_remove[i]) remove_node(static_cast<int>(i));
        for (size_t i = 0; i < xnodes_.size(); ++i) {
            if (!alive_[i]) continue;
            int deg = static_cast<int>(alive_neighbors(static_cast<int>(i)).size());
            weight_[i] = std::max(0, 2 - deg);
        }

        // Opening ledger: 3|Z'_1| + |V(X_1)| + w_1 <= 3c' + r' + 2s' + |B'_H| + |B'_V|.
        long long lhs = potential();
        long long rhs = 3LL * stats_.convex + stats_.reflex + 2LL * stats_.side +
                        2LL * (stats_.split_h + stats_.split_v);
        stats_.phase1_ok = lhs <= rhs;
        ledger_potential_ = lhs;
    }

    /// True iff pixel(x) lies between pixel(y) and pixel(z) along their
    /// common slice (all three must share one slice).
    bool pixel_between(Edge x, Edge y, Edge z) const {
        if (x.h == y.h && x.h == z.h) return tv_.on_path(y.v, z.v, x.v);
        if (x.v == y.v && x.v == z.v) return th_.on_path(y.h, z.h, x.h);
        throw StructureViolation("pixel_between without a common slice");
    }

    /// Cuts a window of five consecutive nodes around a chord out of a cycle
    /// or path sequence. Returns false if no valid chord position exists.
    bool cut_window(const std::vector<int>& seq, bool cyclic) {
        const int L = static_cast<int>(seq.size());
        auto node = [&](int i) -> Edge {
            int m = ((i % L) + L) % L;
            return xnodes_[static_cast<size_t>(seq[static_cast<size_t>(m)])];
        };
        auto shared_slice_pair = [&](int i) -> std::pair<bool, int> {
            // Slice shared by seq[i] and seq[i+1]: (is_horizontal, slice id).
            Edge a = node(i), b = node(i + 1);
            if (a.h == b.h) return {true, a.h};
            if (a.v == b.v) return {false, a.v};
            throw StructureViolation("consecutive auxiliary nodes share no slice");
        };
        auto free_edge = [&](int i, int j) -> Edge {
            // Edge {free slice before i, free slice after j} of the window.
            auto [h1, s1] = shared_slice_pair(i - 1);
            auto [h2, s2] = shared_slice_pair(j);
            if (h1 == h2) throw StructureViolation("chord endpoints share orientation");
            Edge e;
            e.h = h1 ? s1 : s2;
            e.v = h1 ? s2 : s1;
            return e;
        };
        int lo = cyclic ? 1 : 2;
        int hi_b = cyclic ? L - 1 : L - 3;
        for (int bb = lo; bb <= hi_b; ++bb) {
            Edge f = free_edge(bb - 1, bb + 1);
            if (!crosses(f.h, f.v)) continue;
            if (!dominates(f, node(bb)))
                throw StructureViolation("chord does not replace the window center");
            // Decide which side the window shifts to.
            bool minus_ok = pixel_between(f, node(bb - 1), node(bb - 2));
            bool plus_ok = pixel_between(f, node(bb + 1), node(bb + 2));
            if (minus_ok && plus_ok) {
                guards_.insert(f);
                ++stats_.windows_cut;
                apply_window(seq, cyclic, bb - 2, bb + 2, bb, 3);
                return true;
            }
            if (!minus_ok) {
                if (!cyclic && bb - 3 < 0) continue;
                Edge g = free_edge(bb - 2, bb);
                if (!crosses(g.h, g.v))
                    throw StructureViolation("fallback chord missing");
                guards_.insert(g);
                ++stats_.windows_cut;
                apply_window(seq, cyclic, bb - 3, bb + 1, bb - 1, 3);
                return true;
            }
            {
                if (!cyclic && bb + 3 > L - 1) continue;
                Edge g = free_edge(bb, bb + 2);
                if (!crosses(g.h, g.v))
                    throw StructureViolation("fallback chord missing");
                guards_.insert(g);
                ++stats_.windows_cut;
                apply_window(seq, cyclic, bb - 1, bb + 3, bb + 1, 3);
                return true;
            }
        }
        return false;
    }

    /// Removes seq[from..to] and bumps the weights of the two survivors at
    /// the given distance from the window's center position.
    void apply_window(const std::vector<int>& seq, bool cyclic, int from, int to, int center,
                      int dist) {
        const int L = static_cast<int>(seq.size());
        auto xid = [&](int i) -> int {
            if (cyclic) return seq[static_cast<size_t>(((i % L) + L) % L)];
            if (i < 0 || i >= L) return -1;
            return seq[static_cast<size_t>(i)];
        };
        for (int i = from; i <= to; ++i)
            if (int id = xid(i); id >= 0) remove_node(id);
        for (int off : {-dist, dist})
            if (int id = xid(center + off); id >= 0 && alive_[static_cast<size_t>(id)])
                weight_[static_cast<size_t>(id)] += 1;
        ledger_step();
    }

    void phase2_cycles() {
        while (true) {
            auto comps = components();
            const Component* cyc = nullptr;
            for (const Component& c : comps)
                if (c.cycle && (!cyc || c.nodes.front() < cyc->nodes.front())) cyc = &c;
            if (!cyc) return;
            const int L = static_cast<int>(cyc->nodes.size());
            // Shortest interval of the circuit closing into a cycle of the
            // block graph: the free outer slices coincide.
            auto node = [&](int i) -> Edge {
                return xnodes_[static_cast<size_t>(cyc->nodes[static_cast<size_t>(((i % L) + L) % L)])];
            };
            auto shared = [&](int i) -> std::pair<bool, int> {
                Edge a = node(i), b = node(i + 1);
                if (a.h == b.h) return {true, a.h};
                return {false, a.v};
            };
            int best_len = L, best_start = 0;
            for (int len = 4; len < L && best_len == L; len += 2)
                for (int start = 0; start < L; ++start) {
                    auto before = shared(start - 1);
                    auto after = shared(start + len - 1);
                    if (before == after) { best_len = len; best_start = start; break; }
                }
            std::vector<int> seq;
            for (int i = 0; i < L; ++i)
                seq.push_back(cyc->nodes[static_cast<size_t>((best_start + i) % L)]);
            const int l2 = best_len;
            if (l2 == 4) {
                // The interval is a 4-cycle of the block graph; the node just
                // before it replaces five consecutive nodes.
                Edge pick = xnodes_[static_cast<size_t>(seq[static_cast<size_t>(L - 1)])];
                guards_.insert(pick);
                ++stats_.cycles_cut;
                if (L == 4) {
                    for (int id : seq) remove_node(id);
                    ledger_step();
                } else {
                    for (int i : {L - 2, L - 1, 0, 1, 2}) remove_node(seq[static_cast<size_t>(i)]);
                    for (int i : {3, L - 3})
                        if (alive_[static_cast<size_t>(seq[static_cast<size_t>(i)])])
                            weight_[static_cast<size_t>(seq[static_cast<size_t>(i)])] += 1;
                    ledger_step();
                }
                continue;
            }
            // Longer interval: cut a window around a chord.
            if (!cut_window(seq, true))
                throw StructureViolation("no chord found on an auxiliary cycle");
        }
    }

    bool path_self_intersects(const std::vector<int>& nodes) const {
        const int k = static_cast<int>(nodes.size());
        if (k < 4) return false;
        std::set<int> hs, vs;
        std::set<Edge> interior_edges;
        for (int i = 1; i + 1 < k; ++i) {
            Edge e = xnodes_[static_cast<size_t>(nodes[static_cast<size_t>(i)])];
            hs.insert(e.h);
            vs.insert(e.v);
            interior_edges.insert(e);
        }
        for (int h : hs)
            for (int v : vs)
                if (crosses(h, v) && !interior_edges.count({h, v})) return true;
        return false;
    }

    void phase3_self_intersections() {
        while (true) {
            bool acted = false;
            for (const Component& c : components()) {
                if (c.cycle) throw StructureViolation("cycle survived the cycle phase");
                if (!path_self_intersects(c.nodes)) continue;
                if (!cut_window(c.nodes, false))
                    throw StructureViolation("no chord found on a self-intersecting walk");
                acted = true;
                break;
            }
            if (!acted) return;
        }
    }

    /// Minimum dominating set of an alive path component, optionally through
    /// a required node; inserts it into the guard set and removes the path.
    void consume_path(const std::vector<int>& nodes, int required_pos) {
        ++stats_.paths_consumed;
        auto chosen = path_dominating_set(static_cast<int>(nodes.size()), required_pos);
        for (int pos : chosen) guards_.insert(xnodes_[static_cast<size_t>(nodes[static_cast<size_t>(pos)])]);
        for (int id : nodes) {
            remove_node(id);
            weight_[static_cast<size_t>(id)] = 0;
        }
    }

    void phase4_necks() {
        // Root: a horizontal slice whose top side has maximal y; only convex
        // and side edges touch it.
        int root = 0;
        for (int hi = 1; hi < refined_h_count(); ++hi) {
            if (H_[static_cast<size_t>(hi)].rect.ymax > H_[static_cast<size_t>(root)].rect.ymax)
                root = hi;
        }
        auto depth = th_.bfs_depth(root);
        auto parent = th_.bfs_parent(root);
        std::vector<int> order;
        for (int hi = 0; hi < refined_h_count(); ++hi)
            if (hi != root) order.push_back(hi);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            int da = depth[static_cast<size_t>(a)], db = depth[static_cast<size_t>(b)];
            return da != db ? da > db : a < b;
        });
        for (int h3 : order) {
            int h4 = parent[static_cast<size_t>(h3)];
            std::vector<int> common;
            for (int vi = 0; vi < refined_v_count(); ++vi)
                if (crosses(h3, vi) && crosses(h4, vi)) common.push_back(vi);
            if (common.size() < 2)
                throw StructureViolation("tree-adjacent slices share <2 crossers");
            // End nodes of the path induced by the common crossers.
            std::vector<int> ends;
            for (int x : common) {
                bool interior = false;
                for (int y : common)
                    for (int z : common)
                        if (y != x && z != x && y < z && tv_.on_path(y, z, x)) interior = true;
                if (!interior) ends.push_back(x);
            }
            if (ends.size() != 2)
                throw StructureViolation("common crossers do not induce a path");
            int v3 = std::min(ends[0], ends[1]);
            int v4 = std::max(ends[0], ends[1]);
            bool all_reflex = true;
            for (Edge e : {Edge{h3, v3}, Edge{h3, v4}, Edge{h4, v3}, Edge{h4, v4}})
                all_reflex = all_reflex && cls_of(e) == EdgeClass::Reflex;
            if (!all_reflex) continue;
            ++stats_.necks;
            necks_.push_back({h3, h4, v3, v4});
            Edge A{h3, v3}, B{h3, v4}, C{h4, v3}, D{h4, v4};
            if (neck_satisfied(h3, h4, v3, v4)) continue;

            int ai = xindex(A), bi = xindex(B);
            bool a_alive = ai >= 0 && alive_[static_cast<size_t>(ai)];
            bool b_alive = bi >= 0 && alive_[static_cast<size_t>(bi)];
            std::vector<int> pnodes;
            int pos_a = -1, pos_b = -1;
            if (a_alive || b_alive) {
                for (const Component& c : components()) {
                    bool has = false;
                    for (int n : c.nodes)
                        has = has || (a_alive && n == ai) || (b_alive && n == bi);
                    if (!has) continue;
                    pnodes = c.nodes;
                    break;
                }
                for (size_t i = 0; i < pnodes.size(); ++i) {
                    if (a_alive && pnodes[i] == ai) pos_a = static_cast<int>(i);
                    if (b_alive && pnodes[i] == bi) pos_b = static_cast<int>(i);
                }
                if (a_alive && b_alive && (pos_a < 0 || pos_b < 0))
                    throw StructureViolation("neck edges in different components");
            }
            // Split sizes around the A-B edge.
            int size1 = 0, size2 = 0;
            if (pos_a >= 0 && pos_b >= 0) {
                if (std::abs(pos_a - pos_b) != 1)
                    throw StructureViolation("surviving neck edges are not adjacent");
                size1 = std::min(pos_a, pos_b) + 1;
                size2 = static_cast<int>(pnodes.size()) - size1;
                if (pos_b < pos_a) std::swap(size1, size2);
            } else if (pos_a >= 0) {
                size1 = static_cast<int>(pnodes.size());
            } else if (pos_b >= 0) {
                size2 = static_cast<int>(pnodes.size());
            }
            if (size1 % 3 != 0 || size2 % 3 != 0) {
                // Dominate the path through one of the two h3 edges,
                // whichever admits the smaller set.
                std::vector<int> best;
                for (int pos : {pos_a, pos_b}) {
                    if (pos < 0) continue;
                    auto cand = path_dominating_set(static_cast<int>(pnodes.size()), pos);
                    if (best.empty() || cand.size() < best.size()) best = cand;
                }
                for (int pos : best) guards_.insert(xnodes_[static_cast<size_t>(pnodes[static_cast<size_t>(pos)])]);
                for (int id : pnodes) {
                    remove_node(id);
                    weight_[static_cast<size_t>(id)] = 0;
                }
                ledger_step();
            } else {
                if (!pnodes.empty()) consume_path(pnodes, -1);
                // Pick the covering edge on the h4 side.
                Edge fj = C;
                int ci = xindex(C), di = xindex(D);
                bool c_ok = (ci >= 0 && alive_[static_cast<size_t>(ci)]) || guards_.count(C);
                bool d_ok = (di >= 0 && alive_[static_cast<size_t>(di)]) || guards_.count(D);
                if (!c_ok && d_ok) fj = D;
                guards_.insert(fj);
                for (Edge e : {C, D})
                    if (int xi = xindex(e); xi >= 0) weight_[static_cast<size_t>(xi)] = 0;
                if (int fi = xindex(fj); fi >= 0 && alive_[static_cast<size_t>(fi)]) {
                    // Mark the new endpoints two steps away, then cut out f
                    // and its neighbors.
                    for (int b : alive_neighbors(fi))
                        for (int b2 : alive_neighbors(b))
                            if (b2 != fi) weight_[static_cast<size_t>(b2)] += 1;
                    for (int b : alive_neighbors(fi)) remove_node(b);
                    remove_node(fi);
                }
                ledger_step();
            }
            if (!neck_satisfied(h3, h4, v3, v4))
                throw StructureViolation("neck left uncovered by the construction");
        }
    }

    bool neck_satisfied(int h3, int h4, int v3, int v4) const {
        for (const Edge& z : guards_) {
            if (dominates(z, {h3, v3}) && dominates(z, {h3, v4})) return true;
            if (dominates(z, {h4, v3}) && dominates(z, {h4, v4})) return true;
        }
        return false;
    }

    void phase5_paths() {
        while (true) {
            auto comps = components();
            if (comps.empty()) return;
            consume_path(comps.front().nodes, -1);
            ledger_step();
        }
    }

    void verify_closure() {
        bool ok = true;
        for (const auto& [key, cls] : class_) {
            Edge e{key.first, key.second};
            if (cls == EdgeClass::Convex && !guards_.count(e)) ok = false;
            if ((cls == EdgeClass::Reflex || cls == EdgeClass::Side) && !guards_.count(e)) {
                bool dominated = false;
                for (const Edge& z : guards_)
                    if (dominates(z, e)) { dominated = true; break; }
                if (!dominated) ok = false;
            }
        }
        for (const auto& n : necks_)
            if (!neck_satisfied(n[0], n[1], n[2], n[3])) ok = false;
        // Every edge of the refined block graph is seen by some guard.
        for (const auto& [key, cls] : class_) {
            Edge e{key.first, key.second};
            bool seen = false;
            for (const Edge& z : guards_) {
                if (z.h == e.h || z.v == e.v) { seen = true; break; }
                if (crosses(z.h, e.v) && crosses(e.h, z.v)) { seen = true; break; }
            }
            if (!seen) ok = false;
        }
        stats_.closure_ok = ok;
        if (!ok) throw StructureViolation("block guard closure verification failed");
    }

    Input in_;
    std::vector<RefSlice> H_, V_;
    std::vector<int> split_h_, split_v_;
    std::vector<AxisRect> core_;
    SubTree th_, tv_;
    std::map<std::pair<int, int>, EdgeClass> class_;
    std::vector<Edge> xnodes_;
    std::vector<std::vector<int>> xadj_;
    std::vector<char> alive_;
    std::vector<int> weight_;
    std::set<Edge> guards_;
    std::vector<std::array<int, 4>> necks_;
    long long ledger_potential_ = 0;
    BlockStats stats_;
};

/// Biconnected components of a small graph, as node lists. Bridges come out
/// as 2-node blocks. Isolated nodes are not reported.
inline std::vector<std::vector<int>> biconnected_blocks(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> disc(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
    std::vector<std::pair<int, int>> edge_stack;
    std::vector<std::vector<int>> blocks;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int from) {
        disc[static_cast<size_t>(u)] = low[static_cast<size_t>(u)] = timer++;
        for (int w : adj[static_cast<size_t>(u)]) {
            if (w == from) continue;
            if (disc[static_cast<size_t>(w)] < 0) {
                edge_stack.push_back({u, w});
                dfs(w, u);
                low[static_cast<size_t>(u)] = std::min(low[static_cast<size_t>(u)], low[static_cast<size_t>(w)]);
                if (low[static_cast<size_t>(w)] >= disc[static_cast<size_t>(u)]) {
                    std::set<int> nodes;
                    while (true) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        nodes.insert(a);
                        nodes.insert(b);
                        if (a == u && b == w) break;
                    }
                    blocks.push_back({nodes.begin(), nodes.end()});
                }
            } else if (disc[static_cast<size_t>(w)] < disc[static_cast<size_t>(u)]) {
                edge_stack.push_back({u, w});
                low[static_cast<size_t>(u)] = std::min(low[static_cast<size_t>(u)], disc[static_cast<size_t>(w)]);
            }
        }
    };
    for (int s = 0; s < n; ++s)
        if (disc[static_cast<size_t>(s)] < 0 && !adj[static_cast<size_t>(s)].empty()) dfs(s, -1);
    return blocks;
}

}  // namespace detail

/// The induced guard subgraph: chosen slices plus their crossing structure.
struct GuardSubgraph {
    std::vector<int> mh, mv;               // sorted unique slice ids
    std::vector<std::vector<char>> cross;  // [index into mh][index into mv]

    int nodes() const { return static_cast<int>(mh.size() + mv.size()); }
};

inline GuardSubgraph build_M(const PixelationGraph& g, std::vector<int> mh, std::vector<int> mv) {
    std::sort(mh.begin(), mh.end());
    mh.erase(std::unique(mh.begin(), mh.end()), mh.end());
    std::sort(mv.begin(), mv.end());
    mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
    if (!verify_mobile_cover(g, mh, Orientation::Horizontal))
        throw NotDominating("horizontal guards do not dominate the vertical slices");
    if (!verify_mobile_cover(g, mv, Orientation::Vertical))
        throw NotDominating("vertical guards do not dominate the horizontal slices");
    GuardSubgraph m;
    m.mh = std::move(mh);
    m.mv = std::move(mv);
    m.cross.assign(m.mh.size(), std::vector<char>(m.mv.size(), 0));
    for (size_t i = 0; i < m.mh.size(); ++i)
        for (size_t j = 0; j < m.mv.size(); ++j)
            m.cross[i][j] = g.edge_exists(m.mh[i], m.mv[j]) ? 1 : 0;
    return m;
}

namespace detail {

inline std::vector<std::vector<int>> m_adjacency(const GuardSubgraph& m) {
    // Local node ids: 0..|mh|-1 for horizontal, then vertical.
    const int nh = static_cast<int>(m.mh.size());
    std::vector<std::vector<int>> adj(static_cast<size_t>(m.nodes()));
    for (size_t i = 0; i < m.mh.size(); ++i)
        for (size_t j = 0; j < m.mv.size(); ++j)
            if (m.cross[i][j]) {
                adj[i].push_back(nh + static_cast<int>(j));
                adj[static_cast<size_t>(nh) + j].push_back(static_cast<int>(i));
            }
    return adj;
}

}  // namespace detail

/// 2-connected components of the guard subgraph, each as (h ids, v ids) in
/// the pixelation graph. Bridges appear as one-edge blocks.
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks(const GuardSubgraph& m) {
    auto adj = detail::m_adjacency(m);
    const int nh = static_cast<int>(m.mh.size());
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (const auto& nodes : detail::biconnected_blocks(adj)) {
        std::pair<std::vector<int>, std::vector<int>> block;
        for (int local : nodes) {
            if (local < nh) block.first.push_back(m.mh[static_cast<size_t>(local)]);
            else block.second.push_back(m.mv[static_cast<size_t>(local) - static_cast<size_t>(nh)]);
        }
        out.push_back(std::move(block));
    }
    return out;
}

struct PointGuardSolution {
    std::vector<PixelEdge> guards;
    std::vector<Point> points;  // centroid of each guard's pixel
    long long bound = 0;        // ⌊4(|M_H|+|M_V|-1)/3⌋
    std::vector<BlockStats> block_stats;
};

/// Every pixel of the graph must be r-visible from some guard.
inline bool verify_point_cover(const PixelationGraph& g, const std::vector<PixelEdge>& guards) {
    for (int h = 0; h < g.hslices().size(); ++h) {
        bool all = true;
        g.for_each_v_neighbor(h, [&](int v) {
            PixelEdge e{h, v};
            bool seen = false;
            for (const PixelEdge& z : guards)
                if (edges_r_visible(g, z, e)) { seen = true; return; }
            if (!seen) all = false;
        });
        if (!all) return false;
    }
    return true;
}

/// When the guard subgraph is a star, its edge set is already a point guard
/// system of size |M_H|+|M_V|-1.
inline std::vector<PixelEdge> star_case(const PixelationGraph& g, const std::vector<int>& mh,
                                        const std::vector<int>& mv) {
    GuardSubgraph m = build_M(g, mh, mv);
    if (std::min(m.mh.size(), m.mv.size()) != 1)
        throw StructureViolation("star_case requires a single slice on one side");
    std::vector<PixelEdge> out;
    for (size_t i = 0; i < m.mh.size(); ++i)
        for (size_t j = 0; j < m.mv.size(); ++j) {
            if (!m.cross[i][j]) throw StructureViolation("star_case requires a star");
            out.push_back({m.mh[i], m.mv[j]});
        }
    return out;
}

namespace detail {

/// Slice keys for the cross-component analysis: h -> h, v -> nh + v.
class ComponentJoiner {
  public:
    ComponentJoiner(const PixelationGraph& g, const std::vector<std::vector<int>>& comp_keys)
        : g_(g), comps_(comp_keys), nh_(g.hslices().size()) {}

    /// The connector edges W, one per finished region a later component
    /// attaches to; |W| = t - 1 overall.
    std::vector<PixelEdge> connectors() {
        std::vector<std::set<int>> nbhd(comps_.size());
        for (size_t i = 0; i < comps_.size(); ++i) {
            for (int key : comps_[i]) {
                nbhd[i].insert(key);
                for (int other : neighbors(key)) nbhd[i].insert(other);
            }
        }
        std::vector<PixelEdge> out;
        for (size_t i = 1; i < comps_.size(); ++i) {
            std::set<int> suffix;  // N_k for k >= i
            for (size_t k = i; k < comps_.size(); ++k)
                suffix.insert(nbhd[k].begin(), nbhd[k].end());
            std::set<int> suffix_after;  // N_k for k > i
            for (size_t k = i + 1; k < comps_.size(); ++k)
                suffix_after.insert(nbhd[k].begin(), nbhd[k].end());
            std::set<int> left;  // finished before i
            for (size_t k = 0; k < i; ++k)
                for (int key : nbhd[k])
                    if (!suffix.count(key)) left.insert(key);
            std::set<int> frontier;  // i's private frontier
            for (int key : nbhd[i])
                if (!suffix_after.count(key)) frontier.insert(key);

            // Components of the graph induced on `left`.
            std::map<int, int> comp_of;
            int comp_count = 0;
            for (int s : left) {
                if (comp_of.count(s)) continue;
                int id = comp_count++;
                std::vector<int> queue{s};
                comp_of[s] = id;
                for (size_t head = 0; head < queue.size(); ++head)
                    for (int w : neighbors(queue[head]))
                        if (left.count(w) && !comp_of.count(w)) {
                            comp_of[w] = id;
                            queue.push_back(w);
                        }
            }
            // Edges from the frontier into each left component.
            std::map<int, std::vector<std::pair<int, int>>> joins;  // comp -> (frontier key, left key)
            for (int a : frontier)
                for (int b : neighbors(a))
                    if (left.count(b)) joins[comp_of[b]].push_back({a, b});
            for (auto& [cid, edges] : joins) {
                std::sort(edges.begin(), edges.end());
                out.push_back(pick_connector(edges));
            }
        }
        return out;
    }

  private:
    std::vector<int> neighbors(int key) const {
        std::vector<int> out;
        if (key < nh_)
            g_.for_each_v_neighbor(key, [&](int v) { out.push_back(nh_ + v); });
        else
            g_.for_each_h_neighbor(key - nh_, [&](int h) { out.push_back(h); });
        return out;
    }

    static bool share_slice(const std::pair<int, int>& a, const std::pair<int, int>& b) {
        return a.first == b.first || a.first == b.second || a.second == b.first ||
               a.second == b.second;
    }

    /// From the edges joining a frontier to one finished component, pick the
    /// most-intersecting representative of each orientation and join them.
    PixelEdge pick_connector(const std::vector<std::pair<int, int>>& edges) const {
        std::pair<int, int> best_v{-1, -1}, best_h{-1, -1};
        int best_v_score = -1, best_h_score = -1;
        for (const auto& f : edges) {
            int score = 0;
            for (const auto& o : edges)
                if (o != f && share_slice(f, o)) ++score;
            bool frontier_is_v = f.first >= nh_;
            if (frontier_is_v) {
                if (score > best_v_score) { best_v_score = score; best_v = f; }
            } else {
                if (score > best_h_score) { best_h_score = score; best_h = f; }
            }
        }
        auto as_pixel = [&](const std::pair<int, int>& f) -> PixelEdge {
            int a = f.first, b = f.second;
            if (a >= nh_) std::swap(a, b);
            return {a, b - nh_};
        };
        if (best_v.first < 0) return as_pixel(best_h);
        if (best_h.first < 0) return as_pixel(best_v);
        // Combine the two frontier endpoints into one edge of the frontier's
        // own neighborhood.
        int vstar = best_v.first - nh_;
        int hstar = best_h.first;
        if (!g_.edge_exists(hstar, vstar))
            throw StructureViolation("connector endpoints do not cross");
        return {hstar, vstar};
    }

    const PixelationGraph& g_;
    const std::vector<std::vector<int>>& comps_;
    int nh_;
};

}  // namespace detail

/// Builds a point guard system of size at most ⌊4(|M_H|+|M_V|-1)/3⌋ from
/// dominating slice sets, and verifies both the bound and full coverage.
inline PointGuardSolution assemble(const PixelationGraph& g, const std::vector<int>& mh,
                                   const std::vector<int>& mv) {
    GuardSubgraph m = build_M(g, mh, mv);
    const int nh_local = static_cast<int>(m.mh.size());
    auto adj = detail::m_adjacency(m);
    for (size_t i = 0; i < adj.size(); ++i)
        if (adj[i].empty()) throw StructureViolation("guard slice with no crossing partner");

    // Connected components of M, ordered by smallest member key.
    std::vector<int> comp_of(adj.size(), -1);
    std::vector<std::vector<int>> comp_keys;  // pixelation keys per component
    const int nh_g = g.hslices().size();
    for (size_t s = 0; s < adj.size(); ++s) {
        if (comp_of[s] >= 0) continue;
        int id = static_cast<int>(comp_keys.size());
        std::vector<int> queue{static_cast<int>(s)};
        comp_of[s] = id;
        std::vector<int> keys;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            keys.push_back(u < nh_local ? m.mh[static_cast<size_t>(u)]
                                        : nh_g + m.mv[static_cast<size_t>(u - nh_local)]);
            for (int w : adj[static_cast<size_t>(u)])
                if (comp_of[static_cast<size_t>(w)] < 0) {
                    comp_of[static_cast<size_t>(w)] = id;
                    queue.push_back(w);
                }
        }
        std::sort(keys.begin(), keys.end());
        comp_keys.push_back(std::move(keys));
    }

    PointGuardSolution sol;
    std::set<std::pair<int, int>> zset;

    // Per block: single edges directly, larger blocks through the
    // 2-connected construction.
    for (const auto& [bh, bv] : blocks(m)) {
        if (bh.size() + bv.size() == 2) {
            zset.insert({bh.front(), bv.front()});
            continue;
        }
        detail::BlockSolver::Input input;
        for (int h : bh) input.h.push_back(g.hslices().rect(h));
        for (int v : bv) input.v.push_back(g.vslices().rect(v));
        detail::BlockSolver solver(std::move(input));
        for (const auto& [hi, vi] : solver.solve())
            zset.insert({bh[static_cast<size_t>(hi)], bv[static_cast<size_t>(vi)]});
        sol.block_stats.push_back(solver.stats());
    }

    // Cross-component connectors.
    if (comp_keys.size() > 1) {
        detail::ComponentJoiner joiner(g, comp_keys);
        for (const PixelEdge& w : joiner.connectors()) zset.insert({w.h, w.v});
    }

    for (const auto& [h, v] : zset) {
        sol.guards.push_back({h, v});
        sol.points.push_back(g.pixel({h, v}).centroid());
    }
    sol.bound = (4LL * (static_cast<long long>(m.mh.size()) + static_cast<long long>(m.mv.size()) - 1)) / 3;
    if (static_cast<long long>(sol.guards.size()) > sol.bound)
        throw BoundExceeded("assembled guard set exceeds the 4/3 bound");
    if (!verify_point_cover(g, sol.guards))
        throw CoverageFailure("assembled guard set misses a pixel");
    return sol;
}

}  // namespace rgallery
