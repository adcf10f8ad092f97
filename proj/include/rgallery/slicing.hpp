#pragma once
/**
 * Slice decompositions and their intersection trees.
 *
 * Horizontal slices are the maximal rectangles obtained by cutting the
 * domain horizontally through every reflex vertex; their left and right
 * sides lie on the boundary. Vertical slices are the transposed notion.
 * The intersection graph of the slices of one orientation is a tree.
 */

#include <cassert>
#include <map>
#include <string>

#include "rgallery/geometry.hpp"

namespace rgallery {

enum class Orientation { Horizontal, Vertical };

inline Orientation opposite(Orientation o) {
    return o == Orientation::Horizontal ? Orientation::Vertical : Orientation::Horizontal;
}

struct Slice {
    int id = -1;
    AxisRect rect;
    Orientation orientation = Orientation::Horizontal;
};

struct SliceSet {
    Orientation orientation = Orientation::Horizontal;
    std::vector<Slice> slices;

    int size() const { return static_cast<int>(slices.size()); }
    const AxisRect& rect(int id) const { return slices[static_cast<size_t>(id)].rect; }
};

struct StructureViolation : std::runtime_error {
    explicit StructureViolation(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Sweep state: the current horizontal cross-section as disjoint x-intervals.
struct ActiveInterval {
    Coord hi;
    Coord birth;
};

struct HEdge {
    Coord y, lo, hi;
    bool floor;  // interior above
};

// Decomposes with horizontal cut lines; expects vertices in CCW order.
// `transposed` mirrors x/y so the same sweep produces vertical slices.
inline std::vector<AxisRect> sweep_decompose(const std::vector<Point>& verts, bool transposed) {
    const size_t n = verts.size();
    std::vector<HEdge> edges;
    edges.reserve(n / 2);
    for (size_t i = 0; i < n; ++i) {
        Point a = verts[i], b = verts[(i + 1) % n];
        if (transposed) {
            // Mirror across the main diagonal; this flips orientation, so
            // interior lies to the *right* of travel after the swap.
            std::swap(a.x, a.y);
            std::swap(b.x, b.y);
            std::swap(a, b);
        }
        if (a.y != b.y) continue;
        if (b.x > a.x) edges.push_back({a.y, a.x, b.x, true});
        else edges.push_back({a.y, b.x, a.x, false});
    }
    std::sort(edges.begin(), edges.end(), [](const HEdge& a, const HEdge& b) {
        return a.y != b.y ? a.y < b.y : a.lo < b.lo;
    });

    std::vector<AxisRect> out;
    std::map<Coord, ActiveInterval> active;  // keyed by interval lo
    size_t i = 0;
    while (i < edges.size()) {
        const Coord y = edges[i].y;
        size_t j = i;
        while (j < edges.size() && edges[j].y == y) ++j;

        // Collect active intervals with closed contact against any edge of
        // this batch, emit their rectangles, and rebuild the local section.
        // Batch edges and active intervals are both ordered, so one joint
        // sweep touches each interval at most a constant number of times.
        std::vector<std::pair<Coord, Coord>> pieces;  // closed intervals
        std::vector<Coord> to_erase;
        auto it = active.lower_bound(edges[i].lo);
        if (it != active.begin()) --it;
        size_t k = i;
        while (it != active.end() && it->first <= edges[j - 1].hi) {
            while (k < j && edges[k].hi < it->first) ++k;
            bool touched = false;
            for (size_t t = k; t < j && edges[t].lo <= it->second.hi; ++t)
                if (edges[t].hi >= it->first) { touched = true; break; }
            if (touched) {
                out.push_back({it->first, it->second.birth, it->second.hi, y});
                pieces.push_back({it->first, it->second.hi});
                to_erase.push_back(it->first);
            }
            ++it;
        }
        for (Coord key : to_erase) active.erase(key);
        std::vector<std::pair<Coord, Coord>> ceilings;
        for (size_t t = i; t < j; ++t) {
            if (edges[t].floor) pieces.push_back({edges[t].lo, edges[t].hi});
            else ceilings.push_back({edges[t].lo, edges[t].hi});
        }

        // Union of touched intervals and floors, minus ceilings.
        std::sort(pieces.begin(), pieces.end());
        std::vector<std::pair<Coord, Coord>> merged;
        for (const auto& p : pieces) {
            if (!merged.empty() && p.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, p.second);
            else
                merged.push_back(p);
        }
        std::vector<std::pair<Coord, Coord>> next;
        size_t ci = 0;
        for (const auto& m : merged) {
            Coord cur = m.first;
            while (ci < ceilings.size() && ceilings[ci].first < m.second) {
                if (ceilings[ci].second <= m.first) { ++ci; continue; }
                if (ceilings[ci].first < cur || ceilings[ci].second > m.second)
                    throw StructureViolation("ceiling edge escapes the swept cross-section");
                if (ceilings[ci].first > cur) next.push_back({cur, ceilings[ci].first});
                cur = ceilings[ci].second;
                ++ci;
            }
            if (cur < m.second) next.push_back({cur, m.second});
        }
        for (const auto& piece : next) active[piece.first] = {piece.second, y};
        i = j;
    }
    if (!active.empty()) throw StructureViolation("sweep finished with open intervals");

    if (transposed)
        for (AxisRect& r : out) {
            std::swap(r.xmin, r.ymin);
            std::swap(r.xmax, r.ymax);
        }
    return out;
}

}  // namespace detail

/// Cuts the domain through every reflex vertex, perpendicular to the slicing
/// direction, and returns the maximal rectangles. Ids follow sweep order:
/// bottom-to-top for horizontal slices, left-to-right for vertical ones.
inline SliceSet decompose(const RectilinearDomain& d, Orientation o) {
    SliceSet set;
    set.orientation = o;
    std::vector<AxisRect> rects =
        detail::sweep_decompose(d.vertices(), o == Orientation::Vertical);
    if (o == Orientation::Horizontal)
        std::sort(rects.begin(), rects.end(), [](const AxisRect& a, const AxisRect& b) {
            return a.ymin != b.ymin ? a.ymin < b.ymin : a.xmin < b.xmin;
        });
    else
        std::sort(rects.begin(), rects.end(), [](const AxisRect& a, const AxisRect& b) {
            return a.xmin != b.xmin ? a.xmin < b.xmin : a.ymin < b.ymin;
        });
    set.slices.reserve(rects.size());
    for (size_t i = 0; i < rects.size(); ++i)
        set.slices.push_back({static_cast<int>(i), rects[i], o});
    return set;
}

/// Intersection tree of a one-orientation slice set, rooted at slice 0.
struct RTree {
    std::vector<std::vector<int>> adj;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<int> bfs_order;
    int root = 0;

    int size() const { return static_cast<int>(adj.size()); }
};

inline RTree build_rtree(const SliceSet& s) {
    const int n = s.size();
    RTree t;
    t.adj.assign(static_cast<size_t>(n), {});
    if (n == 0) throw StructureViolation("empty slice set");

    // Two slices are adjacent iff they share a boundary segment of positive
    // length on a cut line. Group slice tops and bottoms per cut line and
    // two-pointer over the sorted intervals.
    const bool horiz = s.orientation == Orientation::Horizontal;
    auto span_lo = [&](int id) { return horiz ? s.rect(id).xmin : s.rect(id).ymin; };
    auto span_hi = [&](int id) { return horiz ? s.rect(id).xmax : s.rect(id).ymax; };
    struct Entry { Coord line; bool starter; Coord lo; int id; };
    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(2 * n));
    for (const Slice& sl : s.slices) {
        Coord lo = horiz ? sl.rect.ymin : sl.rect.xmin;
        Coord hi = horiz ? sl.rect.ymax : sl.rect.xmax;
        entries.push_back({hi, false, span_lo(sl.id), sl.id});
        entries.push_back({lo, true, span_lo(sl.id), sl.id});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.line != b.line) return a.line < b.line;
        if (a.starter != b.starter) return !a.starter;  // enders first, then starters
        return a.lo < b.lo;
    });
    size_t edge_count = 0;
    for (size_t lo_idx = 0; lo_idx < entries.size();) {
        size_t hi_idx = lo_idx;
        while (hi_idx < entries.size() && entries[hi_idx].line == entries[lo_idx].line) ++hi_idx;
        size_t split = lo_idx;
        while (split < hi_idx && !entries[split].starter) ++split;
        size_t bi = split;
        for (size_t e = lo_idx; e < split; ++e) {
            int a = entries[e].id;
            while (bi < hi_idx && span_hi(entries[bi].id) <= span_lo(a)) ++bi;
            for (size_t k = bi; k < hi_idx && span_lo(entries[k].id) < span_hi(a); ++k) {
                t.adj[static_cast<size_t>(a)].push_back(entries[k].id);
                t.adj[static_cast<size_t>(entries[k].id)].push_back(a);
                ++edge_count;
            }
        }
        lo_idx = hi_idx;
    }
    if (edge_count != static_cast<size_t>(n) - 1)
        throw StructureViolation("slice intersection graph is not a tree");

    for (auto& nbrs : t.adj) std::sort(nbrs.begin(), nbrs.end());
    t.parent.assign(static_cast<size_t>(n), -1);
    t.depth.assign(static_cast<size_t>(n), -1);
    t.root = 0;
    t.bfs_order.reserve(static_cast<size_t>(n));
    t.bfs_order.push_back(t.root);
    t.depth[static_cast<size_t>(t.root)] = 0;
    for (size_t head = 0; head < t.bfs_order.size(); ++head) {
        int u = t.bfs_order[head];
        for (int w : t.adj[static_cast<size_t>(u)])
            if (t.depth[static_cast<size_t>(w)] < 0) {
                t.depth[static_cast<size_t>(w)] = t.depth[static_cast<size_t>(u)] + 1;
                t.parent[static_cast<size_t>(w)] = u;
                t.bfs_order.push_back(w);
            }
    }
    if (t.bfs_order.size() != static_cast<size_t>(n))
        throw StructureViolation("slice intersection graph is disconnected");
    return t;
}

/**
 * Cross-references between boundary edges and slices: each horizontal
 * boundary edge belongs to exactly one horizontal slice (as its top or
 * bottom side), and each slice's two cut-free sides lie on boundary edges.
 * Stored as flat sorted tables; lookups are O(log n).
 */
struct SideLabels {
    struct Entry {
        Coord line, lo, hi;
        int id;
    };

    Orientation orientation = Orientation::Horizontal;
    std::vector<Entry> ending;    // slices whose far side lies on this line
    std::vector<Entry> starting;  // slices whose near side lies on this line

    // slice id -> index of the boundary edge containing each boundary side
    // (left/right for horizontal slices, bottom/top for vertical).
    std::vector<std::pair<int, int>> side_edge;

    /// Slice whose far side lies on `line` and whose span contains [lo, hi].
    int slice_ending_at(const SliceSet&, Coord line, Coord lo, Coord hi) const {
        return lookup(ending, line, lo, hi);
    }
    int slice_starting_at(const SliceSet&, Coord line, Coord lo, Coord hi) const {
        return lookup(starting, line, lo, hi);
    }

    static void sort_entries(std::vector<Entry>& v) {
        std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
            return a.line != b.line ? a.line < b.line : a.lo < b.lo;
        });
    }

    static int lookup(const std::vector<Entry>& v, Coord line, Coord lo, Coord hi) {
        auto it = std::upper_bound(v.begin(), v.end(), std::pair<Coord, Coord>{line, lo},
                                   [](const std::pair<Coord, Coord>& key, const Entry& e) {
                                       return key < std::pair<Coord, Coord>{e.line, e.lo};
                                   });
        if (it == v.begin()) return -1;
        --it;
        if (it->line != line || it->lo > lo || hi > it->hi) return -1;
        return it->id;
    }
};

inline SideLabels attach_labels(const RectilinearDomain& d, const SliceSet& s) {
    SideLabels labels;
    labels.orientation = s.orientation;
    const bool horiz = s.orientation == Orientation::Horizontal;
    labels.ending.reserve(static_cast<size_t>(s.size()));
    labels.starting.reserve(static_cast<size_t>(s.size()));
    for (const Slice& sl : s.slices) {
        Coord lo = horiz ? sl.rect.xmin : sl.rect.ymin;
        Coord hi = horiz ? sl.rect.xmax : sl.rect.ymax;
        labels.ending.push_back({horiz ? sl.rect.ymax : sl.rect.xmax, lo, hi, sl.id});
        labels.starting.push_back({horiz ? sl.rect.ymin : sl.rect.xmin, lo, hi, sl.id});
    }
    SideLabels::sort_entries(labels.ending);
    SideLabels::sort_entries(labels.starting);

    // Boundary edge containing each cut-free side of each slice. Horizontal
    // slices have their vertical sides on the boundary, and vice versa.
    const auto& verts = d.vertices();
    const size_t n = verts.size();
    std::vector<SideLabels::Entry> boundary;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = verts[i];
        const Point& b = verts[(i + 1) % n];
        bool edge_vertical = (a.x == b.x);
        if (edge_vertical != horiz) continue;
        Coord fixed = edge_vertical ? a.x : a.y;
        Coord lo = edge_vertical ? std::min(a.y, b.y) : std::min(a.x, b.x);
        Coord hi = edge_vertical ? std::max(a.y, b.y) : std::max(a.x, b.x);
        boundary.push_back({fixed, lo, hi, static_cast<int>(i)});
    }
    SideLabels::sort_entries(boundary);
    labels.side_edge.assign(static_cast<size_t>(s.size()), {-1, -1});
    for (const Slice& sl : s.slices) {
        Coord lo = horiz ? sl.rect.ymin : sl.rect.xmin;
        Coord hi = horiz ? sl.rect.ymax : sl.rect.xmax;
        int first = SideLabels::lookup(boundary, horiz ? sl.rect.xmin : sl.rect.ymin, lo, hi);
        int second = SideLabels::lookup(boundary, horiz ? sl.rect.xmax : sl.rect.ymax, lo, hi);
        if (first < 0 || second < 0)
            throw StructureViolation("slice side not found on the boundary");
        labels.side_edge[static_cast<size_t>(sl.id)] = {first, second};
    }
    return labels;
}

/// Debug dump: one line per slice, one line per tree edge.
inline std::string dump_slices(const SliceSet& s, const RTree& t) {
    std::string out;
    for (const Slice& sl : s.slices) {
        out += std::to_string(sl.id);
        out += sl.orientation == Orientation::Horizontal ? " h " : " v ";
        out += std::to_string(sl.rect.xmin) + ' ' + std::to_string(sl.rect.ymin) + ' ' +
               std::to_string(sl.rect.xmax) + ' ' + std::to_string(sl.rect.ymax) + '\n';
    }
    for (int u = 0; u < t.size(); ++u)
        for (int w : t.adj[static_cast<size_t>(u)])
            if (u < w) out += std::to_string(u) + ' ' + std::to_string(w) + '\n';
    return out;
}

}  // namespace rgallery
