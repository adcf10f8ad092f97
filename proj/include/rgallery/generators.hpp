#pragma once
/**
 * Domain generators: the comb family, the tightness families matching the
 * bound ⌊4(m_V+m_H−1)/3⌋, and seeded random simple rectilinear domains for
 * property tests. Random domains are grown by inflate-cut: start from a
 * solid rectangle of grid cells and repeatedly carve boundary cells while
 * keeping the region simply connected and pinch-free.
 */

#include <cstdint>
#include <map>
#include <set>

#include "rgallery/geometry.hpp"
#include "rgallery/slicing.hpp"

namespace rgallery {

struct UnsupportedParameter : std::runtime_error {
    explicit UnsupportedParameter(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

using Cell = std::pair<Coord, Coord>;  // unit cell [x,x+1] x [y,y+1]

/// Counts polygon vertices of a pinch-free cell region.
inline int region_vertex_count(const std::set<Cell>& cells) {
    std::set<Cell> corners_seen;
    int corners = 0;
    for (const Cell& c : cells)
        for (Coord dx = 0; dx <= 1; ++dx)
            for (Coord dy = 0; dy <= 1; ++dy) {
                Cell pt{c.first + dx, c.second + dy};
                if (!corners_seen.insert(pt).second) continue;
                int in = 0;
                for (Coord ax = -1; ax <= 0; ++ax)
                    for (Coord ay = -1; ay <= 0; ++ay)
                        in += cells.count({pt.first + ax, pt.second + ay}) ? 1 : 0;
                if (in == 1 || in == 3) ++corners;
            }
    return corners;
}

/// Extracts the boundary polygon of a connected, hole-free, pinch-free cell
/// region, counter-clockwise.
inline std::vector<Point> region_boundary(const std::set<Cell>& cells) {
    // Directed boundary edges with the interior on the left.
    std::map<std::pair<Coord, Coord>, std::pair<Coord, Coord>> succ;
    for (const Cell& c : cells) {
        auto [x, y] = c;
        if (!cells.count({x, y - 1})) succ[{x, y}] = {x + 1, y};
        if (!cells.count({x + 1, y})) succ[{x + 1, y}] = {x + 1, y + 1};
        if (!cells.count({x, y + 1})) succ[{x + 1, y + 1}] = {x, y + 1};
        if (!cells.count({x - 1, y})) succ[{x, y + 1}] = {x, y};
    }
    std::vector<Point> walk;
    auto start = succ.begin()->first;
    auto cur = start;
    do {
        walk.push_back({cur.first, cur.second});
        auto it = succ.find(cur);
        if (it == succ.end()) throw StructureViolation("cell region boundary is not a single cycle");
        cur = it->second;
    } while (cur != start);
    if (walk.size() != succ.size())
        throw StructureViolation("cell region boundary is not a single cycle");

    // Keep direction changes only.
    std::vector<Point> corners;
    const size_t n = walk.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& prev = walk[(i + n - 1) % n];
        const Point& cur_pt = walk[i];
        const Point& next = walk[(i + 1) % n];
        bool was_horiz = (cur_pt.y == prev.y);
        bool is_horiz = (next.y == cur_pt.y);
        if (was_horiz != is_horiz) corners.push_back(cur_pt);
    }
    return corners;
}

inline RectilinearDomain domain_from_cells(const std::set<Cell>& cells) {
    return RectilinearDomain::from_vertices(region_boundary(cells));
}

}  // namespace detail

/// Comb with k teeth: spine [0, 2k-1] x [0,1], tooth i = [2i, 2i+1] x [-5, 0].
/// One horizontal guard covers it; point guards need one per tooth.
inline RectilinearDomain comb(int k) {
    if (k < 1) throw UnsupportedParameter("comb needs k >= 1");
    std::vector<Point> verts;
    verts.reserve(static_cast<size_t>(4 * k));
    for (int i = 0; i < k; ++i) {
        verts.push_back({2 * i, -5});
        verts.push_back({2 * i + 1, -5});
        if (i + 1 < k) {
            verts.push_back({2 * i + 1, 0});
            verts.push_back({2 * i + 2, 0});
        }
    }
    verts.push_back({2 * k - 1, 1});
    verts.push_back({0, 1});
    return RectilinearDomain::from_vertices(std::move(verts));
}

namespace detail {

inline RectilinearDomain from_list(std::initializer_list<std::pair<int, int>> pts) {
    std::vector<Point> v;
    v.reserve(pts.size());
    for (auto [x, y] : pts) v.push_back({x, y});
    return RectilinearDomain::from_vertices(std::move(v));
}

// One plus sign; one point guard in the middle suffices, m_V + m_H = 2.
inline RectilinearDomain tight2() {
    return from_list({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 0}, {3, 0},
                      {3, -1}, {2, -1}, {2, -2}, {1, -2}, {1, -1}, {0, -1}});
}

// Two plus signs sharing their vertical column.
inline RectilinearDomain tight3() {
    return from_list({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 0}, {3, 0}, {3, -1}, {2, -1},
                      {2, -2}, {3, -2}, {3, -3}, {2, -3}, {2, -4}, {1, -4}, {1, -3},
                      {0, -3}, {0, -2}, {1, -2}, {1, -1}, {0, -1}});
}

// Pinwheel: 5x5 square with one notch per side, rotationally symmetric.
inline RectilinearDomain tight4() {
    return from_list({{0, 0}, {-1, 0}, {-1, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 2}, {4, 2},
                      {4, 0}, {3, 0}, {3, -1}, {4, -1}, {4, -3}, {2, -3}, {2, -2},
                      {1, -2}, {1, -3}, {-1, -3}, {-1, -1}, {0, -1}});
}

// Pinwheel with one plus sign attached in line with its upper row.
inline RectilinearDomain tight5() {
    return from_list({{0, 0},  {-1, 0}, {-1, 2}, {1, 2},  {1, 1},  {2, 1},  {2, 2},  {4, 2},
                      {4, 1},  {5, 1},  {5, 2},  {6, 2},  {6, 1},  {7, 1},  {7, 0},  {6, 0},
                      {6, -1}, {5, -1}, {5, 0},  {3, 0},  {3, -1}, {4, -1}, {4, -3}, {2, -3},
                      {2, -2}, {1, -2}, {1, -3}, {-1, -3}, {-1, -1}, {0, -1}});
}

// Pinwheel with a chain of two plus signs hanging below its right column.
// The hanging chain keeps the plus rows away from the pinwheel rows, so no
// guard can serve both; six point guards are needed.
inline RectilinearDomain tight6() {
    std::set<Cell> cells;
    for (Coord x = -1; x <= 3; ++x)
        for (Coord y = -3; y <= 1; ++y) cells.insert({x, y});
    for (Cell notch : {Cell{1, 1}, {3, -1}, {1, -3}, {-1, -1}}) cells.erase(notch);
    for (Coord y = -8; y <= -4; ++y) cells.insert({2, y});  // hanging column
    for (Coord x : {1LL, 3LL}) {
        cells.insert({x, -5});  // first plus arms
        cells.insert({x, -7});  // second plus arms
    }
    return domain_from_cells(cells);
}

// Four four-guard gadgets strung in an L shape; m_V + m_H = 13, sixteen
// point guards are needed.
inline RectilinearDomain tight13() {
    return from_list(
        {{0, 1},    {2, 1},    {2, 0},   {3, 0},   {3, 1},   {5, 1},   {5, 0},   {6, 0},
         {6, 1},    {8, 1},    {8, 0},   {9, 0},   {9, 1},   {11, 1},  {11, 0},  {12, 0},
         {12, 1},   {14, 1},   {14, 0},  {15, 0},  {15, 1},  {17, 1},  {17, -1}, {16, -1},
         {16, -2},  {17, -2},  {17, -4}, {16, -4}, {16, -5}, {17, -5}, {17, -7}, {16, -7},
         {16, -8},  {17, -8},  {17, -10}, {15, -10}, {15, -9}, {14, -9}, {14, -10}, {12, -10},
         {12, -8},  {13, -8},  {13, -7}, {12, -7}, {12, -5}, {14, -5}, {14, -6}, {15, -6},
         {15, -3},  {14, -3},  {14, -4}, {12, -4}, {12, -2}, {13, -2}, {13, -1}, {10, -1},
         {10, -2},  {11, -2},  {11, -4}, {9, -4},  {9, -3},  {8, -3},  {8, -4},  {6, -4},
         {6, -2},   {7, -2},   {7, -1},  {4, -1},  {4, -2},  {5, -2},  {5, -4},  {3, -4},
         {3, -3},   {2, -3},   {2, -4},  {0, -4},  {0, -2},  {1, -2},  {1, -1},  {0, -1}});
}

// Straight chain of q crenellated gadgets plus a tail of extra plus signs,
// giving m_V + m_H = 3q + 1 + extra.
inline RectilinearDomain tight_chain(int q, int extra) {
    std::set<Cell> cells;
    auto add = [&](Coord x, Coord y) { cells.insert({x, y}); };
    Coord width = 6 * q - 1 + (extra > 0 ? 4 : 0);
    for (Coord x = 0; x < width; ++x) add(x, -1);  // shared long row
    for (int z = 0; z < q; ++z) {
        Coord X = 6 * z;
        for (Coord x : {X, X + 1, X + 3, X + 4}) add(x, 0);           // merlons
        for (Coord x = X + 1; x <= X + 3; ++x) add(x, -2);            // bridge
        for (Coord x = X; x <= X + 4; ++x) add(x, -3);                // under row
        for (Coord x : {X, X + 1, X + 3, X + 4}) add(x, -4);          // legs
    }
    if (extra >= 1) {
        add(6 * q + 1, 0);
        add(6 * q + 1, -2);
    }
    if (extra == 2) {
        for (Coord x = 6 * q; x <= 6 * q + 2; ++x) add(x, -3);
        add(6 * q + 1, -4);
    }
    return domain_from_cells(cells);
}

}  // namespace detail

/// A domain whose minimum guard numbers satisfy m_V + m_H = total while its
/// minimum point guard count meets ⌊4(total-1)/3⌋ exactly.
inline RectilinearDomain sharpness(int total) {
    switch (total) {
        case 2: return detail::tight2();
        case 3: return detail::tight3();
        case 4: return detail::tight4();
        case 5: return detail::tight5();
        case 6: return detail::tight6();
        case 13: return detail::tight13();
        default: break;
    }
    if (total < 2 || total > 13) throw UnsupportedParameter("sharpness supports totals 2..13");
    int q = (total - 1) / 3;
    int extra = (total - 1) % 3;
    return detail::tight_chain(q, extra);
}

/// Seeded random simple rectilinear domain with vertex count within 4 of
/// n_target. Carves single boundary cells from a solid rectangle while the
/// region stays connected, hole-free and pinch-free.
inline RectilinearDomain random_domain(int n_target, uint64_t seed) {
    if (n_target < 4 || n_target % 2 != 0)
        throw UnsupportedParameter("random_domain needs an even target >= 4");
    detail::SplitMix64 rng(seed * 0x100000001B3ULL + 0xCBF29CE484222325ULL);
    const Coord side = std::max<Coord>(2, n_target / 2);
    std::set<detail::Cell> cells;
    for (Coord x = 0; x < side; ++x)
        for (Coord y = 0; y < side; ++y) cells.insert({x, y});

    auto connected_without = [&](const detail::Cell& removed) {
        if (cells.size() <= 2) return cells.size() == 2;
        detail::Cell start{-1, -1};
        for (const auto& c : cells)
            if (c != removed) { start = c; break; }
        std::set<detail::Cell> seen{start};
        std::vector<detail::Cell> stack{start};
        while (!stack.empty()) {
            auto [x, y] = stack.back();
            stack.pop_back();
            for (const detail::Cell& nb :
                 {detail::Cell{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}}) {
                if (nb == removed || !cells.count(nb) || seen.count(nb)) continue;
                seen.insert(nb);
                stack.push_back(nb);
            }
        }
        return seen.size() == cells.size() - 1;
    };
    auto pinch_free_without = [&](const detail::Cell& removed) {
        auto [cx, cy] = removed;
        auto in = [&](Coord x, Coord y) {
            detail::Cell c{x, y};
            return c != removed && cells.count(c) > 0;
        };
        for (Coord px = cx; px <= cx + 1; ++px)
            for (Coord py = cy; py <= cy + 1; ++py) {
                bool a = in(px - 1, py - 1), b = in(px, py - 1);
                bool c = in(px - 1, py), d = in(px, py);
                if ((a && d && !b && !c) || (b && c && !a && !d)) return false;
            }
        return true;
    };

    int n = detail::region_vertex_count(cells);
    while (n < n_target) {
        std::vector<detail::Cell> candidates;
        for (const auto& c : cells) {
            auto [x, y] = c;
            bool exposed = !cells.count({x + 1, y}) || !cells.count({x - 1, y}) ||
                           !cells.count({x, y + 1}) || !cells.count({x, y - 1});
            if (!exposed || cells.size() < 2) continue;
            if (!pinch_free_without(c)) continue;
            if (!connected_without(c)) continue;
            candidates.push_back(c);
        }
        if (candidates.empty()) break;
        const detail::Cell pick = candidates[rng.below(candidates.size())];
        cells.erase(pick);
        n = detail::region_vertex_count(cells);
    }
    return detail::domain_from_cells(cells);
}

}  // namespace rgallery
