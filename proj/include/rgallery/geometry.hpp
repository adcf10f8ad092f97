#pragma once
/**
 * Rectilinear domains (simple orthogonal polygons) with exact integer
 * arithmetic, and the r-vision predicates built on top of them.
 *
 * All coordinates are doubled on ingestion, so pixel centroids, half-unit
 * rectangle fattenings and slice midlines stay integral. Every predicate in
 * this file is exact; there is no floating point anywhere.
 */

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rgallery {

using Coord = long long;

struct Point {
    Coord x = 0;
    Coord y = 0;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

/// Axis-aligned rectangle, non-degenerate unless stated otherwise.
struct AxisRect {
    Coord xmin = 0, ymin = 0, xmax = 0, ymax = 0;

    bool valid() const { return xmin < xmax && ymin < ymax; }
    Coord width() const { return xmax - xmin; }
    Coord height() const { return ymax - ymin; }

    bool contains(Point p) const {
        return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
    }
    bool contains(const AxisRect& r) const {
        return xmin <= r.xmin && r.xmax <= xmax && ymin <= r.ymin && r.ymax <= ymax;
    }
    /// Open interiors intersect.
    bool crosses(const AxisRect& r) const {
        return std::max(xmin, r.xmin) < std::min(xmax, r.xmax) &&
               std::max(ymin, r.ymin) < std::min(ymax, r.ymax);
    }
    AxisRect intersect(const AxisRect& r) const {
        return {std::max(xmin, r.xmin), std::max(ymin, r.ymin),
                std::min(xmax, r.xmax), std::min(ymax, r.ymax)};
    }
    Point centroid() const { return {(xmin + xmax) / 2, (ymin + ymax) / 2}; }

    friend bool operator==(const AxisRect& a, const AxisRect& b) {
        return a.xmin == b.xmin && a.ymin == b.ymin && a.xmax == b.xmax && a.ymax == b.ymax;
    }
};

enum class VertexKind { Convex, Reflex };

enum class PolygonDefect { NotOrthogonal, SelfIntersecting, CollinearVertices, OddVertexCount, Hole };

struct MalformedInput : std::runtime_error {
    explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPolygon : std::runtime_error {
    PolygonDefect defect;
    InvalidPolygon(PolygonDefect d, const std::string& what) : std::runtime_error(what), defect(d) {}
};

struct PointOutsideDomain : std::runtime_error {
    explicit PointOutsideDomain(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Fenwick tree used by the boundary simplicity sweep.
class Fenwick {
  public:
    explicit Fenwick(int n) : tree_(static_cast<size_t>(n) + 1, 0) {}
    void add(int i, int v) {
        for (++i; i < static_cast<int>(tree_.size()); i += i & -i) tree_[static_cast<size_t>(i)] += v;
    }
    long long prefix(int i) const {
        long long s = 0;
        for (++i; i > 0; i -= i & -i) s += tree_[static_cast<size_t>(i)];
        return s;
    }
    long long range(int lo, int hi) const {  // inclusive
        if (hi < lo) return 0;
        return prefix(hi) - (lo ? prefix(lo - 1) : 0);
    }

  private:
    std::vector<long long> tree_;
};

}  // namespace detail

/**
 * A validated simple orthogonal polygon together with its closed interior.
 * Vertices are stored counter-clockwise, starting at the lexicographically
 * smallest vertex, with all coordinates doubled.
 */
class RectilinearDomain {
  public:
    /// Validates and normalizes. Input coordinates are user units; they are
    /// doubled before being stored.
    static RectilinearDomain from_vertices(std::vector<Point> verts);

    size_t size() const { return verts_.size(); }
    const std::vector<Point>& vertices() const { return verts_; }

    AxisRect bounding_box() const {
        AxisRect b{verts_[0].x, verts_[0].y, verts_[0].x, verts_[0].y};
        for (const Point& p : verts_) {
            b.xmin = std::min(b.xmin, p.x);
            b.ymin = std::min(b.ymin, p.y);
            b.xmax = std::max(b.xmax, p.x);
            b.ymax = std::max(b.ymax, p.y);
        }
        return b;
    }

    /// Closed membership test, in the domain's (doubled) coordinates.
    bool contains_point(Point p) const { return contains_point_scaled(p, 1); }

    /// Membership of p in the domain with every boundary coordinate
    /// multiplied by `scale`. Used to query midpoints exactly.
    bool contains_point_scaled(Point p, Coord scale) const;

  private:
    RectilinearDomain() = default;
    std::vector<Point> verts_;
};

/// Parses the polygon JSON format: {"vertices": [[x, y], ...]}.
RectilinearDomain parse_domain(std::string_view text);

/// Per-vertex convex/reflex labels; count(Convex) == count(Reflex) + 4.
std::vector<VertexKind> classify_vertices(const RectilinearDomain& d);

/// Exact closed containment of a non-degenerate rectangle in the domain.
bool contains_rect(const RectilinearDomain& d, const AxisRect& r);

/// True iff some non-degenerate axis-aligned rectangle inside the domain
/// contains both points. Throws PointOutsideDomain if either point is not
/// in the (closed) domain.
bool points_r_visible(const RectilinearDomain& d, Point p, Point q);

// ---------------------------------------------------------------------------

inline bool RectilinearDomain::contains_point_scaled(Point p, Coord scale) const {
    const size_t n = verts_.size();
    // On-boundary check first: the domain is closed.
    for (size_t i = 0; i < n; ++i) {
        Point a = verts_[i], b = verts_[(i + 1) % n];
        a.x *= scale; a.y *= scale; b.x *= scale; b.y *= scale;
        if (a.x == b.x) {
            if (p.x == a.x && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y)) return true;
        } else {
            if (p.y == a.y && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)) return true;
        }
    }
    // Ray to +x, counting vertical edges with the half-open rule.
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        Point a = verts_[i], b = verts_[(i + 1) % n];
        a.x *= scale; a.y *= scale; b.x *= scale; b.y *= scale;
        if (a.x != b.x) continue;
        Coord ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
        if (ylo <= p.y && p.y < yhi && p.x < a.x) inside = !inside;
    }
    return inside;
}

inline RectilinearDomain RectilinearDomain::from_vertices(std::vector<Point> verts) {
    const size_t n = verts.size();
    if (n < 4) throw MalformedInput("polygon needs at least 4 vertices");
    if (n % 2 != 0)
        throw InvalidPolygon(PolygonDefect::OddVertexCount, "orthogonal polygons have even vertex count");

    constexpr Coord kLimit = (1LL << 60);
    for (const Point& p : verts)
        if (p.x <= -kLimit || p.x >= kLimit || p.y <= -kLimit || p.y >= kLimit)
            throw MalformedInput("coordinate magnitude too large");

    // Double all coordinates up front; everything below works on them.
    for (Point& p : verts) { p.x *= 2; p.y *= 2; }

    // Edges must be axis-parallel, nonzero, and alternate orientation.
    std::vector<bool> horizontal(n);
    for (size_t i = 0; i < n; ++i) {
        const Point& a = verts[i];
        const Point& b = verts[(i + 1) % n];
        if (a.x != b.x && a.y != b.y)
            throw InvalidPolygon(PolygonDefect::NotOrthogonal, "edge is not axis-parallel");
        if (a.x == b.x && a.y == b.y)
            throw InvalidPolygon(PolygonDefect::NotOrthogonal, "zero-length edge");
        horizontal[i] = (a.y == b.y);
    }
    for (size_t i = 0; i < n; ++i)
        if (horizontal[i] == horizontal[(i + 1) % n])
            throw InvalidPolygon(PolygonDefect::CollinearVertices,
                                 "consecutive edges must alternate horizontal/vertical");

    // Simplicity. Non-adjacent edges of a simple orthogonal polygon may not
    // touch at all, so: no two vertical (or two horizontal) edges may have
    // closed contact, and the number of vertical-horizontal closed contacts
    // must equal n (one per polygon vertex).
    struct Seg { Coord fixed, lo, hi; };
    std::vector<Seg> vert, horz;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = verts[i];
        const Point& b = verts[(i + 1) % n];
        if (horizontal[i])
            horz.push_back({a.y, std::min(a.x, b.x), std::max(a.x, b.x)});
        else
            vert.push_back({a.x, std::min(a.y, b.y), std::max(a.y, b.y)});
    }
    auto same_axis_overlap = [](std::vector<Seg>& segs) {
        std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
            return a.fixed != b.fixed ? a.fixed < b.fixed : a.lo < b.lo;
        });
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].fixed == segs[i - 1].fixed && segs[i].lo <= segs[i - 1].hi) return true;
        return false;
    };
    if (same_axis_overlap(vert) || same_axis_overlap(horz))
        throw InvalidPolygon(PolygonDefect::SelfIntersecting, "collinear boundary edges overlap");

    {
        // Sweep over x; count closed vertical-horizontal contacts.
        std::vector<Coord> ys;
        ys.reserve(horz.size());
        for (const Seg& s : horz) ys.push_back(s.fixed);
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        auto yrank = [&](Coord y) {
            return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
        };
        struct Event { Coord x; int type; size_t idx; };  // type: 0 add, 1 query, 2 remove
        std::vector<Event> events;
        events.reserve(horz.size() * 2 + vert.size());
        for (size_t i = 0; i < horz.size(); ++i) {
            events.push_back({horz[i].lo, 0, i});
            events.push_back({horz[i].hi, 2, i});
        }
        for (size_t i = 0; i < vert.size(); ++i) events.push_back({vert[i].fixed, 1, i});
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
            return a.x != b.x ? a.x < b.x : a.type < b.type;
        });
        detail::Fenwick active(static_cast<int>(ys.size()));
        long long contacts = 0;
        for (const Event& e : events) {
            if (e.type == 0) active.add(yrank(horz[e.idx].fixed), 1);
            else if (e.type == 2) active.add(yrank(horz[e.idx].fixed), -1);
            else {
                int lo = yrank(vert[e.idx].lo);
                int hi = static_cast<int>(std::upper_bound(ys.begin(), ys.end(), vert[e.idx].hi) -
                                          ys.begin()) - 1;
                contacts += active.range(lo, hi);
            }
        }
        if (contacts != static_cast<long long>(n))
            throw InvalidPolygon(PolygonDefect::SelfIntersecting, "boundary is not simple");
    }

    // Orient counter-clockwise.
    __int128 area2 = 0;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = verts[i];
        const Point& b = verts[(i + 1) % n];
        area2 += static_cast<__int128>(a.x) * b.y - static_cast<__int128>(b.x) * a.y;
    }
    if (area2 == 0) throw InvalidPolygon(PolygonDefect::SelfIntersecting, "zero area");
    if (area2 < 0) std::reverse(verts.begin(), verts.end());

    // Start at the lexicographically smallest vertex.
    size_t start = 0;
    for (size_t i = 1; i < n; ++i)
        if (verts[i] < verts[start]) start = i;
    std::rotate(verts.begin(), verts.begin() + static_cast<long>(start), verts.end());

    RectilinearDomain d;
    d.verts_ = std::move(verts);
    return d;
}

inline std::vector<VertexKind> classify_vertices(const RectilinearDomain& d) {
    const auto& v = d.vertices();
    const size_t n = v.size();
    std::vector<VertexKind> kinds(n);
    for (size_t i = 0; i < n; ++i) {
        const Point& prev = v[(i + n - 1) % n];
        const Point& cur = v[i];
        const Point& next = v[(i + 1) % n];
        Coord inx = cur.x - prev.x, iny = cur.y - prev.y;
        Coord outx = next.x - cur.x, outy = next.y - cur.y;
        Coord cross = inx * outy - iny * outx;  // unit directions, no overflow
        kinds[i] = cross > 0 ? VertexKind::Convex : VertexKind::Reflex;
    }
    return kinds;
}

inline bool contains_rect(const RectilinearDomain& d, const AxisRect& r) {
    if (!r.valid()) throw MalformedInput("contains_rect requires a non-degenerate rectangle");
    // No boundary edge may cross the open interior of r ...
    const auto& v = d.vertices();
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        if (a.x == b.x) {
            Coord ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
            if (r.xmin < a.x && a.x < r.xmax && std::max(ylo, r.ymin) < std::min(yhi, r.ymax))
                return false;
        } else {
            Coord xlo = std::min(a.x, b.x), xhi = std::max(a.x, b.x);
            if (r.ymin < a.y && a.y < r.ymax && std::max(xlo, r.xmin) < std::min(xhi, r.xmax))
                return false;
        }
    }
    // ... so the interior lies entirely inside or outside; one midpoint decides.
    return d.contains_point_scaled({r.xmin + r.xmax, r.ymin + r.ymax}, 2);
}

inline bool points_r_visible(const RectilinearDomain& d, Point p, Point q) {
    if (!d.contains_point(p) || !d.contains_point(q))
        throw PointOutsideDomain("points_r_visible requires points inside the domain");
    AxisRect box{std::min(p.x, q.x), std::min(p.y, q.y), std::max(p.x, q.x), std::max(p.y, q.y)};
    if (box.valid()) return contains_rect(d, box);
    // Degenerate bounding box: fatten by one half-unit (1 in doubled coords).
    if (p == q) {
        for (Coord dx : {-1LL, 0LL})
            for (Coord dy : {-1LL, 0LL})
                if (contains_rect(d, {p.x + dx, p.y + dy, p.x + dx + 1, p.y + dy + 1})) return true;
        return false;
    }
    if (p.x == q.x) {
        return contains_rect(d, {box.xmin - 1, box.ymin, box.xmax, box.ymax}) ||
               contains_rect(d, {box.xmin, box.ymin, box.xmax + 1, box.ymax});
    }
    return contains_rect(d, {box.xmin, box.ymin - 1, box.xmax, box.ymax}) ||
           contains_rect(d, {box.xmin, box.ymin, box.xmax, box.ymax + 1});
}

// --- polygon JSON ----------------------------------------------------------

namespace detail {

class JsonCursor {
  public:
    explicit JsonCursor(std::string_view text) : s_(text) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw MalformedInput(std::string("expected '") + c + "' in polygon JSON");
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    Coord integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        size_t digits = 0;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') { ++pos_; ++digits; }
        if (digits == 0 || digits > 18) throw MalformedInput("expected integer coordinate");
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
    }
    std::string string_token() {
        expect('"');
        size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
        if (pos_ == s_.size()) throw MalformedInput("unterminated string");
        return std::string(s_.substr(start, pos_++ - start));
    }
    void expect_end() {
        skip_ws();
        if (pos_ != s_.size()) throw MalformedInput("trailing content after polygon JSON");
    }

  private:
    std::string_view s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline RectilinearDomain parse_domain(std::string_view text) {
    detail::JsonCursor c(text);
    c.expect('{');
    if (c.string_token() != "vertices") throw MalformedInput("expected \"vertices\" key");
    c.expect(':');
    c.expect('[');
    std::vector<Point> pts;
    if (!c.eat(']')) {
        do {
            c.expect('[');
            Point p;
            p.x = c.integer();
            c.expect(',');
            p.y = c.integer();
            c.expect(']');
            pts.push_back(p);
        } while (c.eat(','));
        c.expect(']');
    }
    c.expect('}');
    c.expect_end();
    return RectilinearDomain::from_vertices(std::move(pts));
}

/// Serializes a domain back to the polygon JSON format, in user units.
/// Coordinates must be even (true for every domain built by this library).
inline std::string domain_to_json(const RectilinearDomain& d) {
    std::string out = "{\"vertices\":[";
    const auto& v = d.vertices();
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += std::to_string(v[i].x / 2);
        out += ',';
        out += std::to_string(v[i].y / 2);
        out += ']';
    }
    out += "]}";
    return out;
}

}  // namespace rgallery
