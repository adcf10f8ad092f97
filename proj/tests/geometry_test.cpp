#include "rgallery/geometry.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace rgallery;

namespace {

// Independent oracle: exhaust all integer-corner rectangles containing both
// points (within the bounding box of the domain) and test containment.
bool brute_r_visible(const RectilinearDomain& d, Point p, Point q) {
    AxisRect bb = d.bounding_box();
    for (Coord x0 = bb.xmin; x0 <= std::min(p.x, q.x); ++x0)
        for (Coord x1 = std::max(p.x, q.x); x1 <= bb.xmax; ++x1)
            for (Coord y0 = bb.ymin; y0 <= std::min(p.y, q.y); ++y0)
                for (Coord y1 = std::max(p.y, q.y); y1 <= bb.ymax; ++y1) {
                    AxisRect r{x0, y0, x1, y1};
                    if (!r.valid()) continue;
                    if (contains_rect(d, r)) return true;
                }
    return false;
}

}  // namespace

TEST_CASE("parse_domain accepts the documented format") {
    auto d = parse_domain(R"({"vertices":[[0,0],[2,0],[2,2],[0,2]]})");
    CHECK(d.size() == 4);
    // Stored coordinates are doubled, counter-clockwise from the lexmin vertex.
    CHECK(d.vertices()[0] == Point{0, 0});
    CHECK(d.vertices()[1] == Point{4, 0});

    auto l = parse_domain(R"( { "vertices" : [ [0,0],[4,0],[4,2],[2,2],[2,4],[0,4] ] } )");
    CHECK(l.size() == 6);
}

TEST_CASE("parse_domain rejects malformed and invalid input") {
    CHECK_THROWS_AS(parse_domain("{"), MalformedInput);
    CHECK_THROWS_AS(parse_domain(R"({"vertices":[[0,0],[1,0]]})"), MalformedInput);
    CHECK_THROWS_AS(parse_domain(R"({"points":[[0,0]]})"), MalformedInput);

    try {
        parse_domain(R"({"vertices":[[0,0],[1,1],[2,0],[0,-1]]})");
        FAIL("diagonal edge accepted");
    } catch (const InvalidPolygon& e) {
        CHECK(e.defect == PolygonDefect::NotOrthogonal);
    }
    try {
        parse_domain(R"({"vertices":[[0,0],[2,0],[2,2],[0,2],[0,1]]})");
        FAIL("odd vertex count accepted");
    } catch (const InvalidPolygon& e) {
        CHECK(e.defect == PolygonDefect::OddVertexCount);
    }
    try {
        parse_domain(R"({"vertices":[[0,0],[1,0],[2,0],[2,2],[1,2],[0,2]]})");
        FAIL("collinear vertices accepted");
    } catch (const InvalidPolygon& e) {
        CHECK(e.defect == PolygonDefect::CollinearVertices);
    }
    try {
        // Figure-eight: boundary touches itself at (1,1).
        parse_domain(R"({"vertices":[[0,0],[1,0],[1,1],[2,1],[2,2],[1,2],[1,1],[0,1]]})");
        FAIL("self-touching boundary accepted");
    } catch (const InvalidPolygon& e) {
        CHECK(e.defect == PolygonDefect::SelfIntersecting);
    }
    try {
        parse_domain(R"({"vertices":[[0,0],[3,0],[3,3],[1,3],[1,-1],[0,-1]]})");
        FAIL("crossing boundary accepted");
    } catch (const InvalidPolygon& e) {
        CHECK(e.defect == PolygonDefect::SelfIntersecting);
    }
}

TEST_CASE("classify_vertices counts convex and reflex corners") {
    auto square = fixtures::square();
    auto kinds = classify_vertices(square);
    CHECK(std::count(kinds.begin(), kinds.end(), VertexKind::Convex) == 4);

    auto l = fixtures::l_domain();
    kinds = classify_vertices(l);
    CHECK(std::count(kinds.begin(), kinds.end(), VertexKind::Convex) == 5);
    CHECK(std::count(kinds.begin(), kinds.end(), VertexKind::Reflex) == 1);
    // The reflex corner is (2,2) in user units, (4,4) doubled.
    for (size_t i = 0; i < l.size(); ++i)
        if (kinds[i] == VertexKind::Reflex) CHECK(l.vertices()[i] == Point{4, 4});

    auto c2 = comb(2);
    kinds = classify_vertices(c2);
    CHECK(std::count(kinds.begin(), kinds.end(), VertexKind::Reflex) == 2);

    // Orientation of the input must not matter.
    auto cw = parse_domain(R"({"vertices":[[0,4],[2,4],[2,2],[4,2],[4,0],[0,0]]})");
    auto cw_kinds = classify_vertices(cw);
    CHECK(std::count(cw_kinds.begin(), cw_kinds.end(), VertexKind::Reflex) == 1);
}

TEST_CASE("convex minus reflex is four on generated domains") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto d = random_domain(24, seed);
        auto kinds = classify_vertices(d);
        auto convex = std::count(kinds.begin(), kinds.end(), VertexKind::Convex);
        auto reflex = std::count(kinds.begin(), kinds.end(), VertexKind::Reflex);
        CHECK(convex - reflex == 4);
        CHECK(convex + reflex == static_cast<long>(d.size()));
    }
}

TEST_CASE("contains_rect matches the documented examples") {
    auto square = fixtures::square();
    CHECK(contains_rect(square, {0, 0, 4, 4}));  // the whole doubled square

    auto l = fixtures::l_domain();
    CHECK_FALSE(contains_rect(l, {2, 2, 6, 6}));  // user (1,1)-(3,3)
    CHECK(contains_rect(l, {0, 0, 4, 8}));        // user (0,0)-(2,4)

    // Monotone: shrinking a contained rectangle keeps it contained.
    CHECK(contains_rect(l, {1, 1, 3, 7}));
    CHECK(contains_rect(l, {2, 3, 3, 4}));
}

TEST_CASE("contains_rect rejects rectangles spanning a notch") {
    // U-shape: the gap between the prongs admits no rectangle even though
    // all four corners can sit on the boundary.
    auto u = parse_domain(R"({"vertices":[[0,0],[6,0],[6,4],[4,4],[4,2],[2,2],[2,4],[0,4]]})");
    CHECK_FALSE(contains_rect(u, {4, 6, 8, 8}));  // user (2,3)-(4,4), spans the gap
    CHECK(contains_rect(u, {0, 0, 12, 4}));
}

TEST_CASE("points_r_visible matches the documented examples") {
    auto square = fixtures::square();
    CHECK(points_r_visible(square, {1, 1}, {3, 1}));

    auto l = fixtures::l_domain();
    CHECK_FALSE(points_r_visible(l, {2, 6}, {6, 2}));  // user (1,3) vs (3,1)
    CHECK(points_r_visible(l, {2, 2}, {2, 6}));        // user (1,1) vs (1,3)

    CHECK_THROWS_AS(points_r_visible(l, {14, 14}, {0, 0}), PointOutsideDomain);
}

TEST_CASE("points_r_visible agrees with brute-force rectangle search") {
    auto l = fixtures::l_domain();
    std::vector<Point> pts;
    for (Coord x = 0; x <= 8; x += 2)
        for (Coord y = 0; y <= 8; y += 2)
            if (l.contains_point({x, y})) pts.push_back({x, y});
    // Add off-lattice (odd doubled) points too.
    pts.push_back({1, 1});
    pts.push_back({3, 7});
    pts.push_back({7, 3});
    for (const Point& p : pts)
        for (const Point& q : pts) {
            CAPTURE(p.x); CAPTURE(p.y); CAPTURE(q.x); CAPTURE(q.y);
            CHECK(points_r_visible(l, p, q) == brute_r_visible(l, p, q));
        }
}

TEST_CASE("points_r_visible is symmetric and reflexive") {
    auto d = fixtures::staircase20();
    std::vector<Point> pts;
    AxisRect bb = d.bounding_box();
    for (Coord x = bb.xmin; x <= bb.xmax; x += 3)
        for (Coord y = bb.ymin; y <= bb.ymax; y += 3)
            if (d.contains_point({x, y})) pts.push_back({x, y});
    for (const Point& p : pts) {
        CHECK(points_r_visible(d, p, p));
        for (const Point& q : pts)
            CHECK(points_r_visible(d, p, q) == points_r_visible(d, q, p));
    }
}

TEST_CASE("interior pairs of a rectangle always see each other") {
    auto square = fixtures::square();
    for (Coord x1 = 1; x1 < 4; ++x1)
        for (Coord y1 = 1; y1 < 4; ++y1)
            for (Coord x2 = 1; x2 < 4; ++x2)
                for (Coord y2 = 1; y2 < 4; ++y2)
                    CHECK(points_r_visible(square, {x1, y1}, {x2, y2}));
}

TEST_CASE("domain JSON round-trips") {
    auto d = fixtures::staircase20();
    auto again = parse_domain(domain_to_json(d));
    CHECK(again.vertices() == d.vertices());
}
