#include "rgallery/slicing.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace rgallery;

namespace {

__int128 domain_area2(const RectilinearDomain& d) {
    const auto& v = d.vertices();
    __int128 a = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const Point& q = v[(i + 1) % v.size()];
        a += static_cast<__int128>(p.x) * q.y - static_cast<__int128>(q.x) * p.y;
    }
    return a;
}

void check_decomposition_invariants(const RectilinearDomain& d, const SliceSet& s) {
    __int128 total = 0;
    for (const Slice& sl : s.slices) {
        REQUIRE(sl.rect.valid());
        total += static_cast<__int128>(sl.rect.width()) * sl.rect.height();
        // Boundary-side condition: the cut-free sides lie on the boundary,
        // which the label pass asserts; here check the rect is inside.
        CHECK(contains_rect(d, sl.rect));
    }
    CHECK(total * 2 == domain_area2(d));
    for (size_t i = 0; i < s.slices.size(); ++i)
        for (size_t j = i + 1; j < s.slices.size(); ++j)
            CHECK_FALSE(s.slices[i].rect.crosses(s.slices[j].rect));
}

void check_rtree_against_brute(const SliceSet& s, const RTree& t) {
    const int n = s.size();
    int brute_edges = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const AxisRect& a = s.rect(i);
            const AxisRect& b = s.rect(j);
            bool touch = std::max(a.xmin, b.xmin) <= std::min(a.xmax, b.xmax) &&
                         std::max(a.ymin, b.ymin) <= std::min(a.ymax, b.ymax);
            bool tree_edge = std::find(t.adj[static_cast<size_t>(i)].begin(),
                                       t.adj[static_cast<size_t>(i)].end(),
                                       j) != t.adj[static_cast<size_t>(i)].end();
            CHECK(touch == tree_edge);
            brute_edges += touch ? 1 : 0;
        }
    CHECK(brute_edges == n - 1);
}

}  // namespace

TEST_CASE("a rectangle is its own single slice") {
    auto d = fixtures::square();
    auto sh = decompose(d, Orientation::Horizontal);
    auto sv = decompose(d, Orientation::Vertical);
    REQUIRE(sh.size() == 1);
    REQUIRE(sv.size() == 1);
    CHECK(sh.rect(0) == AxisRect{0, 0, 4, 4});
    CHECK(build_rtree(sh).size() == 1);
}

TEST_CASE("L-domain slices match the expected rectangles") {
    auto d = fixtures::l_domain();
    auto sh = decompose(d, Orientation::Horizontal);
    auto sv = decompose(d, Orientation::Vertical);
    REQUIRE(sh.size() == 2);
    REQUIRE(sv.size() == 2);
    CHECK(sh.rect(0) == AxisRect{0, 0, 8, 4});
    CHECK(sh.rect(1) == AxisRect{0, 4, 4, 8});
    CHECK(sv.rect(0) == AxisRect{0, 0, 4, 8});
    CHECK(sv.rect(1) == AxisRect{4, 0, 8, 4});

    auto th = build_rtree(sh);
    CHECK(th.adj[0] == std::vector<int>{1});

    auto labels = attach_labels(d, sh);
    // Right side of the bottom slice lies on the boundary edge (8,0)-(8,4).
    int edge = labels.side_edge[0].second;
    const auto& verts = d.vertices();
    Point a = verts[static_cast<size_t>(edge)];
    Point b = verts[(static_cast<size_t>(edge) + 1) % verts.size()];
    CHECK(a.x == 8);
    CHECK(b.x == 8);
}

TEST_CASE("comb slice counts follow the tooth count") {
    {
        // A one-tooth comb degenerates to a rectangle.
        auto d = comb(1);
        CHECK(decompose(d, Orientation::Horizontal).size() == 1);
        CHECK(decompose(d, Orientation::Vertical).size() == 1);
    }
    for (int k : {2, 3, 5, 8}) {
        auto d = comb(k);
        auto sh = decompose(d, Orientation::Horizontal);
        auto sv = decompose(d, Orientation::Vertical);
        CHECK(sh.size() == k + 1);
        CHECK(sv.size() == 2 * k - 1);
        check_decomposition_invariants(d, sh);
        check_decomposition_invariants(d, sv);
        check_rtree_against_brute(sh, build_rtree(sh));
        check_rtree_against_brute(sv, build_rtree(sv));
    }
}

TEST_CASE("comb horizontal tree is a star around the spine") {
    auto d = comb(3);
    auto sh = decompose(d, Orientation::Horizontal);
    auto th = build_rtree(sh);
    // Teeth come first in sweep order (lower y), the spine is last.
    int spine = sh.size() - 1;
    CHECK(th.adj[static_cast<size_t>(spine)].size() == 3);
    for (int tooth = 0; tooth < 3; ++tooth)
        CHECK(th.adj[static_cast<size_t>(tooth)] == std::vector<int>{spine});

    auto labels = attach_labels(d, sh);
    for (int tooth = 0; tooth < 3; ++tooth) {
        const AxisRect& r = sh.rect(tooth);
        CHECK(labels.slice_starting_at(sh, r.ymin, r.xmin, r.xmax) == tooth);
    }
}

TEST_CASE("staircase fixture decomposes into 7 and 8 slices") {
    auto d = fixtures::staircase20();
    auto sh = decompose(d, Orientation::Horizontal);
    auto sv = decompose(d, Orientation::Vertical);
    REQUIRE(sh.size() == 7);
    REQUIRE(sv.size() == 8);
    check_decomposition_invariants(d, sh);
    check_decomposition_invariants(d, sv);
    check_rtree_against_brute(sh, build_rtree(sh));
    check_rtree_against_brute(sv, build_rtree(sv));
    // Spot-check a few rectangles (doubled coordinates).
    CHECK(sh.rect(0) == AxisRect{0, 0, 2, 4});    // left sliver, uncut at y=1
    CHECK(sh.rect(1) == AxisRect{4, 0, 10, 2});   // bottom middle
    CHECK(sh.rect(3) == AxisRect{4, 2, 18, 4});   // long middle row
    CHECK(sv.rect(7) == AxisRect{16, 0, 18, 4});  // rightmost column
}

TEST_CASE("decomposition invariants hold on random domains") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        auto d = random_domain(22, seed);
        for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
            auto s = decompose(d, o);
            check_decomposition_invariants(d, s);
            check_rtree_against_brute(s, build_rtree(s));
            attach_labels(d, s);  // throws if any slice side misses the boundary
        }
    }
}

TEST_CASE("slice dump lists slices then tree edges") {
    auto d = fixtures::l_domain();
    auto sh = decompose(d, Orientation::Horizontal);
    auto th = build_rtree(sh);
    CHECK(dump_slices(sh, th) == "0 h 0 0 8 4\n1 h 0 4 4 8\n0 1\n");
}
