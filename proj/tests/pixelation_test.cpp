#include "rgallery/pixelation.hpp"

#include <set>

#include "doctest.h"
#include "fixtures.hpp"

using namespace rgallery;
using fixtures::Instance;

namespace {

std::set<std::pair<int, int>> brute_edges(const Instance& in) {
    std::set<std::pair<int, int>> out;
    for (int h = 0; h < in.hs.size(); ++h)
        for (int v = 0; v < in.vs.size(); ++v)
            if (fixtures::brute_edge(in, h, v)) out.insert({h, v});
    return out;
}

void check_against_brute(const Instance& in) {
    auto brute = brute_edges(in);
    CHECK(in.g().edge_count() == static_cast<long long>(brute.size()));
    for (int h = 0; h < in.hs.size(); ++h)
        for (int v = 0; v < in.vs.size(); ++v)
            CHECK(in.g().edge_exists(h, v) == (brute.count({h, v}) > 0));

    // Path-endpoint representation round-trips the brute neighborhoods, and
    // each neighborhood really is a path (visited in order, no repeats).
    for (int v = 0; v < in.vs.size(); ++v) {
        std::vector<int> walk;
        in.g().for_each_h_neighbor(v, [&](int h) { walk.push_back(h); });
        std::set<int> seen(walk.begin(), walk.end());
        CHECK(seen.size() == walk.size());
        std::set<int> expect;
        for (int h = 0; h < in.hs.size(); ++h)
            if (brute.count({h, v})) expect.insert(h);
        CHECK(seen == expect);
        for (size_t i = 0; i + 1 < walk.size(); ++i) {
            const auto& adj = in.th.adj[static_cast<size_t>(walk[i])];
            CHECK(std::find(adj.begin(), adj.end(), walk[i + 1]) != adj.end());
        }
    }
}

}  // namespace

TEST_CASE("square pixelation is a single edge") {
    Instance in(fixtures::square());
    CHECK(in.g().edge_count() == 1);
    CHECK(in.g().edge_exists(0, 0));
    CHECK(in.g().pixel({0, 0}) == AxisRect{0, 0, 4, 4});
}

TEST_CASE("L-domain pixelation has three edges") {
    Instance in(fixtures::l_domain());
    CHECK(in.g().edge_count() == 3);
    CHECK(in.g().edge_exists(0, 0));
    CHECK(in.g().edge_exists(0, 1));
    CHECK(in.g().edge_exists(1, 0));
    CHECK_FALSE(in.g().edge_exists(1, 1));
    check_against_brute(in);
}

TEST_CASE("staircase fixture has the expected 25-edge graph") {
    Instance in(fixtures::staircase20());
    CHECK(in.g().edge_count() == 25);
    check_against_brute(in);
    // The full edge list, as (v, h) pairs of sweep-order ids.
    std::set<std::pair<int, int>> expect = {
        {0, 0}, {2, 1}, {3, 1}, {4, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {2, 5},
        {3, 3}, {3, 4}, {3, 5}, {3, 6}, {4, 3}, {4, 4}, {4, 5}, {5, 3}, {5, 4},
        {5, 5}, {6, 2}, {6, 3}, {6, 4}, {6, 5}, {7, 2}, {7, 3}};
    std::set<std::pair<int, int>> got;
    for (const PixelEdge& e : materialize_edges(in.g())) got.insert({e.v, e.h});
    CHECK(got == expect);
}

TEST_CASE("edge_exists matches brute force on random domains") {
    for (uint64_t seed = 40; seed < 60; ++seed) {
        Instance in(random_domain(20, seed));
        check_against_brute(in);
    }
}

TEST_CASE("edges_r_visible implements the shared-slice-or-4-cycle rule") {
    Instance l(fixtures::l_domain());
    PixelEdge top_left{1, 0}, bot_right{0, 1}, bot_left{0, 0};
    CHECK(edges_r_visible(l.g(), top_left, top_left));
    CHECK(edges_r_visible(l.g(), top_left, bot_left));     // share v0
    CHECK_FALSE(edges_r_visible(l.g(), top_left, bot_right));  // no shared slice, no 4-cycle

    Instance c(comb(3));
    // Spine pixels over tooth columns 1 and 3 share the spine slice.
    int spine = c.hs.size() - 1;
    CHECK(edges_r_visible(c.g(), {spine, 0}, {spine, 4}));
    // Tooth pixels in different teeth see nothing of each other.
    CHECK_FALSE(edges_r_visible(c.g(), {0, 0}, {2, 4}));
}

TEST_CASE("pixel centroids are integral and interior") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Instance in(random_domain(18, seed));
        for (const PixelEdge& e : materialize_edges(in.g())) {
            AxisRect px = in.g().pixel(e);
            Point c = px.centroid();
            CHECK((px.xmin + px.xmax) % 2 == 0);
            CHECK(px.xmin < c.x);
            CHECK(c.x < px.xmax);
        }
    }
}

TEST_CASE("graph and geometric visibility agree on pixel centroids") {
    for (const RectilinearDomain& d :
         {fixtures::square(), fixtures::l_domain(), fixtures::staircase20(), comb(2)}) {
        Instance in(d);
        auto edges = materialize_edges(in.g());
        for (const PixelEdge& a : edges)
            for (const PixelEdge& b : edges) {
                Point pa = in.g().pixel(a).centroid();
                Point pb = in.g().pixel(b).centroid();
                CHECK(r_vision_agrees(in.domain, in.g(), a, b, pa, pb));
            }
    }
}

TEST_CASE("chordality check accepts real pixelation graphs") {
    CHECK(check_chordal_bipartite(Instance(fixtures::staircase20()).g()));
    CHECK(check_chordal_bipartite(Instance(fixtures::l_domain()).g()));
    CHECK(check_chordal_bipartite(Instance(sharpness(4)).g()));
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Instance in(random_domain(20, seed));
        if (in.g().edge_count() <= 64) CHECK(check_chordal_bipartite(in.g()));
    }
}

TEST_CASE("chordality check rejects a chordless six-cycle") {
    std::vector<std::vector<int>> c6(6);
    for (int i = 0; i < 6; ++i) {
        c6[static_cast<size_t>(i)].push_back((i + 1) % 6);
        c6[static_cast<size_t>(i)].push_back((i + 5) % 6);
    }
    CHECK_FALSE(detail::chordal_bipartite_adj(c6));

    // A four-cycle has no room for chords and is fine.
    std::vector<std::vector<int>> c4(4);
    for (int i = 0; i < 4; ++i) {
        c4[static_cast<size_t>(i)].push_back((i + 1) % 4);
        c4[static_cast<size_t>(i)].push_back((i + 3) % 4);
    }
    CHECK(detail::chordal_bipartite_adj(c4));

    // Six-cycle plus one chord is chordal bipartite again.
    auto with_chord = c6;
    with_chord[0].push_back(3);
    with_chord[3].push_back(0);
    CHECK(detail::chordal_bipartite_adj(with_chord));
}

TEST_CASE("pixelation dump lists nodes and optionally edges") {
    Instance in(fixtures::l_domain());
    CHECK(dump_pixelation(in.g(), false) == "h 0\nh 1\nv 0 0 1\nv 1 0 0\n");
    CHECK(dump_pixelation(in.g(), true) ==
          "h 0\nh 1\nv 0 0 1\nv 1 0 0\n0 0\n0 1\n1 0\n");
}
