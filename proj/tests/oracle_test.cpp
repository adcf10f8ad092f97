#include "rgallery/oracle.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace rgallery;
using fixtures::Instance;

TEST_CASE("oracle values on the square") {
    Instance in(fixtures::square());
    CHECK(exact_mobile(in.g(), Orientation::Horizontal).optimum == 1);
    CHECK(exact_mobile(in.g(), Orientation::Vertical).optimum == 1);
    CHECK(exact_point(in.g()).optimum == 1);
    CHECK(exact_msc(in.g()).optimum == 1);
}

TEST_CASE("oracle values on the L-domain") {
    Instance in(fixtures::l_domain());
    CHECK(exact_mobile(in.g(), Orientation::Horizontal).optimum == 1);
    CHECK(exact_mobile(in.g(), Orientation::Vertical).optimum == 1);
    CHECK(exact_point(in.g()).optimum == 1);
    CHECK(exact_msc(in.g()).optimum == 1);
}

TEST_CASE("oracle values on combs") {
    Instance c4(comb(4));
    CHECK(exact_mobile(c4.g(), Orientation::Horizontal).optimum == 1);
    CHECK(exact_mobile(c4.g(), Orientation::Vertical).optimum == 4);
    CHECK(exact_point(c4.g()).optimum == 4);

    // Mixed mobile guards: the spine slice alone covers every tooth column,
    // and the columns cover the teeth.
    Instance c3(comb(3));
    CHECK(exact_msc(c3.g()).optimum == 1);
}

TEST_CASE("oracle witnesses are feasible covers") {
    Instance in(comb(3));
    auto mh = exact_mobile(in.g(), Orientation::Horizontal);
    REQUIRE(mh.optimum == static_cast<int>(mh.witness.size()));
    // Every vertical slice must cross a chosen horizontal slice.
    for (int v = 0; v < in.vs.size(); ++v) {
        bool covered = false;
        for (int h : mh.witness) covered = covered || in.g().edge_exists(h, v);
        CHECK(covered);
    }

    auto pt = exact_point(in.g());
    auto edges = materialize_edges(in.g());
    REQUIRE(pt.optimum == static_cast<int>(pt.witness.size()));
    for (const PixelEdge& e : edges) {
        bool covered = false;
        for (int zi : pt.witness)
            covered = covered || edges_r_visible(in.g(), edges[static_cast<size_t>(zi)], e);
        CHECK(covered);
    }
}

TEST_CASE("oracle values on the tight families with captions") {
    struct Expect { int total; int p; };
    for (Expect e : {Expect{2, 1}, Expect{3, 2}, Expect{4, 4}, Expect{5, 5}, Expect{6, 6}}) {
        CAPTURE(e.total);
        Instance in(sharpness(e.total));
        int mh = exact_mobile(in.g(), Orientation::Horizontal).optimum;
        int mv = exact_mobile(in.g(), Orientation::Vertical).optimum;
        CHECK(mh + mv == e.total);
        CHECK(exact_point(in.g(), 32).optimum == e.p);
    }
}

TEST_CASE("point optimum sits between the mobile optima and the bound") {
    for (uint64_t seed = 60; seed < 80; ++seed) {
        Instance in(random_domain(18, seed));
        if (in.g().edge_count() > 64) continue;
        int mh = exact_mobile(in.g(), Orientation::Horizontal).optimum;
        int mv = exact_mobile(in.g(), Orientation::Vertical).optimum;
        int p = exact_point(in.g(), 64).optimum;
        CAPTURE(seed);
        CHECK(p >= std::max(mh, mv));
        CHECK(p <= (4 * (mh + mv - 1)) / 3);
    }
}

TEST_CASE("oracles refuse oversized instances") {
    Instance in(comb(30));
    CHECK_THROWS_AS(exact_mobile(in.g(), Orientation::Vertical), TooLarge);
    CHECK_THROWS_AS(exact_point(in.g()), TooLarge);
    CHECK_THROWS_AS(exact_msc(in.g()), TooLarge);
}
