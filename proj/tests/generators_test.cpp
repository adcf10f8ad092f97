#include "rgallery/generators.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using namespace rgallery;

TEST_CASE("comb vertex and reflex counts") {
    CHECK(comb(1).size() == 4);
    for (int k : {2, 3, 7, 10}) {
        auto d = comb(k);
        CHECK(d.size() == static_cast<size_t>(4 * k));
        auto kinds = classify_vertices(d);
        CHECK(std::count(kinds.begin(), kinds.end(), VertexKind::Reflex) == 2 * (k - 1));
    }
    CHECK_THROWS_AS(comb(0), UnsupportedParameter);
}

TEST_CASE("sharpness families validate for every supported total") {
    for (int total = 2; total <= 13; ++total) {
        CAPTURE(total);
        auto d = sharpness(total);
        CHECK(d.size() >= 4);
        auto kinds = classify_vertices(d);
        auto convex = std::count(kinds.begin(), kinds.end(), VertexKind::Convex);
        auto reflex = std::count(kinds.begin(), kinds.end(), VertexKind::Reflex);
        CHECK(convex - reflex == 4);
    }
    CHECK_THROWS_AS(sharpness(1), UnsupportedParameter);
    CHECK_THROWS_AS(sharpness(14), UnsupportedParameter);
}

TEST_CASE("random_domain returns a rectangle for the minimum target") {
    for (uint64_t seed : {1ULL, 99ULL}) {
        auto d = random_domain(4, seed);
        CHECK(d.size() == 4);
    }
}

TEST_CASE("random_domain hits the target window and validates") {
    for (int target : {8, 14, 20, 26, 30}) {
        for (uint64_t seed = 1; seed <= 20; ++seed) {
            auto d = random_domain(target, seed);
            CAPTURE(target);
            CAPTURE(seed);
            CHECK(d.size() >= static_cast<size_t>(target) - 4);
            CHECK(d.size() <= static_cast<size_t>(target) + 4);
        }
    }
}

TEST_CASE("random_domain is reproducible") {
    auto a = random_domain(20, 7);
    auto b = random_domain(20, 7);
    CHECK(a.vertices() == b.vertices());
    auto c = random_domain(20, 8);
    CHECK(a.vertices() != c.vertices());
}

TEST_CASE("random_domain(20, 7) matches the frozen fixture") {
    CHECK(domain_to_json(random_domain(20, 7)) ==
          R"({"vertices":[[0,0],[10,0],[10,4],[9,4],[9,5],[10,5],[10,7],[9,7],[9,8],[10,8],)"
          R"([10,9],[9,9],[9,10],[0,10],[0,7],[1,7],[1,6],[0,6],[0,2],[1,2],[1,1],[0,1]]})");
}
