#pragma once
// Shared test fixtures. Coordinates below are user units; the library
// doubles them on ingestion.

#include "rgallery/generators.hpp"
#include "rgallery/mobile_guards.hpp"
#include "rgallery/oracle.hpp"
#include "rgallery/pixelation.hpp"

namespace fixtures {

using namespace rgallery;

inline RectilinearDomain square() {
    return parse_domain(R"({"vertices":[[0,0],[2,0],[2,2],[0,2]]})");
}

inline RectilinearDomain l_domain() {
    return parse_domain(R"({"vertices":[[0,0],[4,0],[4,2],[2,2],[2,4],[0,4]]})");
}

// A 20-vertex staircase-like domain whose pixelation graph has 7 horizontal
// slices, 8 vertical slices and 25 edges.
inline RectilinearDomain staircase20() {
    return RectilinearDomain::from_vertices({{0, 0}, {0, 3}, {2, 3}, {2, 4}, {3, 4},
                                             {3, 5}, {4, 5}, {4, 4}, {8, 4}, {8, 2},
                                             {9, 2}, {9, 0}, {7, 0}, {7, 1}, {5, 1},
                                             {5, 0}, {2, 0}, {2, 2}, {1, 2}, {1, 0}});
}

/// Everything the solvers need, built from one domain.
struct Instance {
    RectilinearDomain domain;
    SliceSet hs, vs;
    RTree th, tv;
    SideLabels hlabels, vlabels;
    std::unique_ptr<PixelationGraph> graph;

    explicit Instance(RectilinearDomain d) : domain(std::move(d)) {
        hs = decompose(domain, Orientation::Horizontal);
        vs = decompose(domain, Orientation::Vertical);
        th = build_rtree(hs);
        tv = build_rtree(vs);
        hlabels = attach_labels(domain, hs);
        vlabels = attach_labels(domain, vs);
        graph = std::make_unique<PixelationGraph>(hs, vs, th, tv, hlabels, vlabels);
    }

    const PixelationGraph& g() const { return *graph; }
};

/// Brute-force crossing adjacency straight from the rectangles.
inline bool brute_edge(const Instance& in, int h, int v) {
    return in.hs.rect(h).crosses(in.vs.rect(v));
}

}  // namespace fixtures
