#pragma once
/**
 * Exponential-time exact solvers for small instances. These are the ground
 * truth that every property test and the acceptance suite compare against;
 * they never share code with the production algorithms they check.
 */

#include "rgallery/pixelation.hpp"

namespace rgallery {

struct OracleResult {
    int optimum = 0;
    std::vector<int> witness;  // indices of chosen candidates
    long long explored = 0;    // search nodes, for test budgeting
};

namespace detail {

class DynBitset {
  public:
    explicit DynBitset(int bits = 0) : bits_(bits), words_(static_cast<size_t>((bits + 63) / 64), 0) {}

    void set(int i) { words_[static_cast<size_t>(i >> 6)] |= 1ULL << (i & 63); }
    bool test(int i) const { return (words_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
    void operator|=(const DynBitset& o) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    }
    void and_not(const DynBitset& o) {
        for (size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    }
    bool any() const {
        for (unsigned long long w : words_) if (w) return true;
        return false;
    }
    int count() const {
        int c = 0;
        for (unsigned long long w : words_) c += __builtin_popcountll(w);
        return c;
    }
    int first_set() const {
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w * 64) + __builtin_ctzll(words_[w]);
        return -1;
    }
    bool intersects(const DynBitset& o) const {
        for (size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }
    int size() const { return bits_; }

  private:
    int bits_;
    std::vector<unsigned long long> words_;
};

/// Branch-and-bound minimum set cover with a greedy incumbent and a
/// disjoint-element packing lower bound. Deterministic exploration order.
class SetCoverSolver {
  public:
    SetCoverSolver(int universe, std::vector<DynBitset> covers)
        : universe_(universe), covers_(std::move(covers)) {}

    OracleResult solve() {
        const int m = static_cast<int>(covers_.size());
        DynBitset all(universe_);
        for (int e = 0; e < universe_; ++e) all.set(e);

        // Elements covered by each candidate must cover the universe.
        DynBitset reach(universe_);
        for (const auto& c : covers_) reach |= c;
        if (reach.count() != universe_) throw StructureViolation("set cover instance is infeasible");

        // Greedy incumbent.
        {
            DynBitset uncovered = all;
            std::vector<int> chosen;
            while (uncovered.any()) {
                int best = -1, best_gain = -1;
                for (int c = 0; c < m; ++c) {
                    int gc = intersect_count(covers_[static_cast<size_t>(c)], uncovered);
                    if (gc > best_gain) { best_gain = gc; best = c; }
                }
                chosen.push_back(best);
                uncovered.and_not(covers_[static_cast<size_t>(best)]);
            }
            incumbent_ = chosen;
        }

        std::vector<int> chosen;
        dfs(all, chosen);
        OracleResult r;
        r.optimum = static_cast<int>(incumbent_.size());
        r.witness = incumbent_;
        std::sort(r.witness.begin(), r.witness.end());
        r.explored = explored_;
        return r;
    }

  private:
    static int intersect_count(const DynBitset& a, const DynBitset& b) {
        DynBitset t = a;
        int total = t.count();
        t.and_not(b);
        return total - t.count();
    }

    int lower_bound(const DynBitset& uncovered) const {
        DynBitset excluded(universe_);
        int packed = 0;
        for (int e = 0; e < universe_; ++e) {
            if (!uncovered.test(e) || excluded.test(e)) continue;
            ++packed;
            for (size_t c = 0; c < covers_.size(); ++c)
                if (covers_[c].test(e)) excluded |= covers_[c];
        }
        return packed;
    }

    void dfs(const DynBitset& uncovered, std::vector<int>& chosen) {
        ++explored_;
        if (!uncovered.any()) {
            if (chosen.size() < incumbent_.size()) incumbent_ = chosen;
            return;
        }
        if (chosen.size() + static_cast<size_t>(lower_bound(uncovered)) >= incumbent_.size()) return;

        // Branch on the uncovered element with the fewest covering candidates.
        int pivot = -1, pivot_count = -1;
        for (int e = 0; e < universe_; ++e) {
            if (!uncovered.test(e)) continue;
            int cnt = 0;
            for (const auto& c : covers_) cnt += c.test(e);
            if (pivot < 0 || cnt < pivot_count) { pivot = e; pivot_count = cnt; }
        }
        for (size_t c = 0; c < covers_.size(); ++c) {
            if (!covers_[c].test(pivot)) continue;
            DynBitset next = uncovered;
            next.and_not(covers_[c]);
            chosen.push_back(static_cast<int>(c));
            dfs(next, chosen);
            chosen.pop_back();
        }
    }

    int universe_;
    std::vector<DynBitset> covers_;
    std::vector<int> incumbent_;
    long long explored_ = 0;
};

}  // namespace detail

/// Minimum set of `guard_orientation` slices dominating the opposite class.
inline OracleResult exact_mobile(const PixelationGraph& g, Orientation guard_orientation,
                                 int cap = 24) {
    const int guards =
        guard_orientation == Orientation::Horizontal ? g.hslices().size() : g.vslices().size();
    const int targets =
        guard_orientation == Orientation::Horizontal ? g.vslices().size() : g.hslices().size();
    if (guards > cap) throw TooLarge("exact_mobile: too many candidate slices");
    std::vector<detail::DynBitset> covers(static_cast<size_t>(guards), detail::DynBitset(targets));
    for (int c = 0; c < guards; ++c) {
        auto visit = [&](int t) { covers[static_cast<size_t>(c)].set(t); };
        if (guard_orientation == Orientation::Horizontal) g.for_each_v_neighbor(c, visit);
        else g.for_each_h_neighbor(c, visit);
    }
    return detail::SetCoverSolver(targets, std::move(covers)).solve();
}

/// Minimum set of pixels (edges of G) from which every edge is r-visible.
/// The witness indexes into materialize_edges(g).
inline OracleResult exact_point(const PixelationGraph& g, int cap = 32) {
    if (g.edge_count() > cap) throw TooLarge("exact_point: too many pixel edges");
    std::vector<PixelEdge> edges = materialize_edges(g);
    const int m = static_cast<int>(edges.size());
    std::vector<detail::DynBitset> covers(static_cast<size_t>(m), detail::DynBitset(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (edges_r_visible(g, edges[static_cast<size_t>(a)], edges[static_cast<size_t>(b)]))
                covers[static_cast<size_t>(a)].set(b);
    return detail::SetCoverSolver(m, std::move(covers)).solve();
}

/// Minimum mixed mobile guard cover. A guard on a slice covers exactly the
/// union of the opposite slices it crosses (and thereby itself), so the
/// domain is covered iff every pixel has one of its two slices fully
/// covered. Candidate ids: h slices, then v slices.
inline OracleResult exact_msc(const PixelationGraph& g, int cap = 24) {
    const int nh = g.hslices().size();
    const int nv = g.vslices().size();
    if (nh + nv > cap) throw TooLarge("exact_msc: too many slices");
    std::vector<PixelEdge> pixels = materialize_edges(g);
    const int m = static_cast<int>(pixels.size());
    std::vector<detail::DynBitset> covers(static_cast<size_t>(nh + nv), detail::DynBitset(m));
    for (int i = 0; i < m; ++i) {
        // A guard on slice s covers pixel (h, v) iff s crosses h or v, or is
        // one of them.
        const PixelEdge& e = pixels[static_cast<size_t>(i)];
        covers[static_cast<size_t>(e.h)].set(i);
        covers[static_cast<size_t>(nh + e.v)].set(i);
        g.for_each_v_neighbor(e.h, [&](int v2) { covers[static_cast<size_t>(nh + v2)].set(i); });
        g.for_each_h_neighbor(e.v, [&](int h2) { covers[static_cast<size_t>(h2)].set(i); });
    }
    return detail::SetCoverSolver(m, std::move(covers)).solve();
}

}  // namespace rgallery
