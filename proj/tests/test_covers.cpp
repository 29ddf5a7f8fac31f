#include <doctest.h>

#include <functional>
#include <memory>
#include <set>

#include "segal/covers.hpp"

using namespace segal;

namespace {

SSpacePtr mkF(int n) {
    return std::make_shared<TruncSSpace>(standard_F(n, Window::rect(n, 0)));
}

// Brute-force oracle: every subobject of F(n), enumerated as an operator-
// closed union of cell closures, filtered by the cover predicate.
std::set<std::vector<std::vector<std::vector<char>>>> cover_oracle(
    int n, SSpacePtr fn) {
    // collect the nondegenerate cells (injective tuples)
    std::vector<std::pair<int, std::uint32_t>> gens;
    for (int m = 0; m <= fn->m_trunc; ++m)
        for (std::uint32_t c = 0; c < fn->cells(m, 0); ++c)
            if (!fn->bidegree_degenerate(m, 0, c)) gens.emplace_back(m, c);
    std::set<std::vector<std::vector<std::vector<char>>>> covers;
    const std::size_t subsets = std::size_t(1) << gens.size();
    for (std::size_t bits = 0; bits < subsets; ++bits) {
        std::vector<std::tuple<int, int, std::uint32_t>> seed;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (bits & (std::size_t(1) << j))
                seed.emplace_back(gens[j].first, 0, gens[j].second);
        SubObject s = generated_by(fn, seed);
        if (is_cover(s, n).is_yes()) covers.insert(s.mask);
    }
    return covers;
}

}  // namespace

TEST_CASE("cover predicate") {
    auto f2 = mkF(2);
    auto g2 = standard_G(2, f2);
    CHECK(is_cover(g2, 2).is_yes());
    CHECK(is_cover(SubObject::whole(f2), 2).is_yes());
    // the boundary is not a cover
    CHECK(is_cover(boundary_F(2, f2), 2).is_no());

    auto f3 = mkF(3);
    CHECK(is_cover(standard_G(3, f3), 3).is_yes());
    // a union missing a vertex is not a cover
    auto partial = alpha_image(0, 1, 3, f3).unite(alpha_image(1, 1, 3, f3));
    CHECK(is_cover(partial, 3).is_no());
}

TEST_CASE("cover enumeration against the subobject oracle") {
    {
        auto f1 = mkF(1);
        auto covers = enumerate_covers(1, f1);
        CHECK(covers.size() == 1);
        CHECK(cover_oracle(1, f1).size() == 1);
    }
    {
        auto f2 = mkF(2);
        auto covers = enumerate_covers(2, f2);
        CHECK(covers.size() == 2);
        auto oracle = cover_oracle(2, f2);
        CHECK(oracle.size() == 2);
        for (auto& c : covers) {
            CHECK(oracle.count(c.realized.mask) == 1);
            CHECK(is_cover(c.realized, 2).is_yes());
        }
    }
    {
        auto f3 = mkF(3);
        auto covers = enumerate_covers(3, f3);
        auto oracle = cover_oracle(3, f3);
        CHECK(covers.size() == oracle.size());
        CHECK(covers.size() == 5);
        for (auto& c : covers) CHECK(oracle.count(c.realized.mask) == 1);
        // the smallest cover is the spine, contained in every other
        auto g3 = standard_G(3, f3);
        CHECK(covers.front().realized == g3);
        for (auto& c : covers) CHECK(c.realized.contains(g3));
    }
}

TEST_CASE("intersections of alpha images stay in the family") {
    for (int n = 2; n <= 5; ++n) {
        auto fn = mkF(n);
        std::vector<std::tuple<int, int, SubObject>> images;
        for (int k = 1; k <= n; ++k)
            for (int i = 0; i + k <= n; ++i)
                images.emplace_back(i, k, alpha_image(i, k, n, fn));
        for (auto& [i1, k1, a] : images)
            for (auto& [i2, k2, b] : images) {
                auto meet = a.intersect(b);
                if (meet.cell_count() == 0) continue;
                // either empty or another alpha image (possibly a vertex)
                bool found = false;
                for (int k3 = 0; k3 <= n && !found; ++k3)
                    for (int i3 = 0; i3 + k3 <= n && !found; ++i3)
                        if (meet == alpha_image(i3, k3, n, fn)) found = true;
                CHECK(found);
            }
    }
}

TEST_CASE("prism decompositions") {
    CHECK(prism_decomposition_check(0).is_yes());
    CHECK(prism_decomposition_check(1).is_yes());
    CHECK(prism_decomposition_check(2).is_yes());
    CHECK(prism_decomposition_check(3).is_yes());
}

TEST_CASE("prism pieces meet the spine product in covers") {
    // each gamma-piece pulled back along its parameterization covers F(n+1)
    for (int n = 1; n <= 2; ++n) {
        Window w = Window::rect(n + 1, 0);
        auto f1 = standard_F(1, w);
        auto fn = standard_F(n, w);
        auto prism = std::make_shared<TruncSSpace>(sspace_product(f1, fn));
        auto fn1 = mkF(n + 1);
        auto g_spine = standard_G(n, std::make_shared<TruncSSpace>(fn));
        // spine product subobject F(1) x G(n)
        SubObject fg = SubObject::empty(prism);
        for (int m = 0; m <= n + 1; ++m) {
            std::uint32_t rs = std::uint32_t(monotone_maps(m, n).size());
            for (std::uint32_t a = 0; a < monotone_maps(m, 1).size(); ++a)
                for (std::uint32_t b = 0; b < rs; ++b)
                    if (g_spine.mask[m][0][b]) fg.mask[m][0][a * rs + b] = 1;
        }
        CHECK(fg.is_closed());
        for (int i = 0; i <= n; ++i) {
            // reconstruct the gamma preimage of (gamma_i ^ -1)(piece ∩ F(1)xG(n))
            SubObject pulled = SubObject::empty(fn1);
            for (int m = 0; m <= n + 1; ++m) {
                auto tuples = monotone_maps(m, n + 1);
                for (std::uint32_t c = 0; c < tuples.size(); ++c) {
                    // gamma^i of the tuple
                    std::vector<int> left(m + 1), right(m + 1);
                    for (int j = 0; j <= m; ++j) {
                        if (tuples[c][j] <= i) {
                            left[j] = 0;
                            right[j] = tuples[c][j];
                        } else {
                            left[j] = 1;
                            right[j] = tuples[c][j] - 1;
                        }
                    }
                    std::uint32_t cell =
                        monotone_index(left, 1) *
                            std::uint32_t(monotone_maps(m, n).size()) +
                        monotone_index(right, n);
                    if (fg.mask[m][0][cell]) pulled.mask[m][0][c] = 1;
                }
            }
            CHECK(is_cover(pulled, n + 1).is_yes());
        }
    }
}

TEST_CASE("filtration of the walking isomorphism nerve") {
    auto filt = e_filtration(3, 4);
    CHECK(filt.counts.is_yes());
    REQUIRE(filt.stage.size() == 3);
    // E^(1) is a copy of F(1)
    auto mat = materialize(filt.stage[0]);
    auto f1 = standard_F(1, Window::rect(4, 0));
    CHECK(sspace_iso(*mat.space, f1).has_value());
    // stages are increasing and exhaust the window
    CHECK(filt.stage[1].contains(filt.stage[0]));
    CHECK(filt.stage[2].contains(filt.stage[1]));
    // the stages exhaust every level below the window top; at level M the
    // opposite alternating word only enters with the next stage
    auto top = e_filtration(4, 4);
    const SubObject& last = top.stage[3];
    for (int m = 0; m <= 3; ++m)
        CHECK(last.count(m, 0) == top.e->cells(m, 0));
    CHECK(last.count(4, 0) == top.e->cells(4, 0) - 1);
}

TEST_CASE("filtration pushouts") {
    CHECK(filtration_pushout_check(2, 4).is_yes());
    CHECK(filtration_pushout_check(3, 4).is_yes());
}

TEST_CASE("gluing of the horn-like subobjects") {
    CHECK(hc_gluing_check(2, 4).is_yes());
    CHECK(hc_gluing_check(3, 4).is_yes());
}
