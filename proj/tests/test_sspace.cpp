#include <doctest.h>

#include <memory>
#include <set>

#include "segal/sspace.hpp"

using namespace segal;

namespace {

SSpacePtr mk(TruncSSpace x) {
    return std::make_shared<TruncSSpace>(std::move(x));
}

// Independent oracle for classification-diagram cell counts: functors
// [m] x [n] -> C whose vertical arrows land in the weak equivalences.
std::size_t grid_functor_count(const WidePair& pair, int m, int n) {
    auto im = interval_category(m);
    auto in = interval_category(n);
    auto grid = product(im, in);
    auto fs = enumerate_functors(grid.cat, pair.cat);
    std::size_t count = 0;
    for (auto& f : fs) {
        bool ok = true;
        for (MorId g = 0; g < grid.cat->num_morphisms() && ok; ++g) {
            auto [a, b] = grid.mor_pairs[g];
            if (im->is_identity(a) && !pair.weq[f.mor_map[g]]) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("standard F(k)") {
    auto f0 = standard_F(0, Window::rect(3, 2));
    f0.validate();
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 2; ++n) CHECK(f0.cells(m, n) == 1);

    auto f1 = standard_F(1, Window::rect(4, 2));
    f1.validate();
    for (int m = 0; m <= 4; ++m) CHECK(f1.cells(m, 0) == std::uint32_t(m + 2));

    // F(n) is the discrete nerve of [n]
    auto f2 = standard_F(2, Window::rect(3, 2));
    auto d2 = discrete_nerve(interval_category(2), Window::rect(3, 2));
    d2.validate();
    CHECK(sspace_iso(f2, d2).has_value());
}

TEST_CASE("staircase windows") {
    Window w;
    w.m = 3;
    w.n_at_level = {3, 2, 2, 1};
    auto f1 = standard_F(1, w);
    f1.validate();
    CHECK(f1.n_trunc(0) == 3);
    CHECK(f1.n_trunc(3) == 1);
    auto r = restrict_window(f1, Window::rect(2, 1));
    r.validate();
}

TEST_CASE("classification diagram cell counts") {
    auto i1 = interval_category(1);
    auto nc = classifying_diagram(i1, Window::rect(2, 2));
    nc.validate();
    CHECK(nc.cells(1, 0) == 3);  // functors [1] -> [1]

    auto e1 = iso_interval_category(1);
    auto ne = classifying_diagram(e1.cat, Window::rect(2, 2));
    ne.validate();
    for (int n = 0; n <= 2; ++n)
        CHECK(ne.cells(0, n) == (1u << (n + 1)));  // words of length n+1
    CHECK(ne.cells(1, 1) == 16);

    // cross-check against the grid description
    WidePair iso_pair = WidePair::with_isos(e1.cat);
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            CHECK(ne.cells(m, n) == grid_functor_count(iso_pair, m, n));

    WidePair ids = WidePair::with_identities(i1);
    auto dn = discrete_nerve(i1, Window::rect(2, 2));
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n)
            CHECK(dn.cells(m, n) == grid_functor_count(ids, m, n));
}

TEST_CASE("outer operators restrict level functors") {
    auto i2 = interval_category(2);
    auto nc = classifying_diagram(i2, Window::rect(3, 2));
    REQUIRE(nc.tag);
    const auto& chains2 = nc.tag->level_functor_chains[2];
    for (std::uint32_t f = 0; f < nc.cells(2, 0); ++f) {
        // alpha^0: [1] -> [2] picks the first chain arrow
        std::uint32_t r = nc.outer_apply({0, 1}, 2, 0, f);
        const auto& rc = nc.tag->level_functor_chains[1][r];
        CHECK(rc[0] == chains2[f][0]);
        // [1] -> [2] hitting 0, 2 composes the chain
        std::uint32_t r2 = nc.outer_apply({0, 2}, 2, 0, f);
        const auto& rc2 = nc.tag->level_functor_chains[1][r2];
        CHECK(rc2[0] == i2->compose(chains2[f][1], chains2[f][0]));
    }
}

TEST_CASE("products of simplicial spaces") {
    auto f1 = standard_F(1, Window::rect(3, 2));
    auto f0 = standard_F(0, Window::rect(3, 2));
    auto p = sspace_product(f1, f0);
    p.validate();
    CHECK(sspace_iso(p, f1).has_value());

    auto sq = sspace_product(f1, f1);
    sq.validate();
    CHECK(sq.cells(1, 0) == 9);

    // N(C x D) and N(C) x N(D)
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    auto prod = product(i1, e1.cat);
    auto lhs = classifying_diagram(prod.cat, Window::rect(2, 1));
    auto rhs = sspace_product(classifying_diagram(i1, Window::rect(2, 1)),
                              classifying_diagram(e1.cat, Window::rect(2, 1)));
    CHECK(sspace_iso(lhs, rhs).has_value());
}

TEST_CASE("subobjects of F(n)") {
    auto f2p = mk(standard_F(2, Window::rect(3, 1)));
    auto b = boundary_F(2, f2p);
    CHECK(b.is_closed());
    auto mat = materialize(b);
    mat.space->validate();
    int nondeg = 0;
    for (std::uint32_t c = 0; c < mat.space->cells(1, 0); ++c)
        if (!mat.space->bidegree_degenerate(1, 0, c)) ++nondeg;
    CHECK(nondeg == 3);
    // the identity cell is not in the boundary
    CHECK(b.count(2, 0) < f2p->cells(2, 0));

    auto g2 = standard_G(2, f2p);
    CHECK(g2.is_closed());
    auto a0 = alpha_image(0, 1, 2, f2p);
    auto a1 = alpha_image(1, 1, 2, f2p);
    CHECK(a0.unite(a1) == g2);
    CHECK(g2.count(0, 0) == 3);
    CHECK(g2.unite(g2) == g2);

    // intersections of alpha images are alpha images
    auto f3p = mk(standard_F(3, Window::rect(3, 1)));
    auto x = alpha_image(0, 2, 3, f3p).intersect(alpha_image(1, 2, 3, f3p));
    CHECK(x == alpha_image(1, 1, 3, f3p));

    // the identity cell generates everything
    std::uint32_t iota = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < f2p->cells(2, 0); ++c)
        if (f2p->level[2].names[0][c] == "0.1.2") {
            iota = c;
            found = true;
        }
    REQUIRE(found);
    auto gen = generated_by(f2p, {{2, 0, iota}});
    CHECK(gen == SubObject::whole(f2p));
}

TEST_CASE("mapping spaces represent levels") {
    auto e1 = iso_interval_category(1);
    auto ne = mk(classifying_diagram(e1.cat, Window::rect(3, 2)));
    for (int k = 0; k <= 2; ++k) {
        auto fk = mk(standard_F(k, Window::rect(3, 2)));
        auto ms = mapping_space(fk, ne, 2);
        CHECK(ms.exact);
        for (int n = 0; n <= 2; ++n) CHECK(ms.space.size[n] == ne->cells(k, n));
        ms.space.validate();
    }
    // Map(F(0), N C) is the nerve of iso C
    auto f0 = mk(standard_F(0, Window::rect(3, 2)));
    auto ms0 = mapping_space(f0, ne, 2);
    auto iso = iso_subgroupoid(*e1.cat);
    auto target = nerve(iso.cat, 2);
    CHECK(sset_iso(ms0.space, target).has_value());
}

TEST_CASE("mapping space of the spine") {
    // Map(G(2), W) is the fiber product W_1 x_{W_0} W_1
    auto e1 = iso_interval_category(1);
    auto ne = mk(classifying_diagram(e1.cat, Window::rect(2, 1)));
    auto f2 = mk(standard_F(2, Window::rect(2, 1)));
    auto g2 = materialize(standard_G(2, f2));
    auto ms = mapping_space(g2.space, ne, 1);
    for (int n = 0; n <= 1; ++n) {
        std::size_t pairs = 0;
        for (std::uint32_t a = 0; a < ne->cells(1, n); ++a)
            for (std::uint32_t b = 0; b < ne->cells(1, n); ++b)
                if (ne->outer(1, 0, n, a) == ne->outer(1, 1, n, b)) ++pairs;
        CHECK(ms.space.size[n] == pairs);
    }
}

TEST_CASE("internal hom") {
    auto i1 = interval_category(1);
    auto nc = mk(classifying_diagram(i1, Window::rect(2, 1)));
    auto f0 = mk(standard_F(0, Window::rect(2, 1)));
    auto h = internal_hom(nc, f0, Window::rect(2, 1));
    h.space.validate();
    CHECK(sspace_iso(h.space, *nc).has_value());
}

TEST_CASE("diagonal") {
    auto i1 = interval_category(1);
    auto dn = discrete_nerve(i1, Window::rect(3, 3));
    auto diag = diag_space(dn);
    diag.validate();
    auto target = nerve(i1, 3);
    CHECK(sset_iso(diag, target).has_value());

    auto f0 = standard_F(0, Window::rect(2, 2));
    auto d0 = diag_space(f0);
    for (int n = 0; n <= 2; ++n) CHECK(d0.size[n] == 1);
}

TEST_CASE("classification of functor pairs against both hom descriptions") {
    // N(D^C, we(D^C)) is isomorphic to N(D, W)^{N C} and to
    // N(D, W)^{discnerve C}, with (D, W) = (I[1], everything), C = [1]
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    Window w = Window::rect(2, 1);

    auto dc = functor_category(i1, e1.cat);
    WidePair we_pair = WidePair::with_all(dc.cat);
    auto lhs = classification_diagram(we_pair, w);

    auto ndw = mk(classification_diagram(WidePair::with_all(e1.cat), w));
    auto nc = mk(classifying_diagram(i1, w));
    auto dn = mk(discrete_nerve(i1, w));

    auto via_classifying = internal_hom(ndw, nc, w);
    CHECK(via_classifying.exact);
    CHECK(sspace_iso(lhs, via_classifying.space).has_value());

    auto via_discnerve = internal_hom(ndw, dn, w);
    CHECK(via_discnerve.exact);
    CHECK(sspace_iso(lhs, via_discnerve.space).has_value());
}

TEST_CASE("classifying diagram of a functor category by a contractible "
          "groupoid") {
    // N(C^{I[1]}) is the exponent of N C by the constant simplicial space on
    // the 1-simplex
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    Window w = Window::rect(2, 2);
    for (CatPtr c : {i1, e1.cat}) {
        auto cI = functor_category(e1.cat, c);
        auto lhs = classifying_diagram(cI.cat, w);
        auto ncp = mk(classifying_diagram(c, w));
        auto rhs = internal_hom_constant(ncp, delta_sset(1, 2), w);
        CHECK(sspace_iso(lhs, rhs.space).has_value());
    }
}

TEST_CASE("classifying diagram of an interval product") {
    // N([m] x C) is F(m) x N C
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    Window w = Window::rect(2, 1);
    for (CatPtr c : {i1, e1.cat}) {
        auto pc = product(interval_category(1), c);
        auto lhs = classifying_diagram(pc.cat, w);
        auto rhs = sspace_product(standard_F(1, w), classifying_diagram(c, w));
        CHECK(sspace_iso(lhs, rhs).has_value());
    }
}

TEST_CASE("maps between classifying diagrams are functors") {
    // full embedding at the level of diagram maps
    auto i1 = interval_category(1);
    auto i2 = interval_category(2);
    auto e1 = iso_interval_category(1);
    Window w = Window::rect(3, 2);
    auto check_pair = [&](CatPtr c, CatPtr d) {
        auto nc = mk(classifying_diagram(c, w));
        auto nd = mk(classifying_diagram(d, w));
        auto maps = sspace_maps(nc, nd);
        CHECK(maps.exact);
        CHECK(maps.complete);
        CHECK(maps.maps.size() == enumerate_functors(c, d).size());
    };
    check_pair(i1, i1);
    check_pair(i1, i2);
    check_pair(e1.cat, i1);
    check_pair(i1, e1.cat);
}

TEST_CASE("exponential law for simplicial spaces") {
    // maps X x Y -> Z correspond to maps X -> Z^Y
    Window w = Window::rect(2, 1);
    auto x = mk(standard_F(1, w));
    auto y = mk(standard_F(1, w));
    auto i1 = interval_category(1);
    auto z = mk(classifying_diagram(i1, w));
    auto lhs = sspace_maps(mk(sspace_product(*x, *y)), z);
    auto zy = internal_hom(z, y, w);
    auto rhs = sspace_maps(x, mk(std::move(zy.space)));
    CHECK(lhs.complete);
    CHECK(rhs.complete);
    CHECK(lhs.maps.size() == rhs.maps.size());
}

TEST_CASE("nerve exponential through mapping sets") {
    // cells of nerve(D^C) at level n are the maps nerve(C) x Delta[n] ->
    // nerve(D)
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    auto dc = functor_category(i1, e1.cat);
    auto lhs = nerve(dc.cat, 2);
    auto nc = nerve(i1, 2);
    auto nd = std::make_shared<TruncSSet>(nerve(e1.cat, 2));
    for (int n = 0; n <= 2; ++n) {
        auto prod = std::make_shared<TruncSSet>(
            sset_product(nc, delta_sset(n, 2)));
        auto maps = sset_maps(prod, nd);
        CHECK(maps.exact);
        CHECK(maps.maps.size() == lhs.size[n]);
    }
}

TEST_CASE("degeneracy squares of classifying diagrams are exact pullbacks") {
    // the squares pairing s_0/s_1 with the outer faces d_2/d_0 are pullbacks
    // of truncated simplicial sets, levelwise
    auto i2 = interval_category(2);
    auto e1 = iso_interval_category(1);
    for (CatPtr c : {i2, e1.cat}) {
        auto w = classifying_diagram(c, Window::rect(2, 1));
        for (int n = 0; n <= 1; ++n) {
            // {(b, a) in W_2 x W_0 : d_2 b = s_0 a} against W_1 via
            // (s_0, d_1), and the mirror square
            std::set<std::pair<std::uint32_t, std::uint32_t>> fiber1, image1;
            for (std::uint32_t b = 0; b < w.cells(2, n); ++b)
                for (std::uint32_t a = 0; a < w.cells(0, n); ++a)
                    if (w.outer_face[2][2][n][b] == w.outer_degen[0][0][n][a])
                        fiber1.insert({b, a});
            for (std::uint32_t cc = 0; cc < w.cells(1, n); ++cc)
                image1.insert({w.outer_degen[1][0][n][cc],
                               w.outer_face[1][1][n][cc]});
            CHECK(fiber1 == image1);

            std::set<std::pair<std::uint32_t, std::uint32_t>> fiber2, image2;
            for (std::uint32_t b = 0; b < w.cells(2, n); ++b)
                for (std::uint32_t a = 0; a < w.cells(0, n); ++a)
                    if (w.outer_face[2][0][n][b] == w.outer_degen[0][0][n][a])
                        fiber2.insert({b, a});
            for (std::uint32_t cc = 0; cc < w.cells(1, n); ++cc)
                image2.insert({w.outer_degen[1][1][n][cc],
                               w.outer_face[1][0][n][cc]});
            CHECK(fiber2 == image2);
        }
    }
}

TEST_CASE("mapping space of E into a classifying diagram") {
    // Map(E, N C) is the nerve of the maximal subgroupoid of C^{I[1]}
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    Window w = Window::rect(3, 2);
    auto nc = mk(classifying_diagram(i1, w));
    auto espace = mk(discrete_nerve(e1.cat, w));
    auto ms = mapping_space(espace, nc, 2);
    CHECK(ms.exact);
    auto ci = functor_category(e1.cat, i1);
    auto target = nerve(iso_subgroupoid(*ci.cat).cat, 2);
    CHECK(sset_iso(ms.space, target).has_value());
}
