#include <doctest.h>

#include <memory>

#include "segal/sset.hpp"

using namespace segal;

namespace {

std::shared_ptr<TruncSSet> mk(TruncSSet x) {
    return std::make_shared<TruncSSet>(std::move(x));
}

}  // namespace

TEST_CASE("standard simplices") {
    for (int n = 0; n <= 3; ++n) {
        auto d = delta_sset(n, 4);
        d.validate();
    }
    auto d2 = delta_sset(2, 4);
    CHECK(d2.size[0] == 3);
    CHECK(d2.size[1] == 6);
    CHECK(d2.size[2] == 10);

    auto b1 = boundary_delta_sset(1, 3);
    b1.validate();
    CHECK(b1.size[0] == 2);
    CHECK(b1.is_discrete());

    auto b2 = boundary_delta_sset(2, 3);
    b2.validate();
    int nondeg1 = 0;
    for (std::uint32_t c = 0; c < b2.size[1]; ++c)
        if (!b2.is_degenerate(1, c)) ++nondeg1;
    CHECK(nondeg1 == 3);

    auto h = horn_sset(2, 1, 3);
    h.validate();
    CHECK(h.size[0] == 3);
    int horn_edges = 0;
    for (std::uint32_t c = 0; c < h.size[1]; ++c)
        if (!h.is_degenerate(1, c)) ++horn_edges;
    CHECK(horn_edges == 2);
}

TEST_CASE("nerve cell counts") {
    auto i2 = interval_category(2);
    auto n2 = nerve(i2, 4);
    n2.validate();
    auto d2 = delta_sset(2, 4);
    for (int n = 0; n <= 4; ++n) CHECK(n2.size[n] == d2.size[n]);
    CHECK(sset_iso(n2, d2).has_value());

    auto pt = std::make_shared<FinCat>(terminal_category());
    auto npt = nerve(pt, 4);
    for (int n = 0; n <= 4; ++n) CHECK(npt.size[n] == 1);

    auto e1 = iso_interval_category(1);
    auto ne = nerve(e1.cat, 4);
    ne.validate();
    for (int n = 0; n <= 4; ++n) CHECK(ne.size[n] == (1u << (n + 1)));
}

TEST_CASE("operator factorization on nerve chains") {
    auto i2 = interval_category(2);
    auto n2 = nerve(i2, 4);
    std::uint32_t top = 0;
    bool found = false;
    for (std::uint32_t c = 0; c < n2.size[2] && !found; ++c)
        if (!n2.is_degenerate(2, c)) {
            top = c;
            found = true;
        }
    REQUIRE(found);
    // vertex picks of the nondegenerate triangle 0 -> 1 -> 2
    CHECK(n2.apply(2, {0}, top) == 0);
    CHECK(n2.apply(2, {2}, top) == 2);
    // the long edge is the composite 0 -> 2
    std::uint32_t e = n2.apply(2, {0, 2}, top);
    CHECK(n2.face[1][1][e] == 0);
    CHECK(n2.face[1][0][e] == 2);
    // a degenerate stretch lands above the original cell
    std::uint32_t s = n2.apply(2, {0, 0, 1, 2}, top);
    CHECK(n2.is_degenerate(3, s));
    CHECK(n2.face[3][0][s] == top);
}

TEST_CASE("products of simplicial sets") {
    auto d1 = delta_sset(1, 3);
    auto d0 = delta_sset(0, 3);
    auto p = sset_product(d1, d0);
    p.validate();
    CHECK(sset_iso(p, d1).has_value());

    auto sq = sset_product(d1, d1);
    sq.validate();
    CHECK(sq.size[0] == 4);
    CHECK(sq.size[1] == 9);
    int nondeg2 = 0;
    for (std::uint32_t c = 0; c < sq.size[2]; ++c)
        if (!sq.is_degenerate(2, c)) ++nondeg2;
    CHECK(nondeg2 == 2);

    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    auto prod = product(i1, e1.cat);
    auto lhs = nerve(prod.cat, 3);
    auto rhs = sset_product(nerve(i1, 3), nerve(e1.cat, 3));
    CHECK(sset_iso(lhs, rhs).has_value());
}

TEST_CASE("simplicial maps") {
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);
    auto nc = mk(nerve(i1, 3));
    auto pt = mk(delta_sset(0, 3));
    auto edge = mk(delta_sset(1, 3));

    auto verts = sset_maps(pt, nc);
    CHECK(verts.exact);
    CHECK(verts.maps.size() == 2);  // objects of [1]

    auto mors = sset_maps(edge, nc);
    CHECK(mors.exact);
    CHECK(mors.maps.size() == 3);  // morphisms of [1]

    // maps from nerve(I[1]) collapse the isomorphism: only the two constants
    auto ne = mk(nerve(e1.cat, 3));
    auto collapse = sset_maps(ne, nc);
    CHECK(collapse.exact);
    CHECK(collapse.maps.size() == 2);

    for (auto& f : mors.maps) f.validate();
}

TEST_CASE("pi0") {
    auto d3 = delta_sset(3, 3);
    CHECK(pi0(d3).count == 1);
    auto b1 = boundary_delta_sset(1, 2);
    CHECK(pi0(b1).count == 2);
    auto e1 = iso_interval_category(1);
    CHECK(pi0(nerve(e1.cat, 2)).count == 1);
}

TEST_CASE("groupoid-nerve comparison") {
    auto e1 = iso_interval_category(1);
    auto g = iso_subgroupoid(*e1.cat);
    auto ng = nerve(g.cat, 3);
    auto pt = nerve(interval_category(0), 3);
    CHECK(nerve_groupoid_equiv(ng, pt).is_yes());

    FinCat d2;
    for (ObjId i = 0; i < 2; ++i) {
        d2.obj_names.push_back("a" + std::to_string(i));
        d2.mor_src.push_back(i);
        d2.mor_tgt.push_back(i);
        d2.identity.push_back(i);
        d2.mor_names.push_back("id");
    }
    d2.finalize();
    auto nd2 = nerve(std::make_shared<FinCat>(d2), 3);
    CHECK(nerve_groupoid_equiv(nd2, pt).is_no());
    CHECK(nerve_groupoid_equiv(nd2, nd2).is_yes());

    auto plain = delta_sset(1, 3);
    CHECK(nerve_groupoid_equiv(plain, pt).is_unknown());
}

TEST_CASE("category reconstruction from a nerve") {
    auto e1 = iso_interval_category(1);
    auto ne = nerve(e1.cat, 3);
    auto cat = category_from_nerve(ne);
    REQUIRE(cat.has_value());
    (*cat)->validate();
    CHECK(find_cat_iso(*cat, e1.cat).has_value());

    auto b2 = boundary_delta_sset(2, 3);
    CHECK(!category_from_nerve(b2).has_value());
}

TEST_CASE("horn filling") {
    auto e1 = iso_interval_category(1);
    auto ne = mk(nerve(e1.cat, 3));
    CHECK(fills_horns(ne, 2).is_yes());  // groupoid nerves fill horns

    auto i1 = interval_category(1);
    auto nc = mk(nerve(i1, 3));
    CHECK(fills_horns(nc, 2).is_no());  // outer horns fail for posets
}

TEST_CASE("component subcomplex") {
    FinCat d2;
    for (ObjId i = 0; i < 2; ++i) {
        d2.obj_names.push_back("a" + std::to_string(i));
        d2.mor_src.push_back(i);
        d2.mor_tgt.push_back(i);
        d2.identity.push_back(i);
        d2.mor_names.push_back("id");
    }
    d2.finalize();
    auto nd = nerve(std::make_shared<FinCat>(d2), 2);
    auto p = pi0(nd);
    REQUIRE(p.count == 2);
    std::vector<char> keep(p.count, 0);
    keep[p.component[0]] = 1;
    auto sub = component_subcomplex(nd, keep, p);
    sub.validate();
    CHECK(sub.size[0] == 1);
    CHECK(sub.size[1] == 1);
}
