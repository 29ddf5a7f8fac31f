#include <doctest.h>

#include <algorithm>

#include "segal/fincat.hpp"

using namespace segal;

namespace {

FinCat idempotent_monoid() {
    FinCat idem;
    idem.obj_names = {"*"};
    idem.mor_names = {"1", "e"};
    idem.mor_src = {0, 0};
    idem.mor_tgt = {0, 0};
    idem.identity = {0};
    idem.set_compose(1, 1, 1);
    idem.finalize();
    idem.validate();
    return idem;
}

FinCat cyclic_group(int n) {
    FinCat g;
    g.obj_names = {"*"};
    g.identity = {0};
    for (int i = 0; i < n; ++i) {
        g.mor_src.push_back(0);
        g.mor_tgt.push_back(0);
        g.mor_names.push_back("g" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.set_compose(i, j, (i + j) % n);
    g.finalize();
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("terminal and interval categories") {
    auto t = terminal_category();
    t.validate();
    CHECK(t.num_objects() == 1);
    CHECK(t.num_morphisms() == 1);

    auto i0 = interval_category(0);
    i0->validate();
    CHECK(i0->num_objects() == 1);

    auto i1 = interval_category(1);
    i1->validate();
    CHECK(i1->num_objects() == 2);
    CHECK(i1->num_morphisms() == 3);

    // morphism count of [n] is the number of pairs i <= j
    auto i3 = interval_category(3);
    i3->validate();
    CHECK(i3->num_objects() == 4);
    CHECK(i3->num_morphisms() == 10);
}

TEST_CASE("iso interval categories") {
    auto e0 = iso_interval_category(0);
    e0.cat->validate();
    CHECK(e0.cat->num_morphisms() == 1);

    auto e1 = iso_interval_category(1);
    e1.cat->validate();
    e1.inclusion.validate();
    CHECK(e1.cat->num_objects() == 2);
    CHECK(e1.cat->num_morphisms() == 4);  // exactly four morphisms
    for (MorId f = 0; f < e1.cat->num_morphisms(); ++f)
        CHECK(e1.cat->is_iso(f));

    auto e3 = iso_interval_category(3);
    CHECK(e3.cat->num_morphisms() == 16);  // one per ordered pair
}

TEST_CASE("products") {
    auto i1 = interval_category(1);
    auto t = std::make_shared<FinCat>(terminal_category());
    auto p = product(i1, t);
    p.cat->validate();
    CHECK(find_cat_iso(p.cat, i1).has_value());

    auto sq = product(i1, i1);
    sq.cat->validate();
    sq.proj1.validate();
    sq.proj2.validate();
    CHECK(sq.cat->num_objects() == 4);
    CHECK(sq.cat->num_morphisms() == 9);

    auto e1 = iso_interval_category(1);
    auto i0 = interval_category(0);
    auto p2 = product(e1.cat, i0);
    CHECK(find_cat_iso(p2.cat, e1.cat).has_value());
}

TEST_CASE("functor categories") {
    auto i0 = interval_category(0);
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);

    // D^[0] is isomorphic to D
    auto d0 = functor_category(i0, i1);
    CHECK(find_cat_iso(d0.cat, i1).has_value());

    auto ii = functor_category(i1, i1);
    CHECK(ii.objects.size() == 3);

    // functors [1] -> I[1] correspond to words xx, xy, yx, yy
    auto ei = functor_category(i1, e1.cat);
    CHECK(ei.objects.size() == 4);
    CHECK(ei.morphisms.size() == 16);
}

TEST_CASE("we functor categories") {
    auto i0 = interval_category(0);
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);

    auto all = WidePair::with_all(e1.cat);
    auto we = we_functor_category(all, i1);
    CHECK(we.objects.size() == 4);
    CHECK(we.morphisms.size() == 16);  // every transformation is a weq
    we.pair.cat->validate();
    we.pair.validate();

    auto ids_only = WidePair::with_identities(i1);
    auto we2 = we_functor_category(ids_only, i0);
    CHECK(we2.objects.size() == 2);
    CHECK(we2.morphisms.size() == 2);

    auto isos = WidePair::with_isos(i1);
    auto we3 = we_functor_category(isos, i0);
    CHECK(find_cat_iso(we3.pair.cat, iso_subgroupoid(*i1).cat).has_value());
}

TEST_CASE("iso subgroupoid") {
    auto i2 = interval_category(2);
    auto g = iso_subgroupoid(*i2);
    g.cat->validate();
    CHECK(g.cat->num_morphisms() == 3);  // posets have no non-identity isos

    auto e1 = iso_interval_category(1);
    auto g2 = iso_subgroupoid(*e1.cat);
    CHECK(g2.cat->num_morphisms() == 4);

    auto idem = idempotent_monoid();
    auto g3 = iso_subgroupoid(idem);
    CHECK(g3.cat->num_morphisms() == 1);  // e has no inverse

    // idempotence of the construction
    auto g4 = iso_subgroupoid(*g3.cat);
    CHECK(g4.cat->num_morphisms() == g3.cat->num_morphisms());
}

TEST_CASE("equivalence decisions") {
    auto i0 = interval_category(0);
    auto i1 = interval_category(1);
    auto e1 = iso_interval_category(1);

    CHECK(is_equivalence(identity_functor(i1)).is_yes());

    // the inclusion [0] -> I[1] at object x
    Functor incl{i0, e1.cat, {0}, {e1.cat->identity[0]}};
    incl.validate();
    CHECK(is_equivalence(incl).is_yes());

    // the inclusion [0] -> [1] at object 0
    Functor at0{i0, i1, {0}, {i1->identity[0]}};
    at0.validate();
    CHECK(is_equivalence(at0).is_no());

    CHECK(equivalent(i0, e1.cat).is_yes());
    CHECK(equivalent(i0, i1).is_no());
    CHECK(equivalent(i1, i1).is_yes());
    // symmetry of the verdict
    CHECK(equivalent(e1.cat, i0).is_yes());
}

TEST_CASE("groupoid equivalence") {
    auto e1 = iso_interval_category(1);
    auto g = iso_subgroupoid(*e1.cat);
    auto pt = interval_category(0);
    CHECK(groupoid_equivalent(*g.cat, *pt).is_yes());

    FinCat d2, d3;
    for (ObjId i = 0; i < 2; ++i) {
        d2.obj_names.push_back("a" + std::to_string(i));
        d2.mor_src.push_back(i);
        d2.mor_tgt.push_back(i);
        d2.identity.push_back(i);
        d2.mor_names.push_back("id");
    }
    for (ObjId i = 0; i < 3; ++i) {
        d3.obj_names.push_back("b" + std::to_string(i));
        d3.mor_src.push_back(i);
        d3.mor_tgt.push_back(i);
        d3.identity.push_back(i);
        d3.mor_names.push_back("id");
    }
    d2.finalize();
    d3.finalize();
    CHECK(groupoid_equivalent(d2, d3).is_no());

    CHECK(groupoid_equivalent(cyclic_group(2), cyclic_group(3)).is_no());
    CHECK(groupoid_equivalent(cyclic_group(3), cyclic_group(3)).is_yes());
    CHECK(groupoid_equivalent(cyclic_group(2), idempotent_monoid())
              .is_unknown());
}

TEST_CASE("category file format") {
    std::string text =
        "# the walking arrow with its arrow marked\n"
        "objects: a b\n"
        "arrow: f a b\n"
        "weq: f\n";
    auto pair = parse_category(text);
    CHECK(pair.cat->num_objects() == 2);
    CHECK(pair.cat->num_morphisms() == 3);
    CHECK(pair.weq[0] == 1);

    auto rt = parse_category(serialize_category(pair));
    CHECK(rt.cat->num_objects() == 2);
    CHECK(rt.cat->num_morphisms() == 3);

    // an associativity or identity violation surfaces as an invariant error
    std::string bad =
        "objects: x\n"
        "arrow: f x x\n"
        "arrow: g x x\n"
        "arrow: h x x\n"
        "compose: f f g\n"
        "compose: f g f\n"
        "compose: f h f\n"
        "compose: g f h\n"
        "compose: g g g\n"
        "compose: g h g\n"
        "compose: h f f\n"
        "compose: h g h\n"
        "compose: h h h\n";
    CHECK_THROWS_AS(parse_category(bad), InvariantError);

    CHECK_THROWS_AS(parse_category("objects: a\narrow: f a c\n"), ParseError);
    // composition-table gap
    CHECK_THROWS_AS(
        parse_category("objects: a b c\narrow: f a b\narrow: g b c\n"),
        InvariantError);
}

TEST_CASE("exponential law for categories") {
    // ([1]^[1])^[1]  vs  [1]^([1] x [1])
    auto i1 = interval_category(1);
    auto inner = functor_category(i1, i1);
    auto lhs = functor_category(i1, inner.cat);
    auto sq = product(i1, i1);
    auto rhs = functor_category(sq.cat, i1);
    CHECK(lhs.objects.size() == rhs.objects.size());
    CHECK(find_cat_iso(lhs.cat, rhs.cat).has_value());
}
