#include "segal/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace segal {

namespace {
std::uint64_t pair_key(MorId g, MorId f) {
    return (std::uint64_t(g) << 32) | std::uint64_t(f);
}
}  // namespace

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Yes: return "yes";
        case Outcome::No: return "no";
        default: return "unknown";
    }
}

json Verdict::to_json() const {
    json j{{"outcome", to_string(outcome)}, {"reason", reason}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

MorId FinCat::compose(MorId g, MorId f) const {
    if (is_identity(f)) return g;
    if (is_identity(g)) return f;
    auto it = compose_.find(pair_key(g, f));
    if (it == compose_.end())
        throw InvariantError("composition-table gap at (" + mor_label(g) + ", " +
                             mor_label(f) + ")");
    return it->second;
}

bool FinCat::is_identity(MorId f) const {
    return mor_src[f] == mor_tgt[f] && identity[mor_src[f]] == f;
}

void FinCat::set_compose(MorId g, MorId f, MorId gf) {
    compose_[pair_key(g, f)] = gf;
}

std::vector<MorId> FinCat::hom(ObjId x, ObjId y) const {
    std::vector<MorId> out;
    for (MorId f = 0; f < num_morphisms(); ++f)
        if (mor_src[f] == x && mor_tgt[f] == y) out.push_back(f);
    return out;
}

void FinCat::finalize() {
    from_.assign(num_objects(), {});
    for (MorId f = 0; f < num_morphisms(); ++f) from_[mor_src[f]].push_back(f);
}

std::optional<MorId> FinCat::inverse(MorId f) const {
    ObjId x = mor_src[f], y = mor_tgt[f];
    for (MorId g : from(y)) {
        if (mor_tgt[g] != x) continue;
        if (compose(g, f) == identity[x] && compose(f, g) == identity[y])
            return g;
    }
    return std::nullopt;
}

std::vector<ObjId> FinCat::iso_class_of_objects() const {
    std::vector<ObjId> cls(num_objects());
    std::iota(cls.begin(), cls.end(), 0);
    std::function<ObjId(ObjId)> find = [&](ObjId x) {
        while (cls[x] != x) x = cls[x] = cls[cls[x]];
        return x;
    };
    for (MorId f = 0; f < num_morphisms(); ++f) {
        if (!is_iso(f)) continue;
        ObjId a = find(mor_src[f]), b = find(mor_tgt[f]);
        if (a != b) cls[a] = b;
    }
    for (ObjId x = 0; x < num_objects(); ++x) cls[x] = find(x);
    return cls;
}

std::string FinCat::obj_label(ObjId x) const {
    if (x < obj_names.size() && !obj_names[x].empty()) return obj_names[x];
    return "o" + std::to_string(x);
}

std::string FinCat::mor_label(MorId f) const {
    if (f < mor_names.size() && !mor_names[f].empty()) return mor_names[f];
    return "m" + std::to_string(f);
}

void FinCat::validate() const {
    const std::size_t no = num_objects(), nm = num_morphisms();
    for (ObjId x = 0; x < no; ++x) {
        MorId e = identity.at(x);
        if (e >= nm || mor_src[e] != x || mor_tgt[e] != x)
            throw InvariantError("identity of " + obj_label(x) +
                                 " is not an endomorphism of it");
    }
    for (MorId f = 0; f < nm; ++f)
        if (mor_src[f] >= no || mor_tgt[f] >= no)
            throw InvariantError("morphism " + mor_label(f) +
                                 " has an out-of-range endpoint");
    // totality and endpoint sanity of the table
    for (MorId g = 0; g < nm; ++g)
        for (MorId f = 0; f < nm; ++f) {
            if (!composable(g, f)) continue;
            MorId gf = compose(g, f);
            if (mor_src[gf] != mor_src[f] || mor_tgt[gf] != mor_tgt[g])
                throw InvariantError("composite " + mor_label(g) + "∘" +
                                     mor_label(f) + " has wrong endpoints");
        }
    // identity laws
    for (MorId f = 0; f < nm; ++f) {
        if (compose(f, identity[mor_src[f]]) != f)
            throw InvariantError("right identity law fails at " + mor_label(f));
        if (compose(identity[mor_tgt[f]], f) != f)
            throw InvariantError("left identity law fails at " + mor_label(f));
    }
    // associativity, exhaustively
    for (MorId h = 0; h < nm; ++h)
        for (MorId g = 0; g < nm; ++g) {
            if (!composable(h, g)) continue;
            MorId hg = compose(h, g);
            for (MorId f = 0; f < nm; ++f) {
                if (!composable(g, f)) continue;
                if (compose(hg, f) != compose(h, compose(g, f)))
                    throw InvariantError("associativity fails at (" +
                                         mor_label(f) + ", " + mor_label(g) +
                                         ", " + mor_label(h) + ")");
            }
        }
}

void Functor::validate() const {
    const FinCat& c = *source;
    const FinCat& d = *target;
    if (obj_map.size() != c.num_objects() || mor_map.size() != c.num_morphisms())
        throw InvariantError("functor maps have wrong arity");
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
        MorId ff = mor_map[f];
        if (d.mor_src[ff] != obj_map[c.mor_src[f]] ||
            d.mor_tgt[ff] != obj_map[c.mor_tgt[f]])
            throw InvariantError("functor breaks endpoints at " + c.mor_label(f));
    }
    for (ObjId x = 0; x < c.num_objects(); ++x)
        if (mor_map[c.identity[x]] != d.identity[obj_map[x]])
            throw InvariantError("functor breaks identity at " + c.obj_label(x));
    for (MorId g = 0; g < c.num_morphisms(); ++g)
        for (MorId f = 0; f < c.num_morphisms(); ++f) {
            if (!c.composable(g, f)) continue;
            if (mor_map[c.compose(g, f)] != d.compose(mor_map[g], mor_map[f]))
                throw InvariantError("functor breaks composition at (" +
                                     c.mor_label(f) + ", " + c.mor_label(g) + ")");
        }
}

void WidePair::validate() const {
    if (weq.size() != cat->num_morphisms())
        throw InvariantError("weq mask has wrong arity");
    for (ObjId x = 0; x < cat->num_objects(); ++x)
        if (!weq[cat->identity[x]])
            throw InvariantError("weq misses the identity of " +
                                 cat->obj_label(x));
    for (MorId g = 0; g < cat->num_morphisms(); ++g)
        for (MorId f = 0; f < cat->num_morphisms(); ++f)
            if (cat->composable(g, f) && weq[g] && weq[f] &&
                !weq[cat->compose(g, f)])
                throw InvariantError("weq not closed under composition at (" +
                                     cat->mor_label(f) + ", " +
                                     cat->mor_label(g) + ")");
}

bool WidePair::all_weq() const {
    return std::all_of(weq.begin(), weq.end(), [](char c) { return c != 0; });
}

WidePair WidePair::with_isos(CatPtr c) {
    WidePair p{c, std::vector<char>(c->num_morphisms(), 0)};
    for (MorId f = 0; f < c->num_morphisms(); ++f)
        if (c->is_iso(f)) p.weq[f] = 1;
    return p;
}

WidePair WidePair::with_identities(CatPtr c) {
    WidePair p{c, std::vector<char>(c->num_morphisms(), 0)};
    for (ObjId x = 0; x < c->num_objects(); ++x) p.weq[c->identity[x]] = 1;
    return p;
}

WidePair WidePair::with_all(CatPtr c) {
    return WidePair{c, std::vector<char>(c->num_morphisms(), 1)};
}

FinCat terminal_category() {
    FinCat c;
    c.obj_names = {"*"};
    c.mor_names = {"id"};
    c.mor_src = {0};
    c.mor_tgt = {0};
    c.identity = {0};
    c.finalize();
    return c;
}

std::shared_ptr<FinCat> interval_category(int n) {
    if (n < 0) throw SegalError("interval_category needs n >= 0");
    auto c = std::make_shared<FinCat>();
    for (int i = 0; i <= n; ++i) c->obj_names.push_back(std::to_string(i));
    // one morphism per pair i <= j
    std::map<std::pair<int, int>, MorId> arrow;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            arrow[{i, j}] = MorId(c->mor_src.size());
            c->mor_src.push_back(ObjId(i));
            c->mor_tgt.push_back(ObjId(j));
            c->mor_names.push_back(std::to_string(i) + "->" + std::to_string(j));
        }
    c->identity.resize(n + 1);
    for (int i = 0; i <= n; ++i) c->identity[i] = arrow[{i, i}];
    for (auto& [ij, f] : arrow)
        for (auto& [jk, g] : arrow)
            if (jk.first == ij.second)
                c->set_compose(g, f, arrow[{ij.first, jk.second}]);
    c->finalize();
    return c;
}

IsoInterval iso_interval_category(int n) {
    if (n < 0) throw SegalError("iso_interval_category needs n >= 0");
    auto c = std::make_shared<FinCat>();
    for (int i = 0; i <= n; ++i) c->obj_names.push_back(std::to_string(i));
    // exactly one morphism (i, j) for every ordered pair
    auto mid = [n](int i, int j) { return MorId(i * (n + 1) + j); };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            c->mor_src.push_back(ObjId(i));
            c->mor_tgt.push_back(ObjId(j));
            c->mor_names.push_back(std::to_string(i) + "~" + std::to_string(j));
        }
    c->identity.resize(n + 1);
    for (int i = 0; i <= n; ++i) c->identity[i] = mid(i, i);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k)
                c->set_compose(mid(j, k), mid(i, j), mid(i, k));
    c->finalize();

    auto base = interval_category(n);
    Functor incl;
    incl.source = base;
    incl.target = c;
    incl.obj_map.resize(base->num_objects());
    std::iota(incl.obj_map.begin(), incl.obj_map.end(), 0);
    incl.mor_map.resize(base->num_morphisms());
    for (MorId f = 0; f < base->num_morphisms(); ++f)
        incl.mor_map[f] = mid(int(base->mor_src[f]), int(base->mor_tgt[f]));
    return IsoInterval{c, std::move(incl)};
}

ObjId ProductCat::obj_pair(ObjId a, ObjId b) const {
    for (ObjId i = 0; i < obj_pairs.size(); ++i)
        if (obj_pairs[i] == std::pair<ObjId, ObjId>{a, b}) return i;
    throw SegalError("object pair not found");
}

MorId ProductCat::mor_pair(MorId f, MorId g) const {
    for (MorId i = 0; i < mor_pairs.size(); ++i)
        if (mor_pairs[i] == std::pair<MorId, MorId>{f, g}) return i;
    throw SegalError("morphism pair not found");
}

ProductCat product(CatPtr cp, CatPtr dp) {
    const FinCat& c = *cp;
    const FinCat& d = *dp;
    ProductCat out;
    auto prod = std::make_shared<FinCat>();
    for (ObjId a = 0; a < c.num_objects(); ++a)
        for (ObjId b = 0; b < d.num_objects(); ++b) {
            out.obj_pairs.emplace_back(a, b);
            prod->obj_names.push_back("(" + c.obj_label(a) + "," + d.obj_label(b) +
                                      ")");
        }
    auto oid = [&](ObjId a, ObjId b) {
        return ObjId(a * d.num_objects() + b);
    };
    for (MorId f = 0; f < c.num_morphisms(); ++f)
        for (MorId g = 0; g < d.num_morphisms(); ++g) {
            out.mor_pairs.emplace_back(f, g);
            prod->mor_src.push_back(oid(c.mor_src[f], d.mor_src[g]));
            prod->mor_tgt.push_back(oid(c.mor_tgt[f], d.mor_tgt[g]));
            prod->mor_names.push_back("(" + c.mor_label(f) + "," + d.mor_label(g) +
                                      ")");
        }
    auto mid = [&](MorId f, MorId g) {
        return MorId(f * d.num_morphisms() + g);
    };
    prod->identity.resize(prod->obj_names.size());
    for (ObjId a = 0; a < c.num_objects(); ++a)
        for (ObjId b = 0; b < d.num_objects(); ++b)
            prod->identity[oid(a, b)] = mid(c.identity[a], d.identity[b]);
    for (MorId f2 = 0; f2 < c.num_morphisms(); ++f2)
        for (MorId g2 = 0; g2 < d.num_morphisms(); ++g2)
            for (MorId f1 = 0; f1 < c.num_morphisms(); ++f1) {
                if (!c.composable(f2, f1)) continue;
                for (MorId g1 = 0; g1 < d.num_morphisms(); ++g1) {
                    if (!d.composable(g2, g1)) continue;
                    prod->set_compose(mid(f2, g2), mid(f1, g1),
                                      mid(c.compose(f2, f1), d.compose(g2, g1)));
                }
            }
    prod->finalize();
    out.cat = prod;

    Functor p1{prod, cp, {}, {}}, p2{prod, dp, {}, {}};
    for (auto& [a, b] : out.obj_pairs) {
        p1.obj_map.push_back(a);
        p2.obj_map.push_back(b);
    }
    for (auto& [f, g] : out.mor_pairs) {
        p1.mor_map.push_back(f);
        p2.mor_map.push_back(g);
    }
    out.proj1 = std::move(p1);
    out.proj2 = std::move(p2);
    return out;
}

std::vector<Functor> enumerate_functors(CatPtr domp, CatPtr codp,
                                        const Bounds& b) {
    const FinCat& dom = *domp;
    const FinCat& cod = *codp;
    std::vector<Functor> out;

    // Backtrack over object images, then over images of non-identity
    // morphisms with eager consistency checks against the composition table.
    std::vector<MorId> nonid;
    for (MorId f = 0; f < dom.num_morphisms(); ++f)
        if (!dom.is_identity(f)) nonid.push_back(f);

    std::vector<ObjId> omap(dom.num_objects(), 0);
    std::vector<MorId> mmap(dom.num_morphisms(), 0);

    std::function<void(std::size_t)> assign_mor = [&](std::size_t k) {
        if (k == nonid.size()) {
            // full consistency check over the table
            for (MorId g = 0; g < dom.num_morphisms(); ++g)
                for (MorId f = 0; f < dom.num_morphisms(); ++f)
                    if (dom.composable(g, f) &&
                        mmap[dom.compose(g, f)] != cod.compose(mmap[g], mmap[f]))
                        return;
            if (out.size() >= b.max_functors)
                throw BoundError("functor enumeration exceeded bound",
                                 out.size());
            out.push_back(Functor{domp, codp, omap, mmap});
            return;
        }
        MorId f = nonid[k];
        for (MorId im : cod.from(omap[dom.mor_src[f]])) {
            if (cod.mor_tgt[im] != omap[dom.mor_tgt[f]]) continue;
            mmap[f] = im;
            // check composites among already-assigned morphisms
            bool ok = true;
            for (std::size_t j = 0; j <= k && ok; ++j) {
                MorId g = nonid[j];
                if (dom.composable(g, f)) {
                    MorId gf = dom.compose(g, f);
                    if (!dom.is_identity(gf) &&
                        (std::find(nonid.begin(), nonid.begin() + k + 1, gf) !=
                         nonid.begin() + k + 1) &&
                        mmap[gf] != cod.compose(mmap[g], mmap[f]))
                        ok = false;
                }
                if (ok && dom.composable(f, g)) {
                    MorId fg = dom.compose(f, g);
                    if (!dom.is_identity(fg) &&
                        (std::find(nonid.begin(), nonid.begin() + k + 1, fg) !=
                         nonid.begin() + k + 1) &&
                        mmap[fg] != cod.compose(mmap[f], mmap[g]))
                        ok = false;
                }
            }
            if (ok) assign_mor(k + 1);
        }
    };

    std::function<void(ObjId)> assign_obj = [&](ObjId x) {
        if (x == dom.num_objects()) {
            for (ObjId y = 0; y < dom.num_objects(); ++y)
                mmap[dom.identity[y]] = cod.identity[omap[y]];
            assign_mor(0);
            return;
        }
        for (ObjId im = 0; im < cod.num_objects(); ++im) {
            omap[x] = im;
            assign_obj(x + 1);
        }
    };
    assign_obj(0);
    return out;
}

std::vector<NatTrans> enumerate_nat_trans(const FinCat& cod,
                                          const std::vector<Functor>& functors,
                                          const Bounds& b) {
    std::vector<NatTrans> out;
    if (functors.empty()) return out;
    const FinCat& dom = *functors.front().source;
    for (std::uint32_t a = 0; a < functors.size(); ++a)
        for (std::uint32_t c = 0; c < functors.size(); ++c) {
            const Functor& F = functors[a];
            const Functor& G = functors[c];
            // backtrack over components, naturality checked incrementally
            std::vector<MorId> comp(dom.num_objects(), 0);
            std::function<void(ObjId)> rec = [&](ObjId x) {
                if (x == dom.num_objects()) {
                    if (out.size() >= b.max_nat_trans)
                        throw BoundError("natural-transformation enumeration "
                                         "exceeded bound",
                                         out.size());
                    out.push_back(NatTrans{a, c, comp});
                    return;
                }
                for (MorId m : cod.from(F.obj_map[x])) {
                    if (cod.mor_tgt[m] != G.obj_map[x]) continue;
                    comp[x] = m;
                    bool ok = true;
                    for (MorId f = 0; f < dom.num_morphisms() && ok; ++f) {
                        ObjId s = dom.mor_src[f], t = dom.mor_tgt[f];
                        if (s > x || t > x) continue;
                        if (cod.compose(comp[t], F.mor_map[f]) !=
                            cod.compose(G.mor_map[f], comp[s]))
                            ok = false;
                    }
                    if (ok) rec(x + 1);
                }
            };
            rec(0);
        }
    return out;
}

namespace {

// Shared assembly: make a FinCat whose objects are functors and whose
// morphisms are the given natural transformations (assumed closed under
// composition and containing identities).
std::shared_ptr<FinCat> assemble_functor_cat(const FinCat& cod,
                                             const std::vector<Functor>& fs,
                                             const std::vector<NatTrans>& nts,
                                             const Bounds& b) {
    auto cat = std::make_shared<FinCat>();
    cat->identity.assign(fs.size(), 0);
    std::unordered_map<std::uint64_t, std::vector<MorId>> by_ends;
    for (MorId i = 0; i < nts.size(); ++i) {
        cat->mor_src.push_back(nts[i].source_functor);
        cat->mor_tgt.push_back(nts[i].target_functor);
        by_ends[pair_key(nts[i].source_functor, nts[i].target_functor)]
            .push_back(i);
    }
    for (std::uint32_t i = 0; i < fs.size(); ++i) {
        // identity transformation: components are identities
        bool found = false;
        for (MorId m : by_ends[pair_key(i, i)]) {
            bool is_id = true;
            for (ObjId x = 0; x < fs[i].obj_map.size(); ++x)
                if (nts[m].components[x] != cod.identity[fs[i].obj_map[x]]) {
                    is_id = false;
                    break;
                }
            if (is_id) {
                cat->identity[i] = m;
                found = true;
                break;
            }
        }
        if (!found)
            throw InvariantError("functor category misses an identity");
    }
    std::vector<std::vector<MorId>> out_of(fs.size());
    for (MorId i = 0; i < nts.size(); ++i)
        out_of[nts[i].source_functor].push_back(i);
    std::size_t entries = 0;
    for (MorId f = 0; f < nts.size(); ++f)
        for (MorId g : out_of[nts[f].target_functor]) {
            if (++entries > b.max_compose_pairs)
                throw BoundError("functor-category composition table exceeded "
                                 "bound",
                                 entries);
            std::vector<MorId> comp(nts[f].components.size());
            for (std::size_t x = 0; x < comp.size(); ++x)
                comp[x] =
                    cod.compose(nts[g].components[x], nts[f].components[x]);
            MorId gi = 0;
            bool found = false;
            for (MorId m :
                 by_ends[pair_key(nts[f].source_functor, nts[g].target_functor)])
                if (nts[m].components == comp) {
                    gi = m;
                    found = true;
                    break;
                }
            if (!found)
                throw InvariantError(
                    "functor category not closed under composition");
            cat->set_compose(g, f, gi);
        }
    cat->finalize();
    return cat;
}

}  // namespace

FunctorCat functor_category(CatPtr dom, CatPtr cod, const Bounds& b) {
    FunctorCat out;
    out.objects = enumerate_functors(dom, cod, b);
    out.morphisms = enumerate_nat_trans(*cod, out.objects, b);
    out.cat = assemble_functor_cat(*cod, out.objects, out.morphisms, b);
    return out;
}

WeFunctorCat we_functor_category(const WidePair& pair, CatPtr dom,
                                 const Bounds& b) {
    WeFunctorCat out;
    out.objects = enumerate_functors(dom, pair.cat, b);
    std::vector<NatTrans> all = enumerate_nat_trans(*pair.cat, out.objects, b);
    for (auto& nt : all) {
        bool w = true;
        for (MorId m : nt.components)
            if (!pair.weq[m]) {
                w = false;
                break;
            }
        if (w) out.morphisms.push_back(nt);
    }
    auto cat = assemble_functor_cat(*pair.cat, out.objects, out.morphisms, b);
    out.pair = WidePair::with_all(cat);
    return out;
}

SubGroupoid iso_subgroupoid(const FinCat& c) {
    SubGroupoid out;
    auto g = std::make_shared<FinCat>();
    g->obj_names = c.obj_names;
    std::vector<MorId> idx(c.num_morphisms(), 0);
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (!c.is_iso(f)) continue;
        idx[f] = MorId(out.mor_in_parent.size());
        out.mor_in_parent.push_back(f);
        g->mor_src.push_back(c.mor_src[f]);
        g->mor_tgt.push_back(c.mor_tgt[f]);
        g->mor_names.push_back(c.mor_label(f));
    }
    g->identity.resize(c.num_objects());
    for (ObjId x = 0; x < c.num_objects(); ++x)
        g->identity[x] = idx[c.identity[x]];
    for (MorId gi = 0; gi < out.mor_in_parent.size(); ++gi)
        for (MorId fi = 0; fi < out.mor_in_parent.size(); ++fi) {
            MorId gp = out.mor_in_parent[gi], fp = out.mor_in_parent[fi];
            if (c.composable(gp, fp)) g->set_compose(gi, fi, idx[c.compose(gp, fp)]);
        }
    g->finalize();
    out.cat = g;
    return out;
}

std::shared_ptr<FinCat> full_subcategory(const FinCat& c,
                                         const std::vector<ObjId>& objects) {
    auto s = std::make_shared<FinCat>();
    std::vector<std::int64_t> oidx(c.num_objects(), -1);
    for (ObjId i = 0; i < objects.size(); ++i) {
        oidx[objects[i]] = i;
        s->obj_names.push_back(c.obj_label(objects[i]));
    }
    std::vector<std::int64_t> midx(c.num_morphisms(), -1);
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (oidx[c.mor_src[f]] < 0 || oidx[c.mor_tgt[f]] < 0) continue;
        midx[f] = std::int64_t(s->mor_src.size());
        s->mor_src.push_back(ObjId(oidx[c.mor_src[f]]));
        s->mor_tgt.push_back(ObjId(oidx[c.mor_tgt[f]]));
        s->mor_names.push_back(c.mor_label(f));
    }
    s->identity.resize(objects.size());
    for (ObjId i = 0; i < objects.size(); ++i)
        s->identity[i] = MorId(midx[c.identity[objects[i]]]);
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
        if (midx[g] < 0) continue;
        for (MorId f = 0; f < c.num_morphisms(); ++f) {
            if (midx[f] < 0 || !c.composable(g, f)) continue;
            s->set_compose(MorId(midx[g]), MorId(midx[f]),
                           MorId(midx[c.compose(g, f)]));
        }
    }
    s->finalize();
    return s;
}

Verdict is_equivalence(const Functor& fn) {
    const FinCat& c = *fn.source;
    const FinCat& d = *fn.target;
    // fully faithful: every hom map is a bijection
    for (ObjId x = 0; x < c.num_objects(); ++x)
        for (ObjId y = 0; y < c.num_objects(); ++y) {
            auto hc = c.hom(x, y);
            auto hd = d.hom(fn.obj_map[x], fn.obj_map[y]);
            std::set<MorId> image;
            for (MorId f : hc) image.insert(fn.mor_map[f]);
            if (image.size() != hc.size() || image.size() != hd.size())
                return Verdict::no(
                    "not fully faithful",
                    json{{"source_pair", {c.obj_label(x), c.obj_label(y)}},
                         {"hom_size_source", hc.size()},
                         {"hom_size_image", image.size()},
                         {"hom_size_target", hd.size()}});
        }
    // essentially surjective
    for (ObjId z = 0; z < d.num_objects(); ++z) {
        bool hit = false;
        for (ObjId x = 0; x < c.num_objects() && !hit; ++x) {
            ObjId fx = fn.obj_map[x];
            for (MorId m : d.from(fx))
                if (d.mor_tgt[m] == z && d.is_iso(m)) {
                    hit = true;
                    break;
                }
            if (fx == z) hit = true;
        }
        if (!hit)
            return Verdict::no("not essentially surjective",
                               json{{"missed_object", d.obj_label(z)}});
    }
    return Verdict::yes("fully faithful and essentially surjective");
}

Verdict equivalent(CatPtr c, CatPtr d, const Bounds& b) {
    // The object map of a witnessing equivalence must biject iso-classes and
    // preserve hom-set sizes; enumerate such maps first, then fill morphisms.
    try {
        auto fs = enumerate_functors(c, d, b);
        for (auto& f : fs) {
            Verdict v = is_equivalence(f);
            if (v.is_yes())
                return Verdict::yes("witnessed by functor",
                                    json{{"obj_map", f.obj_map}});
        }
        return Verdict::no("all functors exhausted");
    } catch (const BoundError& e) {
        return Verdict::unknown("size bound exceeded",
                                json{{"reached", e.reached}});
    }
}

namespace {

// Group isomorphism by brute force over bijections mapping unit to unit;
// intended for automorphism groups of desk-scale instances.
bool groups_isomorphic(const FinCat& g, ObjId x, const FinCat& h, ObjId y) {
    auto gx = g.hom(x, x);
    auto hy = h.hom(y, y);
    if (gx.size() != hy.size()) return false;
    const std::size_t n = gx.size();
    // order profile must match
    auto order_of = [](const FinCat& cat, MorId e, MorId f) {
        MorId acc = f;
        int k = 1;
        while (acc != e) {
            acc = cat.compose(f, acc);
            ++k;
            if (k > 1000) throw SegalError("automorphism order overflow");
        }
        return k;
    };
    MorId eg = g.identity[x], eh = h.identity[y];
    std::multiset<int> og, oh;
    for (MorId f : gx) og.insert(order_of(g, eg, f));
    for (MorId f : hy) oh.insert(order_of(h, eh, f));
    if (og != oh) return false;

    std::vector<std::size_t> perm(n), pos_h(h.num_morphisms(), 0);
    std::vector<std::size_t> pos_g(g.num_morphisms(), 0);
    for (std::size_t i = 0; i < n; ++i) pos_g[gx[i]] = i;
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            if ((gx[i] == eg) != (hy[j] == eh)) continue;
            perm[i] = j;
            used[j] = 1;
            bool ok = true;
            for (std::size_t k = 0; k <= i && ok; ++k) {
                MorId p1 = g.compose(gx[i], gx[k]);
                MorId p2 = g.compose(gx[k], gx[i]);
                MorId q1 = h.compose(hy[perm[i]], hy[perm[k]]);
                MorId q2 = h.compose(hy[perm[k]], hy[perm[i]]);
                if (pos_g[p1] <= i && hy[perm[pos_g[p1]]] != q1) ok = false;
                if (ok && pos_g[p2] <= i && hy[perm[pos_g[p2]]] != q2) ok = false;
            }
            if (ok && rec(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

Verdict groupoid_equivalent(const FinCat& g, const FinCat& h, const Bounds&) {
    for (MorId f = 0; f < g.num_morphisms(); ++f)
        if (!g.is_iso(f))
            return Verdict::unknown("first argument is not a groupoid",
                                    json{{"morphism", g.mor_label(f)}});
    for (MorId f = 0; f < h.num_morphisms(); ++f)
        if (!h.is_iso(f))
            return Verdict::unknown("second argument is not a groupoid",
                                    json{{"morphism", h.mor_label(f)}});
    auto cg = g.iso_class_of_objects();
    auto ch = h.iso_class_of_objects();
    std::vector<ObjId> repg, reph;
    for (ObjId x = 0; x < g.num_objects(); ++x)
        if (cg[x] == x) repg.push_back(x);
    for (ObjId y = 0; y < h.num_objects(); ++y)
        if (ch[y] == y) reph.push_back(y);
    if (repg.size() != reph.size())
        return Verdict::no("iso-class counts differ",
                           json{{"left", repg.size()}, {"right", reph.size()}});
    // match classes by automorphism groups; backtracking bijection
    std::vector<char> used(reph.size(), 0);
    std::vector<int> match(repg.size(), -1);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == repg.size()) return true;
        for (std::size_t j = 0; j < reph.size(); ++j) {
            if (used[j]) continue;
            if (!groups_isomorphic(g, repg[i], h, reph[j])) continue;
            used[j] = 1;
            match[i] = int(j);
            if (rec(i + 1)) return true;
            used[j] = 0;
        }
        return false;
    };
    if (rec(0)) {
        json w = json::array();
        for (std::size_t i = 0; i < repg.size(); ++i)
            w.push_back({g.obj_label(repg[i]), h.obj_label(reph[match[i]])});
        return Verdict::yes("iso-classes and automorphism groups match", w);
    }
    return Verdict::no("automorphism groups do not match class-wise");
}

std::optional<Functor> find_cat_iso(CatPtr cp, CatPtr dp, const Bounds&) {
    const FinCat& c = *cp;
    const FinCat& d = *dp;
    if (c.num_objects() != d.num_objects() ||
        c.num_morphisms() != d.num_morphisms())
        return std::nullopt;
    // degree-profile pruning: (in, out, endo) counts per object must match
    auto profile = [](const FinCat& k, ObjId x) {
        int in = 0, out = 0, endo = 0;
        for (MorId f = 0; f < k.num_morphisms(); ++f) {
            if (k.mor_src[f] == x && k.mor_tgt[f] == x)
                ++endo;
            else if (k.mor_src[f] == x)
                ++out;
            else if (k.mor_tgt[f] == x)
                ++in;
        }
        return std::tuple<int, int, int>{in, out, endo};
    };
    std::vector<std::tuple<int, int, int>> pc, pd;
    for (ObjId x = 0; x < c.num_objects(); ++x) pc.push_back(profile(c, x));
    for (ObjId y = 0; y < d.num_objects(); ++y) pd.push_back(profile(d, y));

    std::vector<ObjId> omap(c.num_objects());
    std::vector<char> oused(d.num_objects(), 0);
    std::vector<MorId> mmap(c.num_morphisms());

    // extend an object bijection to a morphism bijection hom-set by hom-set
    std::function<bool()> extend_mor = [&]() -> bool {
        std::vector<char> mused(d.num_morphisms(), 0);
        std::function<bool(MorId)> rec = [&](MorId f) -> bool {
            if (f == c.num_morphisms()) {
                for (MorId g = 0; g < c.num_morphisms(); ++g)
                    for (MorId h2 = 0; h2 < c.num_morphisms(); ++h2)
                        if (c.composable(g, h2) &&
                            mmap[c.compose(g, h2)] != d.compose(mmap[g], mmap[h2]))
                            return false;
                return true;
            }
            if (c.is_identity(f)) {
                MorId im = d.identity[omap[c.mor_src[f]]];
                if (mused[im]) return false;
                mmap[f] = im;
                mused[im] = 1;
                bool r = rec(f + 1);
                mused[im] = 0;
                return r;
            }
            for (MorId im : d.from(omap[c.mor_src[f]])) {
                if (mused[im] || d.mor_tgt[im] != omap[c.mor_tgt[f]]) continue;
                if (d.is_identity(im)) continue;
                mmap[f] = im;
                mused[im] = 1;
                bool ok = true;
                for (MorId g = 0; g <= f && ok; ++g) {
                    if (c.composable(g, f)) {
                        MorId gf = c.compose(g, f);
                        if (gf <= f && mmap[gf] != d.compose(mmap[g], mmap[f]))
                            ok = false;
                    }
                    if (ok && c.composable(f, g)) {
                        MorId fg = c.compose(f, g);
                        if (fg <= f && mmap[fg] != d.compose(mmap[f], mmap[g]))
                            ok = false;
                    }
                }
                if (ok && rec(f + 1)) return true;
                mused[im] = 0;
            }
            return false;
        };
        return rec(0);
    };

    std::function<bool(ObjId)> rec_obj = [&](ObjId x) -> bool {
        if (x == c.num_objects()) return extend_mor();
        for (ObjId y = 0; y < d.num_objects(); ++y) {
            if (oused[y] || pc[x] != pd[y]) continue;
            // hom-set sizes against already-placed objects must agree
            bool ok = true;
            for (ObjId x2 = 0; x2 < x && ok; ++x2) {
                if (c.hom(x, x2).size() != d.hom(y, omap[x2]).size()) ok = false;
                if (ok && c.hom(x2, x).size() != d.hom(omap[x2], y).size())
                    ok = false;
            }
            if (!ok) continue;
            omap[x] = y;
            oused[y] = 1;
            if (rec_obj(x + 1)) return true;
            oused[y] = 0;
        }
        return false;
    };
    if (rec_obj(0)) return Functor{cp, dp, omap, mmap};
    return std::nullopt;
}

Functor identity_functor(CatPtr c) {
    Functor f{c, c, {}, {}};
    f.obj_map.resize(c->num_objects());
    std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
    f.mor_map.resize(c->num_morphisms());
    std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
    return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
    Functor h{f.source, g.target, {}, {}};
    for (ObjId x : f.obj_map) h.obj_map.push_back(g.obj_map[x]);
    for (MorId m : f.mor_map) h.mor_map.push_back(g.mor_map[m]);
    return h;
}

WidePair parse_category(const std::string& text) {
    auto cat = std::make_shared<FinCat>();
    std::map<std::string, ObjId> obj_of;
    std::map<std::string, MorId> mor_of;
    struct ComposeLine {
        std::string g, f, h;
        int line;
    };
    std::vector<ComposeLine> compose_lines;
    std::vector<std::string> weq_names;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (tok == "objects:") {
            std::string name;
            while (ls >> name) {
                if (obj_of.count(name))
                    throw ParseError("duplicate object " + name + where());
                obj_of[name] = ObjId(cat->obj_names.size());
                cat->obj_names.push_back(name);
            }
        } else if (tok == "arrow:") {
            std::string f, a, b;
            if (!(ls >> f >> a >> b))
                throw ParseError("arrow needs `name src tgt`" + where());
            if (!obj_of.count(a) || !obj_of.count(b))
                throw ParseError("arrow " + f + " uses unknown object" + where());
            if (mor_of.count(f))
                throw ParseError("duplicate arrow " + f + where());
            mor_of[f] = MorId(cat->mor_src.size());
            cat->mor_names.push_back(f);
            cat->mor_src.push_back(obj_of[a]);
            cat->mor_tgt.push_back(obj_of[b]);
        } else if (tok == "compose:") {
            ComposeLine cl;
            cl.line = lineno;
            if (!(ls >> cl.g >> cl.f >> cl.h))
                throw ParseError("compose needs `g f h` meaning g∘f = h" +
                                 where());
            compose_lines.push_back(cl);
        } else if (tok == "weq:") {
            std::string name;
            while (ls >> name) weq_names.push_back(name);
        } else {
            throw ParseError("unknown directive " + tok + where());
        }
    }

    // implicit identities
    cat->identity.resize(cat->obj_names.size());
    for (ObjId x = 0; x < cat->obj_names.size(); ++x) {
        std::string idname = "id_" + cat->obj_names[x];
        cat->identity[x] = MorId(cat->mor_src.size());
        mor_of[idname] = cat->identity[x];
        cat->mor_names.push_back(idname);
        cat->mor_src.push_back(x);
        cat->mor_tgt.push_back(x);
    }
    for (auto& cl : compose_lines) {
        auto need = [&](const std::string& m) {
            auto it = mor_of.find(m);
            if (it == mor_of.end())
                throw ParseError("compose uses unknown arrow " + m + " (line " +
                                 std::to_string(cl.line) + ")");
            return it->second;
        };
        MorId g = need(cl.g), f = need(cl.f), h = need(cl.h);
        if (!cat->composable(g, f))
            throw ParseError("compose line with non-composable pair (line " +
                             std::to_string(cl.line) + ")");
        cat->set_compose(g, f, h);
    }
    cat->finalize();
    cat->validate();

    WidePair pair = WidePair::with_identities(cat);
    for (auto& name : weq_names) {
        auto it = mor_of.find(name);
        if (it == mor_of.end())
            throw ParseError("weq uses unknown arrow " + name);
        pair.weq[it->second] = 1;
    }
    pair.validate();
    return pair;
}

std::string serialize_category(const WidePair& pair) {
    const FinCat& c = *pair.cat;
    // identities are implicit in the format and carry the names the parser
    // will regenerate
    auto label = [&](MorId f) {
        return c.is_identity(f) ? "id_" + c.obj_label(c.mor_src[f])
                                : c.mor_label(f);
    };
    std::ostringstream out;
    out << "objects:";
    for (ObjId x = 0; x < c.num_objects(); ++x) out << " " << c.obj_label(x);
    out << "\n";
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f)) continue;
        out << "arrow: " << label(f) << " " << c.obj_label(c.mor_src[f]) << " "
            << c.obj_label(c.mor_tgt[f]) << "\n";
    }
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
        if (c.is_identity(g)) continue;
        for (MorId f = 0; f < c.num_morphisms(); ++f) {
            if (c.is_identity(f) || !c.composable(g, f)) continue;
            out << "compose: " << label(g) << " " << label(f) << " "
                << label(c.compose(g, f)) << "\n";
        }
    }
    bool any = false;
    for (MorId f = 0; f < c.num_morphisms(); ++f)
        if (pair.weq[f] && !c.is_identity(f)) any = true;
    if (any) {
        out << "weq:";
        for (MorId f = 0; f < c.num_morphisms(); ++f)
            if (pair.weq[f] && !c.is_identity(f)) out << " " << label(f);
        out << "\n";
    }
    return out.str();
}

}  // namespace segal
