#include "segal/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace segal {

std::string to_string(SegalVerdict v) {
    switch (v) {
        case SegalVerdict::ExactIso: return "exact-iso";
        case SegalVerdict::BijectiveOnCells: return "bijective-on-cells";
        case SegalVerdict::Failed: return "failed";
        default: return "unknown";
    }
}

bool SegalReport::all_exact() const {
    for (int k = 2; k <= max_k; ++k)
        if (verdicts[k] != SegalVerdict::ExactIso) return false;
    return true;
}

bool SegalReport::all_bijective() const {
    for (int k = 2; k <= max_k; ++k)
        if (verdicts[k] != SegalVerdict::ExactIso &&
            verdicts[k] != SegalVerdict::BijectiveOnCells)
            return false;
    return true;
}

json SegalReport::to_json() const {
    json per_k = json::array();
    for (int k = 2; k <= max_k; ++k) {
        json e{{"k", k}, {"verdict", to_string(verdicts[k])}};
        if (!witnesses[k].is_null()) e["witness"] = witnesses[k];
        per_k.push_back(e);
    }
    return json{{"segal_maps", per_k}, {"fragment_checks", fragment_checks}};
}

namespace {

std::vector<int> alpha_delta(int i) { return {i, i + 1}; }  // alpha^i: [1]->[k]

struct TupleKeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

SegalReport segal_check(const TruncSSpace& w) {
    if (w.m_trunc < 2) throw SegalError("segal_check needs m truncation >= 2");
    SegalReport rep;
    rep.max_k = w.m_trunc;
    rep.verdicts.assign(w.m_trunc + 1, SegalVerdict::Unknown);
    rep.witnesses.assign(w.m_trunc + 1, nullptr);

    bool fragment = w.levelwise_discrete() || (w.tag != nullptr);
    if (w.levelwise_discrete()) rep.fragment_checks.push_back("levelwise-discrete");
    if (w.tag) rep.fragment_checks.push_back("nerve-construction");

    // (d_1, d_0) unique-degeneracy-lift check, a decidable shadow of the
    // covering-space property
    {
        bool covering = true;
        for (int n = 0; covering && n < w.level[1].trunc && n < 1; ++n)
            for (std::uint32_t e = 0; e < w.level[1].size[n]; ++e) {
                std::uint32_t s = w.level[1].degen[n][0][e];
                if (w.level[1].face[n + 1][0][s] != e ||
                    w.level[1].face[n + 1][1][s] != e)
                    covering = false;
            }
        if (covering) rep.fragment_checks.push_back("edge-degeneracy-section");
    }

    for (int k = 2; k <= w.m_trunc; ++k) {
        bool bijective = true;
        json witness;
        for (int n = 0; n <= w.level[k].trunc && bijective; ++n) {
            // phi_k cellwise
            std::unordered_map<std::vector<std::uint32_t>, std::uint32_t,
                               TupleKeyHash>
                image;
            for (std::uint32_t c = 0; c < w.level[k].size[n]; ++c) {
                std::vector<std::uint32_t> key(k);
                for (int i = 0; i < k; ++i)
                    key[i] = w.outer_apply(alpha_delta(i), k, n, c);
                auto [it, fresh] = image.try_emplace(key, c);
                if (!fresh) {
                    bijective = false;
                    witness = json{{"space_level", n},
                                   {"kind", "two cells with equal spine"},
                                   {"cells", {it->second, c}}};
                    break;
                }
            }
            if (!bijective) break;
            // count spine tuples by dynamic programming over the edge graph
            std::vector<std::uint64_t> paths(w.level[0].size[n], 1);
            for (int step = 0; step < k; ++step) {
                std::vector<std::uint64_t> next(w.level[0].size[n], 0);
                for (std::uint32_t e = 0; e < w.level[1].size[n]; ++e)
                    next[w.outer_face[1][0][n][e]] +=
                        paths[w.outer_face[1][1][n][e]];
                paths = std::move(next);
            }
            std::uint64_t tuples = 0;
            for (auto p : paths) tuples += p;
            if (tuples != w.level[k].size[n]) {
                bijective = false;
                // locate a tuple outside the image as the witness
                std::vector<std::uint32_t> missing;
                std::function<bool(int, std::uint32_t,
                                   std::vector<std::uint32_t>&)>
                    hunt = [&](int step, std::uint32_t at,
                               std::vector<std::uint32_t>& acc) -> bool {
                    if (step == k)
                        return image.find(acc) == image.end();
                    for (std::uint32_t e = 0; e < w.level[1].size[n]; ++e) {
                        if (w.outer_face[1][1][n][e] != at) continue;
                        acc.push_back(e);
                        if (hunt(step + 1, w.outer_face[1][0][n][e], acc))
                            return true;
                        acc.pop_back();
                    }
                    return false;
                };
                for (std::uint32_t v = 0;
                     v < w.level[0].size[n] && missing.empty(); ++v) {
                    std::vector<std::uint32_t> acc;
                    if (hunt(0, v, acc)) missing = acc;
                }
                witness = json{{"space_level", n},
                               {"kind", "spine tuple without a filler"},
                               {"tuple", missing},
                               {"cells", w.level[k].size[n]},
                               {"tuples", tuples}};
            }
        }
        if (bijective)
            rep.verdicts[k] = fragment ? SegalVerdict::ExactIso
                                       : SegalVerdict::BijectiveOnCells;
        else
            rep.verdicts[k] =
                fragment ? SegalVerdict::Failed : SegalVerdict::Unknown;
        rep.witnesses[k] = witness;
    }
    return rep;
}

std::uint32_t num_objects_of(const TruncSSpace& w) {
    return w.level[0].size[0];
}

std::uint32_t identity_of(const TruncSSpace& w, std::uint32_t x) {
    return w.outer_degen[0][0][0][x];
}

std::uint32_t source_of(const TruncSSpace& w, std::uint32_t g) {
    return w.outer_face[1][1][0][g];
}

std::uint32_t target_of(const TruncSSpace& w, std::uint32_t g) {
    return w.outer_face[1][0][0][g];
}

std::uint32_t degenerate_tower(const TruncSSpace& w, std::uint32_t vertex,
                               int m, int n) {
    std::uint32_t c = vertex;
    for (int i = 0; i < m; ++i) c = w.outer_degen[i][0][0][c];
    for (int i = 0; i < n; ++i) c = w.level[m].degen[i][0][c];
    return c;
}

MapFiber map_space(const TruncSSpace& w, std::uint32_t x, std::uint32_t y) {
    if (x >= w.level[0].size[0] || y >= w.level[0].size[0])
        throw SegalError("map_space: unknown vertex id");
    const TruncSSet& w1 = w.level[1];
    MapFiber out;
    out.space.trunc = w1.trunc;
    out.space.size.assign(w1.trunc + 1, 0);
    out.space.face.resize(w1.trunc + 1);
    out.space.degen.resize(w1.trunc + 1);
    out.parent_cell.resize(w1.trunc + 1);
    std::vector<std::vector<std::int64_t>> newid(w1.trunc + 1);

    for (int n = 0; n <= w1.trunc; ++n) {
        std::uint32_t dx = degenerate_tower(w, x, 0, n);
        std::uint32_t dy = degenerate_tower(w, y, 0, n);
        newid[n].assign(w1.size[n], -1);
        for (std::uint32_t c = 0; c < w1.size[n]; ++c) {
            if (w.outer_face[1][1][n][c] != dx ||
                w.outer_face[1][0][n][c] != dy)
                continue;
            newid[n][c] = out.space.size[n]++;
            out.parent_cell[n].push_back(c);
        }
    }
    for (int n = 1; n <= w1.trunc; ++n) {
        out.space.face[n].assign(
            n + 1, std::vector<std::uint32_t>(out.space.size[n]));
        for (std::uint32_t c = 0; c < w1.size[n]; ++c) {
            if (newid[n][c] < 0) continue;
            for (int i = 0; i <= n; ++i)
                out.space.face[n][i][newid[n][c]] =
                    std::uint32_t(newid[n - 1][w1.face[n][i][c]]);
        }
    }
    for (int n = 0; n < w1.trunc; ++n) {
        out.space.degen[n].assign(
            n + 1, std::vector<std::uint32_t>(out.space.size[n]));
        for (std::uint32_t c = 0; c < w1.size[n]; ++c) {
            if (newid[n][c] < 0) continue;
            for (int i = 0; i <= n; ++i)
                out.space.degen[n][i][newid[n][c]] =
                    std::uint32_t(newid[n + 1][w1.degen[n][i][c]]);
        }
    }
    out.vertex_of_parent = std::move(newid[0]);
    return out;
}

std::vector<std::uint32_t> multi_fiber_vertices(
    const TruncSSpace& w, const std::vector<std::uint32_t>& objects) {
    int j = int(objects.size()) - 1;
    if (j < 0 || j > w.m_trunc)
        throw SegalError("multi_fiber_vertices: arity out of window");
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < w.level[j].size[0]; ++c) {
        bool ok = true;
        for (int i = 0; i <= j && ok; ++i)
            if (w.outer_apply({i}, j, 0, c) != objects[i]) ok = false;
        if (ok) out.push_back(c);
    }
    return out;
}

std::vector<std::uint32_t> compose_results(const TruncSSpace& w,
                                           std::uint32_t f, std::uint32_t g) {
    if (target_of(w, f) != source_of(w, g))
        throw SegalError("compose_results: morphisms are not composable");
    std::set<std::uint32_t> results;
    for (std::uint32_t k = 0; k < w.level[2].size[0]; ++k) {
        if (w.outer_apply({0, 1}, 2, 0, k) != f) continue;
        if (w.outer_apply({1, 2}, 2, 0, k) != g) continue;
        results.insert(w.outer_face[2][1][0][k]);
    }
    return std::vector<std::uint32_t>(results.begin(), results.end());
}

HoCat ho_category(const TruncSSpace& w) {
    if (w.m_trunc < 2 || w.level[1].trunc < 1)
        throw SegalError("ho_category needs bidegrees (2, 0) and (1, 1)");
    const std::uint32_t nobj = num_objects_of(w);
    HoCat out;
    out.object_origin.resize(nobj);
    std::iota(out.object_origin.begin(), out.object_origin.end(), 0);
    out.class_of_vertex.assign(w.level[1].size[0], -1);

    auto cat = std::make_shared<FinCat>();
    for (std::uint32_t v = 0; v < nobj; ++v)
        cat->obj_names.push_back("v" + std::to_string(v));
    cat->identity.assign(nobj, 0);

    // one morphism per component of each mapping fiber
    for (std::uint32_t x = 0; x < nobj; ++x)
        for (std::uint32_t y = 0; y < nobj; ++y) {
            MapFiber fib = map_space(w, x, y);
            if (fib.space.size[0] == 0) continue;
            Pi0 comps = pi0(fib.space);
            std::vector<MorId> class_mor(comps.count);
            for (std::uint32_t c = 0; c < comps.count; ++c) {
                class_mor[c] = MorId(cat->mor_src.size());
                cat->mor_src.push_back(x);
                cat->mor_tgt.push_back(y);
                cat->mor_names.push_back(
                    "[" + std::to_string(x) + "->" + std::to_string(y) + "#" +
                    std::to_string(c) + "]");
                out.hom_origin.push_back(
                    fib.parent_cell[0][comps.representative[c]]);
            }
            for (std::uint32_t v = 0; v < fib.space.size[0]; ++v)
                out.class_of_vertex[fib.parent_cell[0][v]] =
                    class_mor[comps.component[v]];
        }
    for (std::uint32_t x = 0; x < nobj; ++x) {
        std::int64_t cls = out.class_of_vertex[identity_of(w, x)];
        if (cls < 0) throw InvariantError("identity cell outside its fiber");
        cat->identity[x] = MorId(cls);
    }

    // composition: every vertex pair in every pair of composable classes
    // must land in one class
    const std::uint32_t nmor = std::uint32_t(cat->mor_src.size());
    std::vector<std::vector<std::uint32_t>> class_vertices(nmor);
    for (std::uint32_t v = 0; v < w.level[1].size[0]; ++v)
        if (out.class_of_vertex[v] >= 0)
            class_vertices[out.class_of_vertex[v]].push_back(v);
    for (MorId f = 0; f < nmor; ++f)
        for (MorId g = 0; g < nmor; ++g) {
            if (cat->mor_tgt[f] != cat->mor_src[g]) continue;
            std::int64_t cls = -1;
            for (std::uint32_t vf : class_vertices[f])
                for (std::uint32_t vg : class_vertices[g]) {
                    auto results = compose_results(w, vf, vg);
                    if (results.empty())
                        throw InvariantError(
                            "no composition lift; input is not Segal");
                    for (std::uint32_t r : results) {
                        std::int64_t rc = out.class_of_vertex[r];
                        if (cls < 0) cls = rc;
                        if (rc != cls)
                            throw InvariantError(
                                "composition depends on the lift choice at (" +
                                std::to_string(f) + ", " + std::to_string(g) +
                                ")");
                    }
                }
            cat->set_compose(g, f, MorId(cls));
        }
    cat->finalize();
    cat->validate();  // associativity and units, exhaustively
    out.cat = cat;
    return out;
}

HomAction ho_post_pre_compose(const HoCat& h, MorId f) {
    const FinCat& c = *h.cat;
    HomAction act;
    for (MorId g = 0; g < c.num_morphisms(); ++g) {
        if (c.mor_tgt[g] == c.mor_src[f])
            act.post.emplace_back(g, c.compose(f, g));
        if (c.mor_src[g] == c.mor_tgt[f])
            act.pre.emplace_back(g, c.compose(g, f));
    }
    return act;
}

Verdict is_hoequiv_with(const TruncSSpace& w, const HoCat& ho,
                        std::uint32_t g) {
    if (w.m_trunc < 3)
        return Verdict::unknown("m truncation below 3; no lift candidates");
    std::uint32_t x = source_of(w, g), y = target_of(w, g);
    std::uint32_t idx = identity_of(w, x), idy = identity_of(w, y);
    // lift search: H in W_3 with edge(1,2) = g, edge(0,2) = id_y,
    // edge(1,3) = id_x
    std::int64_t lift = -1;
    for (std::uint32_t h = 0; h < w.level[3].size[0]; ++h) {
        if (w.outer_apply({1, 2}, 3, 0, h) != g) continue;
        if (w.outer_apply({0, 2}, 3, 0, h) != idy) continue;
        if (w.outer_apply({1, 3}, 3, 0, h) != idx) continue;
        lift = h;
        break;
    }
    // invertibility of [g] in ho W
    std::int64_t cls = ho.class_of_vertex[g];
    bool invertible = cls >= 0 && ho.cat->is_iso(MorId(cls));
    if ((lift >= 0) != invertible)
        throw InvariantError(
            "lift criterion and ho-invertibility disagree; input is outside "
            "the decidable fragment");
    if (lift >= 0)
        return Verdict::yes("3-cell lift found", json{{"lift", lift}});
    return Verdict::no("[g] has no inverse in the homotopy category");
}

Verdict is_hoequiv(const TruncSSpace& w, std::uint32_t g) {
    HoCat ho = ho_category(w);
    return is_hoequiv_with(w, ho, g);
}

HoequivSubspace hoequiv_subspace(SSpacePtr wp) {
    const TruncSSpace& w = *wp;
    HoCat ho = ho_category(w);
    HoequivSubspace out;
    out.hoequiv_vertex.assign(w.level[1].size[0], 0);
    for (std::uint32_t g = 0; g < w.level[1].size[0]; ++g)
        out.hoequiv_vertex[g] = is_hoequiv_with(w, ho, g).is_yes() ? 1 : 0;

    Pi0 comps = pi0(w.level[1]);
    std::vector<char> keep(comps.count, 0);
    // verdicts must be uniform per component
    std::vector<std::int8_t> seen(comps.count, -1);
    for (std::uint32_t g = 0; g < w.level[1].size[0]; ++g) {
        std::int8_t v = out.hoequiv_vertex[g];
        auto& s = seen[comps.component[g]];
        if (s < 0)
            s = v;
        else if (s != v)
            throw InvariantError(
                "homotopy equivalences are not a union of components");
        if (v) keep[comps.component[g]] = 1;
    }
    // identities land inside
    for (std::uint32_t x = 0; x < num_objects_of(w); ++x)
        if (!keep[comps.component[identity_of(w, x)]])
            throw InvariantError("an identity fell outside the subspace");

    out.component_count = 0;
    for (char c : keep) out.component_count += (c != 0);
    out.space = component_subcomplex(w.level[1], keep, comps);
    // groupoid tag for the decidable fragment
    if (w.level[1].nerve_tag && w.level[1].nerve_tag->groupoid) {
        std::vector<ObjId> kept_objs;
        for (std::uint32_t v = 0; v < w.level[1].size[0]; ++v)
            if (keep[comps.component[v]]) kept_objs.push_back(v);
        auto subcat =
            full_subcategory(*w.level[1].nerve_tag->cat, kept_objs);
        out.space.nerve_tag = std::make_shared<TruncSSet::NerveTag>(
            TruncSSet::NerveTag{subcat, true});
    }

    out.vertex_map.resize(w.level[1].trunc + 1);
    // fiberwise inclusion indexes (recomputed the same way as the subcomplex)
    {
        std::vector<std::uint32_t> cur;
        for (int n = 0; n <= w.level[1].trunc; ++n) {
            cur.clear();
            for (std::uint32_t c = 0; c < w.level[1].size[n]; ++c) {
                std::uint32_t v = c;
                for (int k = n; k >= 1; --k) v = w.level[1].face[k][k][v];
                if (keep[comps.component[v]]) cur.push_back(c);
            }
            out.vertex_map[n] = cur;
        }
    }

    out.sub = SubObject::empty(wp);
    for (int n = 0; n <= w.level[1].trunc; ++n)
        for (std::uint32_t c : out.vertex_map[n]) out.sub.mask[1][n][c] = 1;
    out.sub.close();
    return out;
}

namespace {

// s_0 as a map of truncated simplicial sets W_0 -> W_1.
std::vector<std::vector<std::uint32_t>> s0_level_map(const TruncSSpace& w) {
    std::vector<std::vector<std::uint32_t>> out(w.level[1].trunc + 1);
    for (int n = 0; n <= w.level[1].trunc; ++n)
        out[n] = w.outer_degen[0][0][n];
    return out;
}

}  // namespace

Verdict completeness_check(SSpacePtr wp, const Bounds& b) {
    const TruncSSpace& w = *wp;
    SegalReport rep = segal_check(w);
    if (!rep.all_bijective())
        return Verdict::unknown("input fails the Segal condition",
                                rep.to_json());
    HoequivSubspace hs = hoequiv_subspace(wp);
    const TruncSSet& w0 = w.level[0];
    auto s0 = s0_level_map(w);

    json detail;
    detail["w0_pi0"] = pi0(w0).count;
    detail["hoequiv_pi0"] = hs.component_count;

    // cross-check: pi0 of W_0 against pi0 of Map(E, W); only meaningful when
    // the mapping space is exact inside the window
    std::optional<bool> cross_check;
    {
        auto e1 = iso_interval_category(1);
        auto espace = std::make_shared<TruncSSpace>(
            discrete_nerve(e1.cat, w.window(), b));
        MappingSpace ms = mapping_space(espace, wp, 1, b);
        if (ms.exact) {
            Pi0 msp = pi0(ms.space);
            Pi0 w0p = pi0(w0);
            detail["map_e_pi0"] = msp.count;
            cross_check = (msp.count == w0p.count);
            detail["criterion2_pi0_match"] = *cross_check;
        } else {
            detail["criterion2_pi0_match"] = "window-limited";
        }
    }
    auto consistent = [&](bool yes) {
        if (cross_check && *cross_check != yes)
            throw InvariantError(
                "completeness verdict disagrees with the Map(E, W) criterion");
    };

    // decidable fragment (a): both spaces discrete
    if (w0.is_discrete() && hs.space.is_discrete()) {
        bool yes = w0.size[0] == hs.space.size[0];
        detail["kind"] = "discrete";
        consistent(yes);
        if (yes)
            return Verdict::yes("s_0 is a bijection of discrete spaces",
                                detail);
        return Verdict::no("vertex counts differ", detail);
    }
    // decidable fragment (b): groupoid-nerve tags on both sides
    if (w0.nerve_tag && w0.nerve_tag->groupoid && hs.space.nerve_tag &&
        hs.space.nerve_tag->groupoid) {
        // realize s_0 as a functor between the tag groupoids
        const FinCat& g0 = *w0.nerve_tag->cat;
        const FinCat& g1 = *hs.space.nerve_tag->cat;
        std::vector<std::int64_t> vidx(w.level[1].size[0], -1);
        for (std::uint32_t i = 0; i < hs.vertex_map[0].size(); ++i)
            vidx[hs.vertex_map[0][i]] = i;
        std::vector<std::int64_t> eidx(w.level[1].size[1], -1);
        for (std::uint32_t i = 0; i < hs.vertex_map[1].size(); ++i)
            eidx[hs.vertex_map[1][i]] = i;
        Functor s;
        s.source = w0.nerve_tag->cat;
        s.target = hs.space.nerve_tag->cat;
        s.obj_map.resize(g0.num_objects());
        for (ObjId x = 0; x < g0.num_objects(); ++x) {
            std::int64_t v = vidx[s0[0][x]];
            if (v < 0)
                throw InvariantError("s_0 leaves the hoequiv components");
            s.obj_map[x] = ObjId(v);
        }
        s.mor_map.resize(g0.num_morphisms());
        for (MorId f = 0; f < g0.num_morphisms(); ++f) {
            std::int64_t e = eidx[s0[1][f]];
            if (e < 0)
                throw InvariantError("s_0 leaves the hoequiv components");
            s.mor_map[f] = MorId(e);
        }
        s.validate();
        Verdict v = is_equivalence(s);
        detail["kind"] = "groupoid-nerve";
        detail["functor_check"] = v.to_json();
        consistent(v.is_yes());
        if (v.is_yes())
            return Verdict::yes("s_0 induces an equivalence of groupoids",
                                detail);
        return Verdict::no("s_0 is not an equivalence of groupoids", detail);
    }
    return Verdict::unknown("mapping data outside the decidable fragment",
                            detail);
}

Verdict dk_check(const SSpaceMap& f, const Bounds& b) {
    const TruncSSpace& u = *f.source;
    const TruncSSpace& v = *f.target;
    SegalReport ru = segal_check(u);
    SegalReport rv = segal_check(v);
    if (!ru.all_bijective() || !rv.all_bijective())
        return Verdict::unknown("an endpoint fails the Segal condition");

    HoCat hu = ho_category(u);
    HoCat hv = ho_category(v);
    // induced functor on homotopy categories
    Functor hof;
    auto husp = hu.cat;
    auto hvsp = hv.cat;
    hof.source = husp;
    hof.target = hvsp;
    hof.obj_map.assign(f.maps[0][0].begin(), f.maps[0][0].end());
    hof.mor_map.resize(hu.cat->num_morphisms());
    for (MorId m = 0; m < hu.cat->num_morphisms(); ++m) {
        std::uint32_t rep = hu.hom_origin[m];
        std::int64_t cls = hv.class_of_vertex[f.maps[1][0][rep]];
        if (cls < 0) throw InvariantError("image vertex outside its fiber");
        hof.mor_map[m] = MorId(cls);
    }
    hof.validate();
    Verdict ho_eq = is_equivalence(hof);
    if (ho_eq.is_no())
        return Verdict::no("ho functor is not an equivalence", ho_eq.witness);

    // mapping fibers
    for (std::uint32_t x = 0; x < num_objects_of(u); ++x)
        for (std::uint32_t y = 0; y < num_objects_of(u); ++y) {
            MapFiber mu = map_space(u, x, y);
            MapFiber mv =
                map_space(v, f.maps[0][0][x], f.maps[0][0][y]);
            if (mu.space.is_discrete() && mv.space.is_discrete()) {
                // weak equivalence of discrete spaces: vertex bijection
                std::set<std::uint32_t> image;
                for (std::uint32_t c : mu.parent_cell[0])
                    image.insert(f.maps[1][0][c]);
                if (image.size() != mu.space.size[0] ||
                    image.size() != mv.space.size[0])
                    return Verdict::no(
                        "mapping fiber fails the bijection check",
                        json{{"pair", {x, y}},
                             {"source_points", mu.space.size[0]},
                             {"image_points", image.size()},
                             {"target_points", mv.space.size[0]}});
            } else {
                return Verdict::unknown(
                    "a mapping fiber leaves the decidable fragment",
                    json{{"pair", {x, y}}});
            }
        }
    (void)b;
    return Verdict::yes("equivalence on ho and bijective mapping fibers");
}

std::shared_ptr<FinCat> zigzag_category() {
    auto c = std::make_shared<FinCat>();
    c->obj_names = {"0", "1", "2", "3"};
    c->mor_names = {"a", "b", "c", "id0", "id1", "id2", "id3"};
    c->mor_src = {0, 1, 1, 0, 1, 2, 3};
    c->mor_tgt = {2, 2, 3, 0, 1, 2, 3};
    c->identity = {3, 4, 5, 6};
    c->finalize();
    c->validate();
    return c;
}

TruncSSpace standard_Z3(const Window& w) {
    return discrete_nerve(zigzag_category(), w);
}

Verdict categorical_homotopy_search(const SSpaceMap& f, const SSpaceMap& g,
                                    const Bounds& b) {
    if (!(f.source->window() == g.source->window()) ||
        !(f.target->window() == g.target->window()))
        throw SegalError("categorical homotopy needs parallel maps");
    SSpacePtr u = f.source;
    SSpacePtr v = f.target;
    auto e1 = iso_interval_category(1);
    auto espace = discrete_nerve(e1.cat, u->window(), b);
    auto prod =
        std::make_shared<TruncSSpace>(sspace_product(*u, espace));
    // locate the two constant columns of E
    // vertex 0 = object x, vertex 1 = object y of I[1]
    Complex cp = prod->to_complex();
    Complex cv = v->to_complex();
    MapSearch p;
    p.domain = &cp;
    p.codomain = &cv;
    p.max_solutions = 1;
    p.max_nodes = b.max_nodes;
    auto gs = prod->grades();
    p.seed.resize(gs.size());
    for (std::size_t gi = 0; gi < gs.size(); ++gi)
        p.seed[gi].assign(prod->cells(gs[gi].first, gs[gi].second), -1);
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
        auto [m, n] = gs[gi];
        std::uint32_t ex = degenerate_tower(espace, 0, m, n);
        std::uint32_t ey = degenerate_tower(espace, 1, m, n);
        std::uint32_t esz = espace.cells(m, n);
        for (std::uint32_t cu = 0; cu < u->cells(m, n); ++cu) {
            p.seed[gi][cu * esz + ex] = f.maps[m][n][cu];
            p.seed[gi][cu * esz + ey] = g.maps[m][n][cu];
        }
    }
    auto r = enumerate_complex_maps(p);
    if (!r.solutions.empty())
        return Verdict::yes("homotopy found");
    if (!r.complete)
        return Verdict::unknown("search bound exceeded",
                                json{{"nodes", r.nodes}});
    return Verdict::no("no homotopy exists at this window");
}

Verdict categorical_equivalence_search(const SSpaceMap& f, const Bounds& b) {
    SSpacePtr u = f.source;
    SSpacePtr v = f.target;
    auto candidates = sspace_maps(v, u, b);
    if (!candidates.complete)
        return Verdict::unknown("candidate enumeration exceeded bounds");
    // the enumeration restricted both sides to the common window; align f
    Window cw = candidates.source->window();
    SSpaceMap fr;
    fr.source = candidates.target;  // restricted u
    fr.target = candidates.source;  // restricted v
    fr.maps.resize(cw.m + 1);
    for (int m = 0; m <= cw.m; ++m)
        fr.maps[m].assign(f.maps[m].begin(),
                          f.maps[m].begin() + cw.n_at(m) + 1);
    bool bound_hit = false;
    for (std::size_t i = 0; i < candidates.maps.size(); ++i) {
        const SSpaceMap& g = candidates.maps[i];
        SSpaceMap fg = compose_sspace_maps(fr, g);  // v -> v
        SSpaceMap gf = compose_sspace_maps(g, fr);  // u -> u
        Verdict h1 = categorical_homotopy_search(
            fg, identity_sspace_map(candidates.source), b);
        if (h1.is_unknown()) bound_hit = true;
        if (!h1.is_yes()) continue;
        Verdict h2 = categorical_homotopy_search(
            gf, identity_sspace_map(candidates.target), b);
        if (h2.is_unknown()) bound_hit = true;
        if (h2.is_yes())
            return Verdict::yes("inverse with homotopies found",
                                json{{"candidate", i}});
    }
    if (bound_hit)
        return Verdict::unknown("a homotopy search exceeded its bound");
    return Verdict::no("no categorical inverse at this window");
}

std::shared_ptr<FinCat> category_from_discrete_segal(SSpacePtr wp) {
    const TruncSSpace& w = *wp;
    if (!w.levelwise_discrete())
        throw SegalError("input is not discrete in the space direction");
    SegalReport rep = segal_check(w);
    if (!rep.all_bijective())
        throw SegalError("input fails the Segal condition");
    auto cat = std::make_shared<FinCat>();
    for (std::uint32_t v = 0; v < w.level[0].size[0]; ++v)
        cat->obj_names.push_back("v" + std::to_string(v));
    cat->identity.resize(w.level[0].size[0]);
    for (std::uint32_t v = 0; v < w.level[0].size[0]; ++v)
        cat->identity[v] = identity_of(w, v);
    for (std::uint32_t e = 0; e < w.level[1].size[0]; ++e) {
        cat->mor_src.push_back(source_of(w, e));
        cat->mor_tgt.push_back(target_of(w, e));
        cat->mor_names.push_back("e" + std::to_string(e));
    }
    for (std::uint32_t fe = 0; fe < w.level[1].size[0]; ++fe)
        for (std::uint32_t ge = 0; ge < w.level[1].size[0]; ++ge) {
            if (target_of(w, fe) != source_of(w, ge)) continue;
            auto results = compose_results(w, fe, ge);
            if (results.size() != 1)
                throw SegalError("composition lift is not unique");
            cat->set_compose(ge, fe, results.front());
        }
    cat->finalize();
    cat->validate();

    // the discrete nerve of the result is the input
    auto dn = discrete_nerve(cat, w.window());
    if (!sspace_iso(dn, w).has_value())
        throw InvariantError(
            "reconstructed category does not regenerate the input");
    return cat;
}

}  // namespace segal
