#include "segal/completion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace segal {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

std::vector<std::uint32_t> flatten(const GradedMap& gm) {
    std::vector<std::uint32_t> flat;
    for (auto& g : gm) flat.insert(flat.end(), g.begin(), g.end());
    return flat;
}

// Words over [p] of length m+1 indexed like the level functors of E(p): the
// functor order produced by enumerate_level_functors on I[p], which walks
// objects then outgoing morphisms in id order.  For I[p] the morphism from x
// to y has id x*(p+1)+y, so from(x) lists targets in object order and the
// induced word order is lexicographic.
std::uint32_t word_index(const std::vector<int>& word, int p) {
    std::uint32_t idx = 0;
    for (int v : word) idx = idx * std::uint32_t(p + 1) + std::uint32_t(v);
    return idx;
}

// transfer tables for precomposition with
//   E(delta_e) x F(delta_f) x Delta(delta_d)
// between the window-aligned quadruple products; produces, per grade (m, q)
// of the target product, the source-product cell index.
std::vector<std::vector<std::uint32_t>> quad_transfer(
    const TruncSSpace& xw,  // supplies the window (grades and depths)
    int pe_from, int pe_to, const std::vector<int>& delta_e, int nf_from,
    int nf_to, const std::vector<int>& delta_f, int pd_from, int pd_to,
    const std::vector<int>& delta_d) {
    int depth = 0;
    for (int m = 0; m <= xw.m_trunc; ++m)
        depth = std::max(depth, xw.level[m].trunc);
    std::vector<std::vector<std::uint32_t>> out;
    for (int m = 0; m <= xw.m_trunc; ++m) {
        // E-part: words over [pe] of length m+1
        std::uint32_t es_from = 1, es_to = 1;
        for (int j = 0; j <= m; ++j) {
            es_from *= std::uint32_t(pe_from + 1);
            es_to *= std::uint32_t(pe_to + 1);
        }
        std::vector<std::uint32_t> etab(es_to);
        {
            std::vector<int> word(m + 1, 0);
            for (std::uint32_t c = 0; c < es_to; ++c) {
                // decode base-(pe_to+1) digits, most significant first
                std::uint32_t rem = c;
                for (int j = m; j >= 0; --j) {
                    word[j] = int(rem % (pe_to + 1));
                    rem /= (pe_to + 1);
                }
                std::vector<int> img(m + 1);
                for (int j = 0; j <= m; ++j) img[j] = delta_e[word[j]];
                etab[c] = word_index(img, pe_from);
            }
        }
        // F-part: monotone tuples
        auto ffrom = monotone_maps(m, nf_from);
        auto fto = monotone_maps(m, nf_to);
        std::vector<std::uint32_t> ftab(fto.size());
        for (std::uint32_t c = 0; c < fto.size(); ++c) {
            std::vector<int> t = fto[c];
            for (int& v : t) v = delta_f[v];
            ftab[c] = monotone_index(t, nf_from);
        }
        for (int q = 0; q <= xw.level[m].trunc; ++q) {
            auto dfrom = monotone_maps(q, pd_from);
            auto dto = monotone_maps(q, pd_to);
            std::vector<std::uint32_t> dtab(dto.size());
            for (std::uint32_t c = 0; c < dto.size(); ++c) {
                std::vector<int> t = dto[c];
                for (int& v : t) v = delta_d[v];
                dtab[c] = monotone_index(t, pd_from);
            }
            std::uint32_t fs_from = std::uint32_t(ffrom.size());
            std::uint32_t ds_from = std::uint32_t(dfrom.size());
            std::vector<std::uint32_t> tab(std::size_t(es_to) * fto.size() *
                                           dto.size());
            std::size_t at = 0;
            for (std::uint32_t ce = 0; ce < es_to; ++ce)
                for (std::uint32_t cf = 0; cf < fto.size(); ++cf)
                    for (std::uint32_t cd = 0; cd < dto.size(); ++cd)
                        tab[at++] = (etab[ce] * fs_from + ftab[cf]) * ds_from +
                                    dtab[cd];
            out.push_back(std::move(tab));
        }
    }
    return out;
}

std::vector<std::uint32_t> gather(const GradedMap& rep,
                                  const std::vector<std::vector<std::uint32_t>>&
                                      transfer) {
    std::vector<std::uint32_t> flat;
    for (std::size_t g = 0; g < transfer.size(); ++g)
        for (std::uint32_t c : transfer[g]) flat.push_back(rep[g][c]);
    return flat;
}

std::vector<int> coface(int i, int m) {
    std::vector<int> d;
    for (int j = 0; j <= m - 1; ++j) d.push_back(j < i ? j : j + 1);
    return d;
}

std::vector<int> codegen(int i, int m) {
    std::vector<int> d;
    for (int j = 0; j <= m + 1; ++j) d.push_back(j <= i ? j : j - 1);
    return d;
}

std::vector<int> idmap(int m) {
    std::vector<int> d(m + 1);
    std::iota(d.begin(), d.end(), 0);
    return d;
}

}  // namespace

TruncSSpace standard_E(int m, const Window& w, const Bounds& b) {
    return discrete_nerve(iso_interval_category(m).cat, w, b);
}

CompletionResult completion_tilde(SSpacePtr wp, const Bounds& b) {
    const Window win = wp->window();
    CompletionResult out;
    out.input = wp;

    Complex cw = wp->to_complex();
    auto tilde = std::make_shared<TruncSSpace>();
    TruncSSpace& t = *tilde;
    t.m_trunc = win.m;
    t.level.resize(win.m + 1);
    t.outer_face.resize(win.m + 1);
    t.outer_degen.resize(win.m + 1);

    // products E(p) x F(n) x Delta[p], window-aligned with W
    std::vector<std::vector<std::shared_ptr<TruncSSpace>>> prods(win.m + 1);
    std::vector<std::vector<std::vector<GradedMap>>> reps(win.m + 1);
    std::vector<std::vector<std::unordered_map<std::vector<std::uint32_t>,
                                               std::uint32_t, VecHash>>>
        key_index(win.m + 1);

    int depth = 0;
    for (int m = 0; m <= win.m; ++m) depth = std::max(depth, win.n_at(m));

    for (int n = 0; n <= win.m; ++n) {
        int pt = win.n_at(n);
        TruncSSet& lv = t.level[n];
        lv.trunc = pt;
        lv.size.assign(pt + 1, 0);
        lv.face.resize(pt + 1);
        lv.degen.resize(pt + 1);
        prods[n].resize(pt + 1);
        reps[n].resize(pt + 1);
        key_index[n].resize(pt + 1);
        TruncSSpace fn = standard_F(n, win);
        for (int p = 0; p <= pt; ++p) {
            TruncSSpace ep = standard_E(p, win, b);
            TruncSSpace base = sspace_product(ep, fn);
            TruncSSet dl = delta_sset(p, depth);
            auto prod = std::make_shared<TruncSSpace>(
                sspace_product(base, const_sspace(dl, win.m)));
            prods[n][p] = prod;
            Complex cp = prod->to_complex();
            MapSearch ms;
            ms.domain = &cp;
            ms.codomain = &cw;
            ms.max_solutions = b.max_maps;
            ms.max_nodes = b.max_nodes;
            auto r = enumerate_complex_maps(ms);
            if (!r.complete) out.complete = false;
            std::vector<std::pair<std::vector<std::uint32_t>, GradedMap>> sols;
            for (auto& s : r.solutions)
                sols.push_back({flatten(s), std::move(s)});
            std::sort(sols.begin(), sols.end(),
                      [](auto& a, auto& bb) { return a.first < bb.first; });
            lv.size[p] = std::uint32_t(sols.size());
            for (std::uint32_t i = 0; i < sols.size(); ++i) {
                key_index[n][p][sols[i].first] = i;
                reps[n][p].push_back(std::move(sols[i].second));
            }
        }
    }

    // inner structure of level n: simultaneous E- and Delta-precomposition
    for (int n = 0; n <= win.m; ++n) {
        TruncSSet& lv = t.level[n];
        for (int p = 1; p <= lv.trunc; ++p) {
            lv.face[p].assign(p + 1, std::vector<std::uint32_t>(lv.size[p]));
            for (int i = 0; i <= p; ++i) {
                auto transfer =
                    quad_transfer(*wp, p, p - 1, coface(i, p), n, n, idmap(n),
                                  p, p - 1, coface(i, p));
                for (std::uint32_t cell = 0; cell < lv.size[p]; ++cell)
                    lv.face[p][i][cell] = key_index[n][p - 1].at(
                        gather(reps[n][p][cell], transfer));
            }
        }
        for (int p = 0; p < lv.trunc; ++p) {
            lv.degen[p].assign(p + 1, std::vector<std::uint32_t>(lv.size[p]));
            for (int i = 0; i <= p; ++i) {
                auto transfer =
                    quad_transfer(*wp, p, p + 1, codegen(i, p), n, n, idmap(n),
                                  p, p + 1, codegen(i, p));
                for (std::uint32_t cell = 0; cell < lv.size[p]; ++cell)
                    lv.degen[p][i][cell] = key_index[n][p + 1].at(
                        gather(reps[n][p][cell], transfer));
            }
        }
    }
    // outer structure: F-precomposition
    for (int n = 1; n <= win.m; ++n) {
        t.outer_face[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            t.outer_face[n][i].resize(t.level[n].trunc + 1);
            for (int p = 0; p <= t.level[n].trunc; ++p) {
                auto transfer = quad_transfer(*wp, p, p, idmap(p), n, n - 1,
                                              coface(i, n), p, p, idmap(p));
                auto& tab = t.outer_face[n][i][p];
                tab.resize(t.level[n].size[p]);
                for (std::uint32_t cell = 0; cell < t.level[n].size[p]; ++cell)
                    tab[cell] = key_index[n - 1][p].at(
                        gather(reps[n][p][cell], transfer));
            }
        }
    }
    for (int n = 0; n < win.m; ++n) {
        t.outer_degen[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            t.outer_degen[n][i].resize(t.level[n + 1].trunc + 1);
            for (int p = 0; p <= t.level[n + 1].trunc; ++p) {
                auto transfer = quad_transfer(*wp, p, p, idmap(p), n, n + 1,
                                              codegen(i, n), p, p, idmap(p));
                auto& tab = t.outer_degen[n][i][p];
                tab.resize(t.level[n].size[p]);
                for (std::uint32_t cell = 0; cell < t.level[n].size[p]; ++cell)
                    tab[cell] = key_index[n + 1][p].at(
                        gather(reps[n][p][cell], transfer));
            }
        }
    }

    // the natural map: a cell of W at (n, p) goes to the map that forgets the
    // E-coordinate and evaluates the (phi, delta)-restriction of the cell
    out.natural_map.source = wp;
    out.natural_map.target = tilde;
    out.natural_map.maps.resize(win.m + 1);
    for (int n = 0; n <= win.m; ++n) {
        out.natural_map.maps[n].resize(win.n_at(n) + 1);
        for (int p = 0; p <= win.n_at(n); ++p) {
            auto& row = out.natural_map.maps[n][p];
            row.resize(wp->cells(n, p));
            const TruncSSpace& prod = *prods[n][p];
            for (std::uint32_t c = 0; c < wp->cells(n, p); ++c) {
                std::vector<std::uint32_t> flat;
                for (int m = 0; m <= win.m; ++m) {
                    std::uint32_t es = 1;
                    for (int j = 0; j <= m; ++j) es *= std::uint32_t(p + 1);
                    auto ftuples = monotone_maps(m, n);
                    for (int q = 0; q <= prod.level[m].trunc; ++q) {
                        auto dtuples = monotone_maps(q, p);
                        for (std::uint32_t ce = 0; ce < es; ++ce)
                            for (auto& ft : ftuples) {
                                // n-direction restriction first, then the
                                // space-direction one
                                std::uint32_t mid =
                                    wp->outer_apply(ft, n, p, c);
                                for (auto& dt : dtuples)
                                    flat.push_back(
                                        wp->level[m].apply(p, dt, mid));
                            }
                    }
                }
                row[c] = key_index[n][p].at(flat);
            }
        }
    }

    // the domains are generated in the space direction within the window (the
    // Delta factors), so exactness only needs the outer coskeletality of W
    out.exact =
        wp->cosk_bidegree.has_value() && wp->cosk_bidegree->first <= win.m;
    out.tilde = tilde;
    return out;
}

Verdict tilde_dk_check(SSpacePtr wp, const Bounds& b) {
    CompletionResult res = completion_tilde(wp, b);
    return dk_check(res.natural_map, b);
}

}  // namespace segal
