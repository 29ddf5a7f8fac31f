#include "segal/covers.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "segal/homotopy.hpp"

namespace segal {

namespace {

// (i, k) index pairs of the alpha-images with k >= 1 inside F(n).
std::vector<std::pair<int, int>> alpha_candidates(int n) {
    std::vector<std::pair<int, int>> out;
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i + k <= n; ++i) out.emplace_back(i, k);
    return out;
}

}  // namespace

Verdict is_cover(const SubObject& g, int n) {
    SSpacePtr fn = g.parent;
    if (!g.is_closed())
        return Verdict::no("not a subobject: not operator-closed");
    if (g.count(0, 0) != std::uint32_t(n + 1))
        return Verdict::no("does not contain every vertex",
                           json{{"vertices", g.count(0, 0)}});
    // the spine must lie inside; a union of alpha-images through every
    // vertex that skipped a spine edge would not receive a map from G(n),
    // which the decomposition arguments require
    if (!g.contains(standard_G(n, fn)))
        return Verdict::no("does not contain the spine");
    SubObject acc = SubObject::empty(fn);
    std::vector<std::pair<int, int>> used;
    for (auto [i, k] : alpha_candidates(n)) {
        SubObject img = alpha_image(i, k, n, fn);
        if (g.contains(img)) {
            acc = acc.unite(img);
            used.emplace_back(i, k);
        }
    }
    if (acc == g) {
        json w = json::array();
        for (auto& [i, k] : used) w.push_back({i, k});
        return Verdict::yes("union of alpha-images containing the spine", w);
    }
    return Verdict::no("not a union of alpha-images");
}

std::vector<Cover> enumerate_covers(int n, SSpacePtr fn) {
    auto candidates = alpha_candidates(n);
    std::vector<SubObject> images;
    for (auto [i, k] : candidates) images.push_back(alpha_image(i, k, n, fn));
    SubObject spine = standard_G(n, fn);
    std::vector<Cover> out;
    std::set<std::vector<std::vector<std::vector<char>>>> seen;
    const std::size_t subsets = std::size_t(1) << candidates.size();
    for (std::size_t bits = 1; bits < subsets; ++bits) {
        SubObject u = SubObject::empty(fn);
        std::vector<std::pair<int, int>> cs;
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (bits & (std::size_t(1) << j)) {
                u = u.unite(images[j]);
                cs.push_back(candidates[j]);
            }
        if (!u.contains(spine)) continue;
        if (!seen.insert(u.mask).second) continue;
        out.push_back(Cover{n, std::move(cs), std::move(u)});
    }
    // canonical order: by cell count, then mask
    std::sort(out.begin(), out.end(), [](const Cover& a, const Cover& b) {
        auto ca = a.realized.cell_count(), cb = b.realized.cell_count();
        if (ca != cb) return ca < cb;
        return a.realized.mask < b.realized.mask;
    });
    return out;
}

namespace {

// Subobject of F(1) x F(n) built from a cell predicate on tuple pairs.
template <typename Pred>
SubObject prism_subobject(SSpacePtr prism, int n, Pred keep) {
    const TruncSSpace& p = *prism;
    SubObject s = SubObject::empty(prism);
    for (int m = 0; m <= p.m_trunc; ++m) {
        auto left = monotone_maps(m, 1);
        auto right = monotone_maps(m, n);
        for (std::uint32_t a = 0; a < left.size(); ++a)
            for (std::uint32_t b = 0; b < right.size(); ++b) {
                if (!keep(left[a], right[b])) continue;
                std::uint32_t cell = a * std::uint32_t(right.size()) + b;
                for (int nn = 0; nn <= p.level[m].trunc; ++nn)
                    s.mask[m][nn][cell] = 1;
            }
    }
    return s;
}

}  // namespace

Verdict prism_decomposition_check(int n) {
    Window w = Window::rect(n + 1, 0);
    auto f1 = standard_F(1, w);
    auto fn = standard_F(n, w);
    auto prism = std::make_shared<TruncSSpace>(sspace_product(f1, fn));

    // gamma^i(j) = (0, j) for j <= i, (1, j-1) for j > i: a pair of tuples is
    // in the image iff it is gamma^i of a monotone [m] -> [n+1]
    auto gamma_image = [&](int i) {
        return prism_subobject(
            prism, n, [i](const std::vector<int>& a, const std::vector<int>& b) {
                // reconstruct the preimage tuple and check monotonicity
                int prev = -1;
                for (std::size_t j = 0; j < a.size(); ++j) {
                    int v;
                    if (a[j] == 0) {
                        if (b[j] > i) return false;
                        v = b[j];
                    } else {
                        v = b[j] + 1;
                        if (v <= i) return false;
                    }
                    if (v < prev) return false;
                    prev = v;
                }
                return true;
            });
    };
    auto delta_image = [&](int i) {
        return prism_subobject(
            prism, n, [i](const std::vector<int>& a, const std::vector<int>& b) {
                for (std::size_t j = 0; j < a.size(); ++j) {
                    if (a[j] == 0 && b[j] > i) return false;
                    if (a[j] == 1 && b[j] <= i) return false;
                }
                // monotone automatically: b is monotone
                return true;
            });
    };

    SubObject uni = SubObject::empty(prism);
    for (int i = 0; i <= n; ++i) {
        SubObject g = gamma_image(i);
        if (!g.is_closed())
            return Verdict::no("a prism piece is not a subobject",
                               json{{"gamma", i}});
        uni = uni.unite(g);
    }
    for (int i = 0; i < n; ++i) {
        SubObject d = delta_image(i);
        if (!d.is_closed())
            return Verdict::no("a gluing piece is not a subobject",
                               json{{"delta", i}});
        if (!(gamma_image(i).intersect(gamma_image(i + 1)) == d))
            return Verdict::no(
                "consecutive pieces do not meet in the stated face",
                json{{"i", i}});
    }
    if (!(uni == SubObject::whole(prism)))
        return Verdict::no("the pieces do not fill the prism");
    return Verdict::yes("prism decomposed into " + std::to_string(n + 1) +
                        " pieces");
}

namespace {

// Cells of F(k) as tuple predicates, realized inside the discrete nerve of
// I[1] along the word map sigma_k, all at space truncation 0.

std::vector<int> alternating_word(int len) {  // x y x y ... as object ids
    std::vector<int> w(len);
    for (int i = 0; i < len; ++i) w[i] = i % 2;
    return w;
}

// functor index of a word inside discrete_nerve(I[1]) level m
std::uint32_t word_cell(const TruncSSpace& e, int m,
                        const std::vector<int>& word) {
    const auto& objs = e.tag->level_functor_objects[m];
    for (std::uint32_t f = 0; f < objs.size(); ++f) {
        bool ok = true;
        for (int j = 0; j <= m; ++j)
            if (int(objs[f][j]) != word[j]) {
                ok = false;
                break;
            }
        if (ok) return f;
    }
    throw SegalError("word cell not found");
}

SubObject stage_subobject(SSpacePtr e, int j) {
    std::vector<int> w = alternating_word(j + 1);
    std::uint32_t seed = word_cell(*e, j, w);
    return generated_by(e, {{j, 0, seed}});
}

// image of sigma_k on a mask over the cells of F(k)
SubObject sigma_image(SSpacePtr e, int k,
                      const std::vector<std::vector<char>>& fk_mask) {
    const TruncSSpace& es = *e;
    std::vector<int> w = alternating_word(k + 1);
    SubObject s = SubObject::empty(e);
    for (int m = 0; m <= es.m_trunc; ++m) {
        auto tuples = monotone_maps(m, k);
        for (std::uint32_t c = 0; c < tuples.size(); ++c) {
            if (!fk_mask[m][c]) continue;
            std::vector<int> word(m + 1);
            for (int j = 0; j <= m; ++j) word[j] = w[tuples[c][j]];
            std::uint32_t img = word_cell(es, m, word);
            for (int nn = 0; nn <= es.level[m].trunc; ++nn)
                s.mask[m][nn][img] = 1;
        }
    }
    return s;
}

// mask over F(k) cells from a tuple predicate
template <typename Pred>
std::vector<std::vector<char>> fk_mask_where(int k, int m_trunc, Pred keep) {
    std::vector<std::vector<char>> mask(m_trunc + 1);
    for (int m = 0; m <= m_trunc; ++m) {
        auto tuples = monotone_maps(m, k);
        mask[m].assign(tuples.size(), 0);
        for (std::uint32_t c = 0; c < tuples.size(); ++c)
            if (keep(tuples[c])) mask[m][c] = 1;
    }
    return mask;
}

bool image_contains_range(const std::vector<int>& t, int lo, int hi) {
    std::vector<char> hit(hi + 1, 0);
    for (int v : t)
        if (v >= lo && v <= hi) hit[v] = 1;
    for (int v = lo; v <= hi; ++v)
        if (!hit[v]) return false;
    return true;
}

}  // namespace

EFiltration e_filtration(int k, int m_trunc, const Bounds& b) {
    if (k > m_trunc) throw SegalError("filtration stage beyond the window");
    auto e1 = iso_interval_category(1);
    EFiltration out;
    out.e = std::make_shared<TruncSSpace>(
        discrete_nerve(e1.cat, Window::rect(m_trunc, 0), b));
    out.stage.reserve(k);
    for (int j = 1; j <= k; ++j) out.stage.push_back(stage_subobject(out.e, j));

    // counts: E has 2^(m+1) cells and exactly two non-degenerate points per
    // level m >= 1; stage j has two below level j and one at the top
    json detail;
    bool ok = true;
    for (int m = 0; m <= m_trunc; ++m) {
        if (out.e->cells(m, 0) != (1u << (m + 1))) ok = false;
        int nd = 0;
        for (std::uint32_t c = 0; c < out.e->cells(m, 0); ++c)
            if (!out.e->bidegree_degenerate(m, 0, c)) ++nd;
        if (m >= 1 && nd != 2) ok = false;
        if (m == 0 && nd != 2) ok = false;  // the two objects
    }
    for (int j = 1; j <= k && ok; ++j) {
        const SubObject& s = out.stage[j - 1];
        if (j > 1 && !out.stage[j - 1].contains(out.stage[j - 2])) ok = false;
        for (int m = 1; m <= m_trunc && ok; ++m) {
            int nd = 0;
            for (std::uint32_t c = 0; c < out.e->cells(m, 0); ++c)
                if (s.mask[m][0][c] && !out.e->bidegree_degenerate(m, 0, c))
                    ++nd;
            int expect = m < j ? 2 : (m == j ? 1 : 0);
            if (nd != expect) ok = false;
        }
    }
    out.counts = ok ? Verdict::yes("word counts as expected")
                    : Verdict::no("word counts deviate", detail);
    return out;
}

Verdict filtration_pushout_check(int k, int m_trunc, const Bounds& b) {
    if (k < 2) throw SegalError("filtration pushout needs k >= 2");
    EFiltration filt = e_filtration(k, m_trunc, b);
    SSpacePtr e = filt.e;
    const SubObject& prev = filt.stage[k - 2];
    const SubObject& cur = filt.stage[k - 1];

    auto hk_mask = fk_mask_where(k, m_trunc, [k](const std::vector<int>& t) {
        return !image_contains_range(t, 1, k);
    });
    auto full_mask = fk_mask_where(
        k, m_trunc, [](const std::vector<int>&) { return true; });

    SubObject sigma_h = sigma_image(e, k, hk_mask);
    SubObject sigma_f = sigma_image(e, k, full_mask);

    if (!prev.contains(sigma_h))
        return Verdict::no("sigma_k(H(k)) leaves the previous stage");
    if (!(prev.unite(sigma_f) == cur))
        return Verdict::no("the stage is not the union with sigma_k(F(k))");
    if (!(sigma_f.intersect(prev) == sigma_h))
        return Verdict::no("the overlap is not exactly sigma_k(H(k))");
    // off H(k), sigma_k is injective and lands outside the previous stage
    std::vector<int> w = alternating_word(k + 1);
    for (int m = 0; m <= m_trunc; ++m) {
        auto tuples = monotone_maps(m, k);
        std::map<std::uint32_t, std::uint32_t> hit;
        for (std::uint32_t c = 0; c < tuples.size(); ++c) {
            if (hk_mask[m][c]) continue;
            std::vector<int> word(m + 1);
            for (int j = 0; j <= m; ++j) word[j] = w[tuples[c][j]];
            std::uint32_t img = word_cell(*e, m, word);
            auto [it, fresh] = hit.try_emplace(img, c);
            if (!fresh)
                return Verdict::no("sigma_k identifies cells outside H(k)",
                                   json{{"level", m}, {"cells", {it->second, c}}});
            if (prev.mask[m][0][img])
                return Verdict::no(
                    "a cell outside H(k) lands in the previous stage",
                    json{{"level", m}, {"cell", c}});
        }
    }
    return Verdict::yes("pushout square verified cellwise");
}

Verdict hc_gluing_check(int k, int m_trunc, const Bounds& b) {
    (void)b;
    if (k < 2) throw SegalError("gluing check needs k >= 2");
    // masks over the cells of F(k)
    auto hk = fk_mask_where(k, m_trunc, [k](const std::vector<int>& t) {
        return !image_contains_range(t, 1, k);
    });
    auto ck = fk_mask_where(k, m_trunc, [k](const std::vector<int>& t) {
        return !image_contains_range(t, 2, k);
    });
    // the first face of F(k-1): compose tuples with d^1: [k-1] -> [k]
    auto d1 = [](int v) { return v >= 1 ? v + 1 : v; };
    std::vector<std::vector<char>> d1f(m_trunc + 1), d1h(m_trunc + 1);
    for (int m = 0; m <= m_trunc; ++m) {
        auto tuples_k = monotone_maps(m, k);
        d1f[m].assign(tuples_k.size(), 0);
        d1h[m].assign(tuples_k.size(), 0);
        auto tuples_k1 = monotone_maps(m, k - 1);
        for (auto& t : tuples_k1) {
            std::vector<int> img(t.size());
            for (std::size_t j = 0; j < t.size(); ++j) img[j] = d1(t[j]);
            std::uint32_t cell = monotone_index(img, k);
            d1f[m][cell] = 1;
            if (!image_contains_range(t, 1, k - 1)) d1h[m][cell] = 1;
        }
    }
    for (int m = 0; m <= m_trunc; ++m)
        for (std::size_t c = 0; c < hk[m].size(); ++c) {
            bool inter = d1f[m][c] && ck[m][c];
            if (inter != (d1h[m][c] != 0))
                return Verdict::no(
                    "d1 F(k-1) meets C(k) outside d1 H(k-1)",
                    json{{"level", m}, {"cell", c}});
            bool uni = ck[m][c] || d1f[m][c];
            if (uni != (hk[m][c] != 0))
                return Verdict::no("C(k) with the face does not fill H(k)",
                                   json{{"level", m}, {"cell", c}});
        }
    return Verdict::yes("gluing identity verified cellwise");
}

json cover_to_json(const Cover& c) {
    json j;
    j["parent"] = c.parent_n;
    json cs = json::array();
    for (auto& [i, k] : c.constituents) cs.push_back({i, k});
    j["constituents"] = cs;
    json counts = json::array();
    for (int m = 0; m < int(c.realized.mask.size()); ++m)
        counts.push_back(c.realized.count(m, 0));
    j["cells_per_level"] = counts;
    return j;
}

}  // namespace segal
