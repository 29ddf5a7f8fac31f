#include "segal/sspace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
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

// Monotone tuples [m] -> [k] in lexicographic order, with an index.
struct MonotoneTuples {
    std::vector<std::vector<std::vector<int>>> at;  // [m][cell] -> tuple
    std::vector<std::map<std::vector<int>, std::uint32_t>> index;

    MonotoneTuples(int k, int max_m) {
        at.resize(max_m + 1);
        index.resize(max_m + 1);
        for (int m = 0; m <= max_m; ++m) {
            std::vector<int> cur(m + 1);
            std::function<void(int, int)> rec = [&](int pos, int minv) {
                if (pos == m + 1) {
                    index[m][cur] = std::uint32_t(at[m].size());
                    at[m].push_back(cur);
                    return;
                }
                for (int v = minv; v <= k; ++v) {
                    cur[pos] = v;
                    rec(pos + 1, v);
                }
            };
            rec(0, 0);
        }
    }
};

std::string tuple_name(const std::vector<int>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(t[i]);
    }
    return s;
}

std::vector<int> coface_map(int i, int m) {  // d^i: [m-1] -> [m]
    std::vector<int> d;
    for (int j = 0; j <= m - 1; ++j) d.push_back(j < i ? j : j + 1);
    return d;
}

std::vector<int> codegen_map(int i, int m) {  // s^i: [m+1] -> [m]
    std::vector<int> d;
    for (int j = 0; j <= m + 1; ++j) d.push_back(j <= i ? j : j - 1);
    return d;
}

std::vector<std::uint32_t> flatten(const GradedMap& gm) {
    std::vector<std::uint32_t> flat;
    for (auto& g : gm) flat.insert(flat.end(), g.begin(), g.end());
    return flat;
}

}  // namespace

Window Window::rect(int m, int n) {
    Window w;
    w.m = m;
    w.n_at_level.assign(m + 1, n);
    return w;
}

int Window::n_min() const {
    int v = n_at_level.front();
    for (int n : n_at_level) v = std::min(v, n);
    return v;
}

Window TruncSSpace::window() const {
    Window w;
    w.m = m_trunc;
    for (auto& lv : level) w.n_at_level.push_back(lv.trunc);
    return w;
}

std::uint32_t TruncSSpace::outer_apply(const std::vector<int>& delta, int m,
                                       int n, std::uint32_t c) const {
    std::vector<int> d = delta;
    int lvl = m;
    std::uint32_t cur = c;
    while (true) {
        std::vector<char> hit(lvl + 1, 0);
        for (int v : d) hit[v] = 1;
        int miss = -1;
        for (int v = lvl; v >= 0; --v)
            if (!hit[v]) {
                miss = v;
                break;
            }
        if (miss < 0) break;
        cur = outer_face[lvl][miss][n][cur];
        --lvl;
        for (int& v : d)
            if (v > miss) --v;
    }
    std::vector<int> spots;
    while (int(d.size()) - 1 > lvl) {
        int i = 0;
        while (d[i] != d[i + 1]) ++i;
        spots.push_back(i);
        d.erase(d.begin() + i + 1);
    }
    for (int idx = int(spots.size()) - 1; idx >= 0; --idx) {
        if (n > level[lvl + 1].trunc)
            throw SegalError("outer_apply leaves the truncation window");
        cur = outer_degen[lvl][spots[idx]][n][cur];
        ++lvl;
    }
    return cur;
}

bool TruncSSpace::levelwise_discrete() const {
    for (auto& lv : level)
        if (!lv.is_discrete()) return false;
    return true;
}

bool TruncSSpace::bidegree_degenerate(int m, int n, std::uint32_t c) const {
    if (level[m].is_degenerate(n, c)) return true;
    for (int i = 0; i < m; ++i) {
        if (n > level[m].trunc) continue;
        for (std::uint32_t b = 0; b < level[m - 1].size[n]; ++b)
            if (outer_degen[m - 1][i][n][b] == c) return true;
    }
    return false;
}

void TruncSSpace::validate() const {
    for (auto& lv : level) lv.validate();
    for (int m = 1; m <= m_trunc; ++m)
        if (level[m].trunc > level[m - 1].trunc)
            throw InvariantError("space truncations must be nonincreasing");
    auto check_levelmap = [&](const std::vector<std::vector<std::uint32_t>>& f,
                              const TruncSSet& src, const TruncSSet& tgt,
                              int upto) {
        for (int n = 1; n <= upto; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::uint32_t c = 0; c < src.size[n]; ++c)
                    if (tgt.face[n][i][f[n][c]] != f[n - 1][src.face[n][i][c]])
                        throw InvariantError("outer map breaks an inner face");
        for (int n = 0; n < upto; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::uint32_t c = 0; c < src.size[n]; ++c)
                    if (tgt.degen[n][i][f[n][c]] !=
                        f[n + 1][src.degen[n][i][c]])
                        throw InvariantError(
                            "outer map breaks an inner degeneracy");
    };
    for (int m = 1; m <= m_trunc; ++m)
        for (int i = 0; i <= m; ++i)
            check_levelmap(outer_face[m][i], level[m], level[m - 1],
                           level[m].trunc);
    for (int m = 0; m < m_trunc; ++m)
        for (int i = 0; i <= m; ++i) {
            const auto& f = outer_degen[m][i];
            int upto = level[m + 1].trunc;
            for (int n = 1; n <= upto; ++n)
                for (int ii = 0; ii <= n; ++ii)
                    for (std::uint32_t c = 0; c < level[m].size[n]; ++c)
                        if (level[m + 1].face[n][ii][f[n][c]] !=
                            f[n - 1][level[m].face[n][ii][c]])
                            throw InvariantError(
                                "outer degeneracy breaks an inner face");
        }
    for (int m = 2; m <= m_trunc; ++m)
        for (int j = 1; j <= m; ++j)
            for (int i = 0; i < j; ++i)
                for (int n = 0; n <= level[m].trunc; ++n)
                    for (std::uint32_t c = 0; c < level[m].size[n]; ++c)
                        if (outer_face[m - 1][i][n][outer_face[m][j][n][c]] !=
                            outer_face[m - 1][j - 1][n]
                                      [outer_face[m][i][n][c]])
                            throw InvariantError("outer d_i d_j fails");
    for (int m = 1; m <= m_trunc; ++m)
        for (int j = 0; j <= m - 1; ++j)
            for (int i = 0; i <= m; ++i)
                for (int n = 0; n <= level[m].trunc; ++n)
                    for (std::uint32_t c = 0; c < level[m - 1].size[n]; ++c) {
                        std::uint32_t v =
                            outer_face[m][i][n][outer_degen[m - 1][j][n][c]];
                        if (i == j || i == j + 1) {
                            if (v != c)
                                throw InvariantError("outer d_i s_j fails");
                        } else if (i < j) {
                            if (v != outer_degen[m - 2][j - 1][n]
                                                [outer_face[m - 1][i][n][c]])
                                throw InvariantError("outer d_i s_j fails");
                        } else {
                            if (v !=
                                outer_degen[m - 2][j][n]
                                           [outer_face[m - 1][i - 1][n][c]])
                                throw InvariantError("outer d_i s_j fails");
                        }
                    }
    for (int m = 0; m + 2 <= m_trunc; ++m)
        for (int j = 0; j <= m; ++j)
            for (int i = 0; i <= j; ++i)
                for (int n = 0; n <= level[m + 2].trunc; ++n)
                    for (std::uint32_t c = 0; c < level[m].size[n]; ++c)
                        if (outer_degen[m + 1][i][n]
                                       [outer_degen[m][j][n][c]] !=
                            outer_degen[m + 1][j + 1][n]
                                       [outer_degen[m][i][n][c]])
                            throw InvariantError("outer s_i s_j fails");
}

std::vector<std::pair<int, int>> TruncSSpace::grades() const {
    std::vector<std::pair<int, int>> g;
    for (int m = 0; m <= m_trunc; ++m)
        for (int n = 0; n <= level[m].trunc; ++n) g.emplace_back(m, n);
    return g;
}

int TruncSSpace::grade_of(int m, int n) const {
    int idx = 0;
    for (int mm = 0; mm < m; ++mm) idx += level[mm].trunc + 1;
    return idx + n;
}

Complex TruncSSpace::to_complex() const {
    Complex cx;
    auto gs = grades();
    cx.size.resize(gs.size());
    cx.weight.resize(gs.size());
    for (std::size_t g = 0; g < gs.size(); ++g) {
        cx.size[g] = level[gs[g].first].size[gs[g].second];
        cx.weight[g] = gs[g].first + gs[g].second;
    }
    for (int m = 0; m <= m_trunc; ++m) {
        const TruncSSet& lv = level[m];
        for (int n = 1; n <= lv.trunc; ++n)
            for (int i = 0; i <= n; ++i)
                cx.ops.push_back(Complex::Op{grade_of(m, n), grade_of(m, n - 1),
                                             lv.face[n][i]});
        for (int n = 0; n < lv.trunc; ++n)
            for (int i = 0; i <= n; ++i)
                cx.ops.push_back(Complex::Op{grade_of(m, n), grade_of(m, n + 1),
                                             lv.degen[n][i]});
    }
    for (int m = 1; m <= m_trunc; ++m)
        for (int i = 0; i <= m; ++i)
            for (int n = 0; n <= level[m].trunc; ++n)
                cx.ops.push_back(Complex::Op{grade_of(m, n),
                                             grade_of(m - 1, n),
                                             outer_face[m][i][n]});
    for (int m = 0; m < m_trunc; ++m)
        for (int i = 0; i <= m; ++i)
            for (int n = 0; n <= level[m + 1].trunc; ++n)
                cx.ops.push_back(Complex::Op{grade_of(m, n),
                                             grade_of(m + 1, n),
                                             outer_degen[m][i][n]});
    cx.freeze();
    return cx;
}

void SSpaceMap::validate() const {
    const TruncSSpace& x = *source;
    const TruncSSpace& y = *target;
    if (!(x.window() == y.window()))
        throw InvariantError("sspace map endpoints have different windows");
    for (int m = 0; m <= x.m_trunc; ++m) {
        const TruncSSet& lv = x.level[m];
        const TruncSSet& lw = y.level[m];
        for (int n = 1; n <= lv.trunc; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::uint32_t c = 0; c < lv.size[n]; ++c)
                    if (lw.face[n][i][maps[m][n][c]] !=
                        maps[m][n - 1][lv.face[n][i][c]])
                        throw InvariantError("sspace map breaks an inner face");
        for (int n = 0; n < lv.trunc; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::uint32_t c = 0; c < lv.size[n]; ++c)
                    if (lw.degen[n][i][maps[m][n][c]] !=
                        maps[m][n + 1][lv.degen[n][i][c]])
                        throw InvariantError(
                            "sspace map breaks an inner degeneracy");
    }
    for (int m = 1; m <= x.m_trunc; ++m)
        for (int i = 0; i <= m; ++i)
            for (int n = 0; n <= x.level[m].trunc; ++n)
                for (std::uint32_t c = 0; c < x.level[m].size[n]; ++c)
                    if (y.outer_face[m][i][n][maps[m][n][c]] !=
                        maps[m - 1][n][x.outer_face[m][i][n][c]])
                        throw InvariantError("sspace map breaks an outer face");
    for (int m = 0; m < x.m_trunc; ++m)
        for (int i = 0; i <= m; ++i)
            for (int n = 0; n <= x.level[m + 1].trunc; ++n)
                for (std::uint32_t c = 0; c < x.level[m].size[n]; ++c)
                    if (y.outer_degen[m][i][n][maps[m][n][c]] !=
                        maps[m + 1][n][x.outer_degen[m][i][n][c]])
                        throw InvariantError(
                            "sspace map breaks an outer degeneracy");
}

SSpaceMap identity_sspace_map(SSpacePtr x) {
    SSpaceMap f;
    f.source = f.target = x;
    f.maps.resize(x->m_trunc + 1);
    for (int m = 0; m <= x->m_trunc; ++m) {
        f.maps[m].resize(x->level[m].trunc + 1);
        for (int n = 0; n <= x->level[m].trunc; ++n) {
            f.maps[m][n].resize(x->level[m].size[n]);
            std::iota(f.maps[m][n].begin(), f.maps[m][n].end(), 0);
        }
    }
    return f;
}

SSpaceMap compose_sspace_maps(const SSpaceMap& g, const SSpaceMap& f) {
    SSpaceMap h;
    h.source = f.source;
    h.target = g.target;
    h.maps.resize(f.maps.size());
    for (std::size_t m = 0; m < f.maps.size(); ++m) {
        h.maps[m].resize(f.maps[m].size());
        for (std::size_t n = 0; n < f.maps[m].size(); ++n) {
            h.maps[m][n].resize(f.maps[m][n].size());
            for (std::size_t c = 0; c < f.maps[m][n].size(); ++c)
                h.maps[m][n][c] = g.maps[m][n][f.maps[m][n][c]];
        }
    }
    return h;
}

// ---- subobjects ---------------------------------------------------------

SubObject SubObject::empty(SSpacePtr parent) {
    SubObject s;
    s.parent = parent;
    s.mask.resize(parent->m_trunc + 1);
    for (int m = 0; m <= parent->m_trunc; ++m) {
        s.mask[m].resize(parent->level[m].trunc + 1);
        for (int n = 0; n <= parent->level[m].trunc; ++n)
            s.mask[m][n].assign(parent->level[m].size[n], 0);
    }
    return s;
}

SubObject SubObject::whole(SSpacePtr parent) {
    SubObject s = empty(parent);
    for (auto& lv : s.mask)
        for (auto& row : lv) std::fill(row.begin(), row.end(), 1);
    return s;
}

std::size_t SubObject::cell_count() const {
    std::size_t t = 0;
    for (auto& lv : mask)
        for (auto& row : lv)
            for (char c : row) t += (c != 0);
    return t;
}

std::uint32_t SubObject::count(int m, int n) const {
    std::uint32_t t = 0;
    for (char c : mask[m][n]) t += (c != 0);
    return t;
}

void SubObject::close() {
    const TruncSSpace& p = *parent;
    bool changed = true;
    while (changed) {
        changed = false;
        auto add = [&](int m, int n, std::uint32_t c) {
            if (!mask[m][n][c]) {
                mask[m][n][c] = 1;
                changed = true;
            }
        };
        for (int m = 0; m <= p.m_trunc; ++m)
            for (int n = 0; n <= p.level[m].trunc; ++n)
                for (std::uint32_t c = 0; c < p.level[m].size[n]; ++c) {
                    if (!mask[m][n][c]) continue;
                    if (n >= 1)
                        for (int i = 0; i <= n; ++i)
                            add(m, n - 1, p.level[m].face[n][i][c]);
                    if (n < p.level[m].trunc)
                        for (int i = 0; i <= n; ++i)
                            add(m, n + 1, p.level[m].degen[n][i][c]);
                    if (m >= 1)
                        for (int i = 0; i <= m; ++i)
                            add(m - 1, n, p.outer_face[m][i][n][c]);
                    if (m < p.m_trunc && n <= p.level[m + 1].trunc)
                        for (int i = 0; i <= m; ++i)
                            add(m + 1, n, p.outer_degen[m][i][n][c]);
                }
    }
}

bool SubObject::is_closed() const {
    SubObject c = *this;
    c.close();
    return *this == c;
}

bool SubObject::contains(const SubObject& other) const {
    for (std::size_t m = 0; m < mask.size(); ++m)
        for (std::size_t n = 0; n < mask[m].size(); ++n)
            for (std::size_t c = 0; c < mask[m][n].size(); ++c)
                if (other.mask[m][n][c] && !mask[m][n][c]) return false;
    return true;
}

bool SubObject::operator==(const SubObject& other) const {
    return parent == other.parent && mask == other.mask;
}

SubObject SubObject::unite(const SubObject& other) const {
    if (parent != other.parent)
        throw SegalError("subobject operation across different parents");
    SubObject s = *this;
    for (std::size_t m = 0; m < mask.size(); ++m)
        for (std::size_t n = 0; n < mask[m].size(); ++n)
            for (std::size_t c = 0; c < mask[m][n].size(); ++c)
                s.mask[m][n][c] = mask[m][n][c] || other.mask[m][n][c];
    return s;
}

SubObject SubObject::intersect(const SubObject& other) const {
    if (parent != other.parent)
        throw SegalError("subobject operation across different parents");
    SubObject s = *this;
    for (std::size_t m = 0; m < mask.size(); ++m)
        for (std::size_t n = 0; n < mask[m].size(); ++n)
            for (std::size_t c = 0; c < mask[m][n].size(); ++c)
                s.mask[m][n][c] = mask[m][n][c] && other.mask[m][n][c];
    return s;
}

SubObject generated_by(
    SSpacePtr parent,
    const std::vector<std::tuple<int, int, std::uint32_t>>& seed_cells) {
    SubObject s = SubObject::empty(parent);
    for (auto& [m, n, c] : seed_cells) s.mask[m][n][c] = 1;
    s.close();
    return s;
}

Materialized materialize(const SubObject& sub) {
    const TruncSSpace& p = *sub.parent;
    Materialized out;
    auto space = std::make_shared<TruncSSpace>();
    space->m_trunc = p.m_trunc;
    space->level.resize(p.m_trunc + 1);
    out.new_index.resize(p.m_trunc + 1);
    for (int m = 0; m <= p.m_trunc; ++m) {
        const TruncSSet& lv = p.level[m];
        TruncSSet& nl = space->level[m];
        nl.trunc = lv.trunc;
        nl.size.assign(lv.trunc + 1, 0);
        nl.face.resize(lv.trunc + 1);
        nl.degen.resize(lv.trunc + 1);
        nl.names.resize(lv.trunc + 1);
        out.new_index[m].resize(lv.trunc + 1);
        for (int n = 0; n <= lv.trunc; ++n) {
            out.new_index[m][n].assign(lv.size[n], -1);
            for (std::uint32_t c = 0; c < lv.size[n]; ++c) {
                if (!sub.mask[m][n][c]) continue;
                out.new_index[m][n][c] = nl.size[n]++;
                if (n < int(lv.names.size()) && c < lv.names[n].size())
                    nl.names[n].push_back(lv.names[n][c]);
            }
        }
        for (int n = 1; n <= lv.trunc; ++n) {
            nl.face[n].assign(n + 1, std::vector<std::uint32_t>(nl.size[n]));
            for (std::uint32_t c = 0; c < lv.size[n]; ++c) {
                if (out.new_index[m][n][c] < 0) continue;
                for (int i = 0; i <= n; ++i)
                    nl.face[n][i][out.new_index[m][n][c]] = std::uint32_t(
                        out.new_index[m][n - 1][lv.face[n][i][c]]);
            }
        }
        for (int n = 0; n < lv.trunc; ++n) {
            nl.degen[n].assign(n + 1, std::vector<std::uint32_t>(nl.size[n]));
            for (std::uint32_t c = 0; c < lv.size[n]; ++c) {
                if (out.new_index[m][n][c] < 0) continue;
                for (int i = 0; i <= n; ++i)
                    nl.degen[n][i][out.new_index[m][n][c]] = std::uint32_t(
                        out.new_index[m][n + 1][lv.degen[n][i][c]]);
            }
        }
    }
    space->outer_face.resize(p.m_trunc + 1);
    space->outer_degen.resize(p.m_trunc + 1);
    for (int m = 1; m <= p.m_trunc; ++m) {
        space->outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            space->outer_face[m][i].resize(p.level[m].trunc + 1);
            for (int n = 0; n <= p.level[m].trunc; ++n) {
                auto& f = space->outer_face[m][i][n];
                f.resize(space->level[m].size[n]);
                for (std::uint32_t c = 0; c < p.level[m].size[n]; ++c)
                    if (out.new_index[m][n][c] >= 0)
                        f[out.new_index[m][n][c]] = std::uint32_t(
                            out.new_index[m - 1][n][p.outer_face[m][i][n][c]]);
            }
        }
    }
    for (int m = 0; m < p.m_trunc; ++m) {
        space->outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            space->outer_degen[m][i].resize(p.level[m + 1].trunc + 1);
            for (int n = 0; n <= p.level[m + 1].trunc; ++n) {
                auto& f = space->outer_degen[m][i][n];
                f.resize(space->level[m].size[n]);
                for (std::uint32_t c = 0; c < p.level[m].size[n]; ++c)
                    if (out.new_index[m][n][c] >= 0)
                        f[out.new_index[m][n][c]] = std::uint32_t(
                            out.new_index[m + 1][n][p.outer_degen[m][i][n][c]]);
            }
        }
    }
    out.space = space;
    out.inclusion.source = space;
    out.inclusion.target = sub.parent;
    out.inclusion.maps.resize(p.m_trunc + 1);
    for (int m = 0; m <= p.m_trunc; ++m) {
        out.inclusion.maps[m].resize(p.level[m].trunc + 1);
        for (int n = 0; n <= p.level[m].trunc; ++n) {
            out.inclusion.maps[m][n].resize(space->level[m].size[n]);
            for (std::uint32_t c = 0; c < p.level[m].size[n]; ++c)
                if (out.new_index[m][n][c] >= 0)
                    out.inclusion.maps[m][n][out.new_index[m][n][c]] = c;
        }
    }
    return out;
}

// ---- standard objects ---------------------------------------------------

TruncSSpace standard_F(int k, const Window& w) {
    TruncSSpace x;
    x.m_trunc = w.m;
    x.level.resize(w.m + 1);
    MonotoneTuples tuples(k, w.m);
    for (int m = 0; m <= w.m; ++m) {
        TruncSSet& lv = x.level[m];
        lv.trunc = w.n_at(m);
        std::uint32_t sz = std::uint32_t(tuples.at[m].size());
        lv.size.assign(lv.trunc + 1, sz);
        lv.face.resize(lv.trunc + 1);
        lv.degen.resize(lv.trunc + 1);
        std::vector<std::uint32_t> id(sz);
        std::iota(id.begin(), id.end(), 0);
        for (int n = 1; n <= lv.trunc; ++n) lv.face[n].assign(n + 1, id);
        for (int n = 0; n < lv.trunc; ++n) lv.degen[n].assign(n + 1, id);
        lv.names.resize(lv.trunc + 1);
        for (int n = 0; n <= lv.trunc; ++n)
            for (auto& t : tuples.at[m]) lv.names[n].push_back(tuple_name(t));
        lv.cosk_level = 1;
        lv.gen_level = 0;
    }
    x.outer_face.resize(w.m + 1);
    x.outer_degen.resize(w.m + 1);
    for (int m = 1; m <= w.m; ++m) {
        x.outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            std::vector<std::uint32_t> tab(tuples.at[m].size());
            for (std::uint32_t c = 0; c < tuples.at[m].size(); ++c) {
                std::vector<int> t = tuples.at[m][c];
                t.erase(t.begin() + i);
                tab[c] = tuples.index[m - 1].at(t);
            }
            x.outer_face[m][i].assign(x.level[m].trunc + 1, tab);
        }
    }
    for (int m = 0; m < w.m; ++m) {
        x.outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            std::vector<std::uint32_t> tab(tuples.at[m].size());
            for (std::uint32_t c = 0; c < tuples.at[m].size(); ++c) {
                std::vector<int> t = tuples.at[m][c];
                t.insert(t.begin() + i, t[i]);
                tab[c] = tuples.index[m + 1].at(t);
            }
            x.outer_degen[m][i].assign(x.level[m + 1].trunc + 1, tab);
        }
    }
    x.gen_bidegree = {k, 0};
    x.cosk_bidegree = {2, 0};
    return x;
}

SubObject boundary_F(int k, SSpacePtr fk) {
    SubObject s = SubObject::whole(fk);
    const TruncSSpace& p = *fk;
    MonotoneTuples tuples(k, p.m_trunc);
    for (int m = 0; m <= p.m_trunc; ++m)
        for (std::uint32_t c = 0; c < tuples.at[m].size(); ++c) {
            std::vector<char> hit(k + 1, 0);
            for (int v : tuples.at[m][c]) hit[v] = 1;
            bool onto = std::find(hit.begin(), hit.end(), 0) == hit.end();
            if (onto)
                for (int n = 0; n <= p.level[m].trunc; ++n)
                    s.mask[m][n][c] = 0;
        }
    return s;
}

SubObject standard_G(int k, SSpacePtr fk) {
    if (k == 0) return SubObject::whole(fk);
    SubObject s = SubObject::empty(fk);
    for (int i = 0; i < k; ++i) s = s.unite(alpha_image(i, 1, k, fk));
    return s;
}

SubObject alpha_image(int i, int k, int n, SSpacePtr fn) {
    if (i < 0 || k < 0 || i + k > n)
        throw SegalError("alpha_image index out of range");
    const TruncSSpace& p = *fn;
    SubObject s = SubObject::empty(fn);
    MonotoneTuples tuples(n, p.m_trunc);
    for (int m = 0; m <= p.m_trunc; ++m)
        for (std::uint32_t c = 0; c < tuples.at[m].size(); ++c) {
            bool inside = true;
            for (int v : tuples.at[m][c])
                if (v < i || v > i + k) {
                    inside = false;
                    break;
                }
            if (inside)
                for (int nn = 0; nn <= p.level[m].trunc; ++nn)
                    s.mask[m][nn][c] = 1;
        }
    return s;
}

std::vector<std::vector<int>> monotone_maps(int m, int k) {
    MonotoneTuples t(k, m);
    return t.at[m];
}

std::uint32_t monotone_index(const std::vector<int>& tuple, int k) {
    MonotoneTuples t(k, int(tuple.size()) - 1);
    return t.index[tuple.size() - 1].at(tuple);
}

TruncSSpace const_sspace(const TruncSSet& k, int m_trunc) {
    TruncSSpace x;
    x.m_trunc = m_trunc;
    x.level.assign(m_trunc + 1, k);
    x.outer_face.resize(m_trunc + 1);
    x.outer_degen.resize(m_trunc + 1);
    std::vector<std::vector<std::uint32_t>> id(k.trunc + 1);
    for (int n = 0; n <= k.trunc; ++n) {
        id[n].resize(k.size[n]);
        std::iota(id[n].begin(), id[n].end(), 0);
    }
    for (int m = 1; m <= m_trunc; ++m) x.outer_face[m].assign(m + 1, id);
    for (int m = 0; m < m_trunc; ++m) x.outer_degen[m].assign(m + 1, id);
    if (k.gen_level) x.gen_bidegree = {0, *k.gen_level};
    if (k.cosk_level) x.cosk_bidegree = {0, *k.cosk_level};
    return x;
}

// ---- classification diagrams --------------------------------------------

namespace {

struct LevelFunctors {
    std::vector<std::vector<MorId>> chains;   // m entries per functor
    std::vector<std::vector<ObjId>> objects;  // m+1 entries per functor
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash>
        index;  // key = [o0, f1..fm]
};

LevelFunctors enumerate_level_functors(const FinCat& c, int m,
                                       const Bounds& b) {
    LevelFunctors lf;
    std::vector<MorId> chain;
    std::vector<ObjId> objs;
    std::function<void(ObjId, int)> rec = [&](ObjId at, int depth) {
        if (depth == m) {
            if (lf.chains.size() >= b.max_functors)
                throw BoundError("level functor enumeration exceeded bound",
                                 lf.chains.size());
            std::vector<std::uint32_t> key;
            key.push_back(objs[0]);
            for (MorId x : chain) key.push_back(x);
            lf.index[key] = std::uint32_t(lf.chains.size());
            lf.chains.push_back(chain);
            lf.objects.push_back(objs);
            return;
        }
        for (MorId f : c.from(at)) {
            chain.push_back(f);
            objs.push_back(c.mor_tgt[f]);
            rec(c.mor_tgt[f], depth + 1);
            chain.pop_back();
            objs.pop_back();
        }
    };
    for (ObjId x = 0; x < c.num_objects(); ++x) {
        objs.assign(1, x);
        rec(x, 0);
    }
    return lf;
}

struct LevelNts {
    std::vector<NatTrans> nts;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash>
        index;  // key = [src, tgt, comps...]
    std::vector<MorId> identity;  // per functor

    std::vector<std::uint32_t> key_of(const NatTrans& t) const {
        std::vector<std::uint32_t> k{t.source_functor, t.target_functor};
        for (MorId c : t.components) k.push_back(c);
        return k;
    }
};

LevelNts enumerate_level_nts(const FinCat& c, const std::vector<char>& weq,
                             const LevelFunctors& lf, int m, const Bounds& b) {
    LevelNts ln;
    std::vector<MorId> comp(m + 1);
    for (std::uint32_t a = 0; a < lf.chains.size(); ++a)
        for (std::uint32_t t = 0; t < lf.chains.size(); ++t) {
            std::function<void(int)> rec = [&](int x) {
                if (x == m + 1) {
                    if (ln.nts.size() >= b.max_nat_trans)
                        throw BoundError("weq transformation enumeration "
                                         "exceeded bound",
                                         ln.nts.size());
                    NatTrans nt{a, t, comp};
                    ln.index[ln.key_of(nt)] = std::uint32_t(ln.nts.size());
                    ln.nts.push_back(std::move(nt));
                    return;
                }
                for (MorId f : c.from(lf.objects[a][x])) {
                    if (c.mor_tgt[f] != lf.objects[t][x] || !weq[f]) continue;
                    if (x > 0) {
                        // naturality against the x-th chain arrow
                        if (c.compose(f, lf.chains[a][x - 1]) !=
                            c.compose(lf.chains[t][x - 1], comp[x - 1]))
                            continue;
                    }
                    comp[x] = f;
                    rec(x + 1);
                }
            };
            rec(0);
        }
    ln.identity.resize(lf.chains.size());
    for (std::uint32_t f = 0; f < lf.chains.size(); ++f) {
        std::vector<std::uint32_t> key{f, f};
        for (ObjId o : lf.objects[f]) key.push_back(c.identity[o]);
        ln.identity[f] = ln.index.at(key);
    }
    return ln;
}

std::vector<std::uint32_t> restrict_functor_key(const FinCat& c,
                                                const LevelFunctors& lf,
                                                std::uint32_t f,
                                                const std::vector<int>& delta) {
    std::vector<std::uint32_t> key;
    key.push_back(lf.objects[f][delta[0]]);
    for (std::size_t j = 1; j < delta.size(); ++j) {
        MorId acc = c.identity[lf.objects[f][delta[j - 1]]];
        for (int t = delta[j - 1]; t < delta[j]; ++t)
            acc = c.compose(lf.chains[f][t], acc);
        key.push_back(acc);
    }
    return key;
}

struct ClassificationData {
    std::vector<LevelFunctors> functors;
    std::vector<LevelNts> nts;
    std::vector<ChainNerve> nerves;
    std::shared_ptr<TruncSSpace> space;
};

ClassificationData build_classification(const WidePair& pair, const Window& w,
                                        const Bounds& b) {
    const FinCat& c = *pair.cat;
    ClassificationData data;
    data.space = std::make_shared<TruncSSpace>();
    TruncSSpace& x = *data.space;
    x.m_trunc = w.m;
    x.level.resize(w.m + 1);
    data.functors.resize(w.m + 1);
    data.nts.resize(w.m + 1);
    data.nerves.resize(w.m + 1);

    auto tag = std::make_shared<TruncSSpace::ClassificationTag>();
    tag->base = pair.cat;
    tag->weq = pair.weq;
    tag->weq_identities = true;
    tag->weq_all_isos = true;
    bool weq_within_isos = true;
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (pair.weq[f] && !c.is_identity(f)) tag->weq_identities = false;
        bool iso = c.is_iso(f);
        if (pair.weq[f] != (iso ? 1 : 0)) tag->weq_all_isos = false;
        if (pair.weq[f] && !iso) weq_within_isos = false;
    }

    for (int m = 0; m <= w.m; ++m) {
        data.functors[m] = enumerate_level_functors(c, m, b);
        data.nts[m] = enumerate_level_nts(c, pair.weq, data.functors[m], m, b);
        const auto& ln = data.nts[m];
        std::vector<ObjId> src, tgt;
        for (auto& nt : ln.nts) {
            src.push_back(nt.source_functor);
            tgt.push_back(nt.target_functor);
        }
        const FinCat* cc = &c;
        const LevelNts* lnp = &ln;
        auto compose_nt = [cc, lnp](MorId g, MorId f) -> MorId {
            const NatTrans& a = lnp->nts[f];
            const NatTrans& bb = lnp->nts[g];
            std::vector<std::uint32_t> key{a.source_functor, bb.target_functor};
            for (std::size_t i = 0; i < a.components.size(); ++i)
                key.push_back(cc->compose(bb.components[i], a.components[i]));
            return lnp->index.at(key);
        };
        data.nerves[m] =
            chain_nerve(std::uint32_t(data.functors[m].chains.size()), src,
                        tgt, ln.identity, compose_nt, w.n_at(m), b);
        tag->level_functor_objects.push_back(data.functors[m].objects);
        tag->level_functor_chains.push_back(data.functors[m].chains);
        tag->level_morphisms.push_back(ln.nts);

        // groupoid-nerve tag for the low levels used by the completeness and
        // mapping-space decision procedures
        if (m <= 2 && ln.nts.size() <= 50000) {
            auto wcat = std::make_shared<FinCat>();
            wcat->identity = ln.identity;
            for (auto& nt : ln.nts) {
                wcat->mor_src.push_back(nt.source_functor);
                wcat->mor_tgt.push_back(nt.target_functor);
            }
            std::size_t entries = 0;
            bool ok = true;
            for (MorId f = 0; f < wcat->num_morphisms() && ok; ++f)
                for (MorId g = 0; g < wcat->num_morphisms(); ++g) {
                    if (wcat->mor_src[g] != wcat->mor_tgt[f]) continue;
                    if (++entries > b.max_compose_pairs) {
                        ok = false;
                        break;
                    }
                    wcat->set_compose(g, f, compose_nt(g, f));
                }
            if (ok) {
                wcat->finalize();
                data.nerves[m].sset.nerve_tag =
                    std::make_shared<TruncSSet::NerveTag>(
                        TruncSSet::NerveTag{wcat, weq_within_isos});
            }
        }
        x.level[m] = data.nerves[m].sset;
    }

    auto nt_restriction = [&](int m_from, const std::vector<int>& delta,
                              int m_to) {
        const auto& lfFrom = data.functors[m_from];
        const auto& lfTo = data.functors[m_to];
        const auto& lnFrom = data.nts[m_from];
        const auto& lnTo = data.nts[m_to];
        std::vector<std::uint32_t> fmap(lfFrom.chains.size());
        for (std::uint32_t f = 0; f < lfFrom.chains.size(); ++f)
            fmap[f] = lfTo.index.at(restrict_functor_key(c, lfFrom, f, delta));
        std::vector<std::uint32_t> tmap(lnFrom.nts.size());
        for (std::uint32_t t = 0; t < lnFrom.nts.size(); ++t) {
            const NatTrans& nt = lnFrom.nts[t];
            std::vector<std::uint32_t> key{fmap[nt.source_functor],
                                           fmap[nt.target_functor]};
            for (int j : delta) key.push_back(nt.components[j]);
            tmap[t] = lnTo.index.at(key);
        }
        return std::pair{fmap, tmap};
    };

    auto chain_level_map = [&](int m_from, int m_to,
                               const std::vector<std::uint32_t>& fmap,
                               const std::vector<std::uint32_t>& tmap,
                               int upto) {
        std::vector<std::vector<std::uint32_t>> out(upto + 1);
        const auto& from = data.nerves[m_from];
        const auto& to = data.nerves[m_to];
        out[0] = fmap;
        for (int n = 1; n <= upto; ++n) {
            out[n].resize(x.level[m_from].size[n]);
            std::vector<std::uint32_t> key(n);
            for (std::uint32_t cell = 0; cell < x.level[m_from].size[n];
                 ++cell) {
                for (int j = 0; j < n; ++j)
                    key[j] = tmap[from.chains[n][std::size_t(cell) * n + j]];
                out[n][cell] = to.index_of(n, key);
            }
        }
        return out;
    };

    x.outer_face.resize(w.m + 1);
    x.outer_degen.resize(w.m + 1);
    for (int m = 1; m <= w.m; ++m) {
        x.outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            auto [fmap, tmap] = nt_restriction(m, coface_map(i, m), m - 1);
            x.outer_face[m][i] =
                chain_level_map(m, m - 1, fmap, tmap, x.level[m].trunc);
        }
    }
    for (int m = 0; m < w.m; ++m) {
        x.outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            auto [fmap, tmap] = nt_restriction(m, codegen_map(i, m), m + 1);
            x.outer_degen[m][i] =
                chain_level_map(m, m + 1, fmap, tmap, x.level[m + 1].trunc);
        }
    }

    x.tag = tag;
    x.cosk_bidegree = {3, 2};
    if (tag->weq_identities) {
        x.cosk_bidegree = {2, 0};
        // generated at the longest identity-free chain when that is visible
        // inside the window
        int gen_m = kUnboundedDegree;
        for (int m = w.m; m >= 1; --m) {
            bool nondeg = false;
            for (auto& chain : data.functors[m].chains) {
                bool free = true;
                for (MorId f : chain)
                    if (c.is_identity(f)) {
                        free = false;
                        break;
                    }
                if (free) {
                    nondeg = true;
                    break;
                }
            }
            if (nondeg) {
                if (m < w.m) gen_m = m;
                break;
            }
            if (m == 1) gen_m = 0;
        }
        x.gen_bidegree = {gen_m, 0};
    }
    return data;
}

}  // namespace

TruncSSpace classification_diagram(const WidePair& pair, const Window& w,
                                   const Bounds& b) {
    auto data = build_classification(pair, w, b);
    return std::move(*data.space);
}

TruncSSpace classifying_diagram(CatPtr c, const Window& w, const Bounds& b) {
    return classification_diagram(WidePair::with_isos(c), w, b);
}

TruncSSpace discrete_nerve(CatPtr c, const Window& w, const Bounds& b) {
    return classification_diagram(WidePair::with_identities(c), w, b);
}

SSpaceMap classification_map(const Functor& f, SSpacePtr ncp, SSpacePtr ndp) {
    const TruncSSpace& nc = *ncp;
    const TruncSSpace& nd = *ndp;
    if (!nc.tag || !nd.tag)
        throw SegalError("classification_map needs tagged diagrams");
    for (MorId m = 0; m < nc.tag->base->num_morphisms(); ++m)
        if (nc.tag->weq[m] && !nd.tag->weq[f.mor_map[m]])
            throw SegalError("functor does not preserve weak equivalences");
    WidePair source_pair{nc.tag->base, nc.tag->weq};
    WidePair target_pair{nd.tag->base, nd.tag->weq};
    auto src_data = build_classification(source_pair, nc.window(), Bounds{});
    auto dst_data = build_classification(target_pair, nd.window(), Bounds{});

    SSpaceMap out;
    out.source = ncp;
    out.target = ndp;
    out.maps.resize(nc.m_trunc + 1);
    for (int m = 0; m <= nc.m_trunc; ++m) {
        const auto& lfS = src_data.functors[m];
        const auto& lfT = dst_data.functors[m];
        const auto& lnS = src_data.nts[m];
        const auto& lnT = dst_data.nts[m];
        std::vector<std::uint32_t> fmap(lfS.chains.size());
        for (std::uint32_t ff = 0; ff < lfS.chains.size(); ++ff) {
            std::vector<std::uint32_t> key;
            key.push_back(f.obj_map[lfS.objects[ff][0]]);
            for (MorId x : lfS.chains[ff]) key.push_back(f.mor_map[x]);
            fmap[ff] = lfT.index.at(key);
        }
        std::vector<std::uint32_t> tmap(lnS.nts.size());
        for (std::uint32_t t = 0; t < lnS.nts.size(); ++t) {
            const NatTrans& nt = lnS.nts[t];
            std::vector<std::uint32_t> key{fmap[nt.source_functor],
                                           fmap[nt.target_functor]};
            for (MorId comp : nt.components) key.push_back(f.mor_map[comp]);
            tmap[t] = lnT.index.at(key);
        }
        out.maps[m].resize(nc.level[m].trunc + 1);
        out.maps[m][0] = fmap;
        for (int n = 1; n <= nc.level[m].trunc; ++n) {
            out.maps[m][n].resize(nc.level[m].size[n]);
            std::vector<std::uint32_t> key(n);
            for (std::uint32_t cell = 0; cell < nc.level[m].size[n]; ++cell) {
                for (int j = 0; j < n; ++j)
                    key[j] = tmap[src_data.nerves[m]
                                      .chains[n][std::size_t(cell) * n + j]];
                out.maps[m][n][cell] = dst_data.nerves[m].index_of(n, key);
            }
        }
    }
    return out;
}

SSpaceMap discnerve_inclusion(SSpacePtr dnp, SSpacePtr ncp) {
    const TruncSSpace& dn = *dnp;
    const TruncSSpace& nc = *ncp;
    if (!dn.tag || !nc.tag || dn.tag->base != nc.tag->base)
        throw SegalError("discnerve_inclusion needs diagrams over one base");
    if (!dn.tag->weq_identities)
        throw SegalError("discnerve_inclusion: source is not a discrete nerve");
    SSpaceMap f;
    f.source = dnp;
    f.target = ncp;
    f.maps.resize(dn.m_trunc + 1);
    for (int m = 0; m <= dn.m_trunc; ++m) {
        // level functors are enumerated identically on both sides, and the
        // discrete nerve's (m, n) cell index equals its functor index
        f.maps[m].resize(dn.level[m].trunc + 1);
        std::uint32_t nf = dn.cells(m, 0);
        if (nf != nc.cells(m, 0))
            throw SegalError("discnerve_inclusion: functor counts differ");
        for (int n = 0; n <= dn.level[m].trunc; ++n) {
            f.maps[m][n].resize(dn.cells(m, n));
            for (std::uint32_t c = 0; c < dn.cells(m, n); ++c) {
                std::uint32_t img = c;  // cell index = functor index
                for (int p = 0; p < n; ++p) img = nc.level[m].degen[p][0][img];
                f.maps[m][n][c] = img;
            }
        }
    }
    return f;
}

// ---- products, windows, maps ---------------------------------------------

TruncSSpace sspace_product(const TruncSSpace& a, const TruncSSpace& b) {
    if (a.m_trunc != b.m_trunc)
        throw SegalError("sspace_product needs equal outer truncations");
    TruncSSpace x;
    x.m_trunc = a.m_trunc;
    x.level.resize(a.m_trunc + 1);
    for (int m = 0; m <= a.m_trunc; ++m) {
        int t = std::min(a.level[m].trunc, b.level[m].trunc);
        x.level[m] = sset_product(truncate_sset(a.level[m], t),
                                  truncate_sset(b.level[m], t));
    }
    x.outer_face.resize(a.m_trunc + 1);
    x.outer_degen.resize(a.m_trunc + 1);
    for (int m = 1; m <= a.m_trunc; ++m) {
        x.outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            x.outer_face[m][i].resize(x.level[m].trunc + 1);
            for (int n = 0; n <= x.level[m].trunc; ++n) {
                auto& tab = x.outer_face[m][i][n];
                tab.resize(x.level[m].size[n]);
                std::uint32_t bs = b.level[m].size[n];
                std::uint32_t bt = b.level[m - 1].size[n];
                for (std::uint32_t ca = 0; ca < a.level[m].size[n]; ++ca)
                    for (std::uint32_t cb = 0; cb < bs; ++cb)
                        tab[ca * bs + cb] = a.outer_face[m][i][n][ca] * bt +
                                            b.outer_face[m][i][n][cb];
            }
        }
    }
    for (int m = 0; m < a.m_trunc; ++m) {
        x.outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            x.outer_degen[m][i].resize(x.level[m + 1].trunc + 1);
            for (int n = 0; n <= x.level[m + 1].trunc; ++n) {
                auto& tab = x.outer_degen[m][i][n];
                tab.resize(x.level[m].size[n]);
                std::uint32_t bs = b.level[m].size[n];
                std::uint32_t bt = b.level[m + 1].size[n];
                for (std::uint32_t ca = 0; ca < a.level[m].size[n]; ++ca)
                    for (std::uint32_t cb = 0; cb < bs; ++cb)
                        tab[ca * bs + cb] = a.outer_degen[m][i][n][ca] * bt +
                                            b.outer_degen[m][i][n][cb];
            }
        }
    }
    auto combine = [](const std::optional<std::pair<int, int>>& l,
                      const std::optional<std::pair<int, int>>& r)
        -> std::optional<std::pair<int, int>> {
        if (!l && !r) return std::nullopt;
        auto lv = l.value_or(std::pair<int, int>{kUnboundedDegree,
                                                 kUnboundedDegree});
        auto rv = r.value_or(std::pair<int, int>{kUnboundedDegree,
                                                 kUnboundedDegree});
        return std::pair<int, int>{std::max(lv.first, rv.first),
                                   std::max(lv.second, rv.second)};
    };
    x.gen_bidegree = combine(a.gen_bidegree, b.gen_bidegree);
    x.cosk_bidegree = combine(a.cosk_bidegree, b.cosk_bidegree);
    return x;
}

TruncSSpace restrict_window(const TruncSSpace& x, const Window& w) {
    if (w.m > x.m_trunc)
        throw SegalError("restrict_window cannot extend the outer truncation");
    TruncSSpace out;
    out.m_trunc = w.m;
    out.level.resize(w.m + 1);
    for (int m = 0; m <= w.m; ++m) {
        if (w.n_at(m) > x.level[m].trunc)
            throw SegalError("restrict_window cannot deepen a level");
        out.level[m] = truncate_sset(x.level[m], w.n_at(m));
    }
    out.outer_face.resize(w.m + 1);
    out.outer_degen.resize(w.m + 1);
    for (int m = 1; m <= w.m; ++m) {
        out.outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i)
            out.outer_face[m][i].assign(
                x.outer_face[m][i].begin(),
                x.outer_face[m][i].begin() + w.n_at(m) + 1);
    }
    for (int m = 0; m < w.m; ++m) {
        out.outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i)
            out.outer_degen[m][i].assign(
                x.outer_degen[m][i].begin(),
                x.outer_degen[m][i].begin() + w.n_at(m + 1) + 1);
    }
    out.gen_bidegree = x.gen_bidegree;
    out.cosk_bidegree = x.cosk_bidegree;
    out.tag = x.tag;
    return out;
}

Window common_window(const TruncSSpace& x, const TruncSSpace& y) {
    Window w;
    w.m = std::min(x.m_trunc, y.m_trunc);
    for (int m = 0; m <= w.m; ++m)
        w.n_at_level.push_back(std::min(x.level[m].trunc, y.level[m].trunc));
    return w;
}

bool bidegree_within_window(const std::pair<int, int>& bd, const Window& w) {
    if (bd.first > w.m) return false;
    for (int m = 0; m <= w.m; ++m)
        if (bd.second > w.n_at(m)) return false;
    return true;
}

namespace {

// Truncated maps X -> W on a window are exactly the genuine maps when each
// direction is controlled on at least one side: the domain generated within
// the window, or the codomain coskeletal within it.
bool maps_exact_on(const TruncSSpace& x, const TruncSSpace& w,
                   const Window& win) {
    int gen_m = x.gen_bidegree ? x.gen_bidegree->first : kUnboundedDegree;
    int gen_n = x.gen_bidegree ? x.gen_bidegree->second : kUnboundedDegree;
    int cosk_m = w.cosk_bidegree ? w.cosk_bidegree->first : kUnboundedDegree;
    int cosk_n = w.cosk_bidegree ? w.cosk_bidegree->second : kUnboundedDegree;
    bool m_ok = gen_m <= win.m || cosk_m <= win.m;
    bool n_ok = gen_n <= win.n_min() || cosk_n <= win.n_min();
    return m_ok && n_ok;
}

}  // namespace

SSpaceMapsResult sspace_maps(SSpacePtr xp, SSpacePtr yp, const Bounds& b) {
    Window w = common_window(*xp, *yp);
    auto xr = std::make_shared<TruncSSpace>(restrict_window(*xp, w));
    auto yr = std::make_shared<TruncSSpace>(restrict_window(*yp, w));
    Complex ca = xr->to_complex();
    Complex cb = yr->to_complex();
    MapSearch p;
    p.domain = &ca;
    p.codomain = &cb;
    p.max_solutions = b.max_maps;
    p.max_nodes = b.max_nodes;
    auto r = enumerate_complex_maps(p);
    SSpaceMapsResult out;
    out.source = xr;
    out.target = yr;
    out.complete = r.complete;
    out.exact = maps_exact_on(*xp, *yp, w);
    auto gs = xr->grades();
    for (auto& sol : r.solutions) {
        SSpaceMap f;
        f.source = xr;
        f.target = yr;
        f.maps.resize(w.m + 1);
        for (int m = 0; m <= w.m; ++m) f.maps[m].resize(w.n_at(m) + 1);
        for (std::size_t g = 0; g < gs.size(); ++g)
            f.maps[gs[g].first][gs[g].second] = std::move(sol[g]);
        out.maps.push_back(std::move(f));
    }
    return out;
}

std::optional<GradedMap> sspace_iso(const TruncSSpace& x, const TruncSSpace& y,
                                    std::size_t max_nodes) {
    if (!(x.window() == y.window())) return std::nullopt;
    Complex ca = x.to_complex();
    Complex cb = y.to_complex();
    return find_complex_iso(ca, cb, max_nodes);
}

// ---- mapping spaces -------------------------------------------------------

namespace {

// The cell-transfer tables of id_X x Δ(delta): per grade of the target
// product X x Δ[n_to], the index of the corresponding source-product cell.
// delta: [n_to] -> [n_from].
std::vector<std::vector<std::uint32_t>> product_delta_transfer(
    const TruncSSpace& xr, int n_from, int n_to,
    const std::vector<int>& delta) {
    int depth = 0;
    for (int m = 0; m <= xr.m_trunc; ++m)
        depth = std::max(depth, xr.level[m].trunc);
    MonotoneTuples to(n_to, depth);
    MonotoneTuples fr(n_from, depth);
    std::vector<std::vector<std::uint32_t>> out;
    for (int m = 0; m <= xr.m_trunc; ++m)
        for (int p = 0; p <= xr.level[m].trunc; ++p) {
            std::uint32_t xs = xr.level[m].size[p];
            std::uint32_t dt = std::uint32_t(to.at[p].size());
            std::uint32_t df = std::uint32_t(fr.at[p].size());
            std::vector<std::uint32_t> tab(std::size_t(xs) * dt);
            for (std::uint32_t cd = 0; cd < dt; ++cd) {
                std::vector<int> t = to.at[p][cd];
                for (int& v : t) v = delta[v];
                std::uint32_t img = fr.index[p].at(t);
                for (std::uint32_t cx = 0; cx < xs; ++cx)
                    tab[std::size_t(cx) * dt + cd] = cx * df + img;
            }
            out.push_back(std::move(tab));
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

}  // namespace

SSpaceMap MappingSpace::point_as_map(std::uint32_t level0_cell) const {
    const GradedMap& rep = reps[0][level0_cell];
    SSpaceMap f;
    f.source = domain;
    f.target = target;
    f.maps.resize(domain->m_trunc + 1);
    auto gs = domain->grades();
    for (int m = 0; m <= domain->m_trunc; ++m)
        f.maps[m].resize(domain->level[m].trunc + 1);
    for (std::size_t g = 0; g < gs.size(); ++g)
        f.maps[gs[g].first][gs[g].second] = rep[g];
    return f;
}

MappingSpace mapping_space(SSpacePtr xp, SSpacePtr wp, int n_trunc,
                           const Bounds& b) {
    Window w = common_window(*xp, *wp);
    auto xr = std::make_shared<TruncSSpace>(restrict_window(*xp, w));
    auto wr = std::make_shared<TruncSSpace>(restrict_window(*wp, w));
    MappingSpace out;
    out.domain = xr;
    out.target = wr;
    out.space.trunc = n_trunc;
    out.space.size.assign(n_trunc + 1, 0);
    out.space.face.resize(n_trunc + 1);
    out.space.degen.resize(n_trunc + 1);
    out.reps.resize(n_trunc + 1);

    int delta_depth = 0;
    for (int m = 0; m <= w.m; ++m)
        delta_depth = std::max(delta_depth, w.n_at(m));

    Complex cw = wr->to_complex();
    std::vector<std::unordered_map<std::vector<std::uint32_t>, std::uint32_t,
                                   VecHash>>
        key_index(n_trunc + 1);

    for (int n = 0; n <= n_trunc; ++n) {
        TruncSSet dl = delta_sset(n, delta_depth);
        TruncSSpace prod = sspace_product(*xr, const_sspace(dl, w.m));
        Complex cp = prod.to_complex();
        MapSearch p;
        p.domain = &cp;
        p.codomain = &cw;
        p.max_solutions = b.max_maps;
        p.max_nodes = b.max_nodes;
        auto r = enumerate_complex_maps(p);
        if (!r.complete) out.complete = false;
        std::vector<std::pair<std::vector<std::uint32_t>, GradedMap>> sols;
        for (auto& s : r.solutions) sols.push_back({flatten(s), std::move(s)});
        std::sort(sols.begin(), sols.end(),
                  [](auto& a, auto& bb) { return a.first < bb.first; });
        out.space.size[n] = std::uint32_t(sols.size());
        for (std::uint32_t i = 0; i < sols.size(); ++i) {
            key_index[n][sols[i].first] = i;
            out.reps[n].push_back(std::move(sols[i].second));
        }
    }

    for (int n = 1; n <= n_trunc; ++n) {
        out.space.face[n].assign(n + 1,
                                 std::vector<std::uint32_t>(out.space.size[n]));
        for (int i = 0; i <= n; ++i) {
            auto transfer =
                product_delta_transfer(*xr, n, n - 1, coface_map(i, n));
            for (std::uint32_t cell = 0; cell < out.space.size[n]; ++cell)
                out.space.face[n][i][cell] =
                    key_index[n - 1].at(gather(out.reps[n][cell], transfer));
        }
    }
    for (int n = 0; n < n_trunc; ++n) {
        out.space.degen[n].assign(
            n + 1, std::vector<std::uint32_t>(out.space.size[n]));
        for (int i = 0; i <= n; ++i) {
            auto transfer =
                product_delta_transfer(*xr, n, n + 1, codegen_map(i, n));
            for (std::uint32_t cell = 0; cell < out.space.size[n]; ++cell)
                out.space.degen[n][i][cell] =
                    key_index[n + 1].at(gather(out.reps[n][cell], transfer));
        }
    }

    out.exact = maps_exact_on(*xp, *wp, w);
    return out;
}

namespace {

// Cell-transfer of id_X x F(fdelta) x Δ(ddelta) between triple products.
std::vector<std::vector<std::uint32_t>> triple_transfer(
    const TruncSSpace& xr, int kf, int nf, int kt, int nt,
    const std::vector<int>& fdelta, const std::vector<int>& ddelta) {
    int depth = 0;
    for (int m = 0; m <= xr.m_trunc; ++m)
        depth = std::max(depth, xr.level[m].trunc);
    MonotoneTuples ft(kt, xr.m_trunc), ff(kf, xr.m_trunc);
    MonotoneTuples dt(nt, depth), df(nf, depth);
    std::vector<std::vector<std::uint32_t>> out;
    for (int m = 0; m <= xr.m_trunc; ++m) {
        std::vector<std::uint32_t> ftab(ft.at[m].size());
        for (std::uint32_t c = 0; c < ft.at[m].size(); ++c) {
            std::vector<int> t = ft.at[m][c];
            for (int& v : t) v = fdelta[v];
            ftab[c] = ff.index[m].at(t);
        }
        std::uint32_t fs_from = std::uint32_t(ff.at[m].size());
        std::uint32_t fs_to = std::uint32_t(ft.at[m].size());
        for (int p = 0; p <= xr.level[m].trunc; ++p) {
            std::uint32_t xs = xr.level[m].size[p];
            std::uint32_t dt_size = std::uint32_t(dt.at[p].size());
            std::uint32_t df_size = std::uint32_t(df.at[p].size());
            std::vector<std::uint32_t> dtab(dt_size);
            for (std::uint32_t cd = 0; cd < dt_size; ++cd) {
                std::vector<int> t = dt.at[p][cd];
                for (int& v : t) v = ddelta[v];
                dtab[cd] = df.index[p].at(t);
            }
            std::vector<std::uint32_t> tab(std::size_t(xs) * fs_to * dt_size);
            for (std::uint32_t cx = 0; cx < xs; ++cx)
                for (std::uint32_t cf = 0; cf < fs_to; ++cf)
                    for (std::uint32_t cd = 0; cd < dt_size; ++cd)
                        tab[(std::size_t(cx) * fs_to + cf) * dt_size + cd] =
                            (cx * fs_from + ftab[cf]) * df_size + dtab[cd];
            out.push_back(std::move(tab));
        }
    }
    return out;
}

std::vector<int> identity_map_of(int n) {
    std::vector<int> d(n + 1);
    std::iota(d.begin(), d.end(), 0);
    return d;
}

}  // namespace

InternalHom internal_hom(SSpacePtr wp, SSpacePtr xp, const Window& out_window,
                         const Bounds& b) {
    Window w = common_window(*xp, *wp);
    auto xr = std::make_shared<TruncSSpace>(restrict_window(*xp, w));
    auto wr = std::make_shared<TruncSSpace>(restrict_window(*wp, w));
    Complex cw = wr->to_complex();

    InternalHom out;
    TruncSSpace& h = out.space;
    h.m_trunc = out_window.m;
    h.level.resize(out_window.m + 1);
    h.outer_face.resize(out_window.m + 1);
    h.outer_degen.resize(out_window.m + 1);

    int delta_depth = 0;
    for (int m = 0; m <= w.m; ++m)
        delta_depth = std::max(delta_depth, w.n_at(m));

    std::vector<std::vector<std::vector<GradedMap>>> reps(out_window.m + 1);
    std::vector<std::vector<std::unordered_map<std::vector<std::uint32_t>,
                                               std::uint32_t, VecHash>>>
        key_index(out_window.m + 1);

    for (int k = 0; k <= out_window.m; ++k) {
        TruncSSpace fk = standard_F(k, xr->window());
        TruncSSpace base = sspace_product(*xr, fk);
        int nt = out_window.n_at(k);
        TruncSSet& lv = h.level[k];
        lv.trunc = nt;
        lv.size.assign(nt + 1, 0);
        lv.face.resize(nt + 1);
        lv.degen.resize(nt + 1);
        reps[k].resize(nt + 1);
        key_index[k].resize(nt + 1);
        for (int n = 0; n <= nt; ++n) {
            TruncSSet dl = delta_sset(n, delta_depth);
            TruncSSpace prod = sspace_product(base, const_sspace(dl, w.m));
            Complex cp = prod.to_complex();
            MapSearch p;
            p.domain = &cp;
            p.codomain = &cw;
            p.max_solutions = b.max_maps;
            p.max_nodes = b.max_nodes;
            auto r = enumerate_complex_maps(p);
            if (!r.complete) out.complete = false;
            std::vector<std::pair<std::vector<std::uint32_t>, GradedMap>> sols;
            for (auto& s : r.solutions)
                sols.push_back({flatten(s), std::move(s)});
            std::sort(sols.begin(), sols.end(),
                      [](auto& a, auto& bb) { return a.first < bb.first; });
            lv.size[n] = std::uint32_t(sols.size());
            for (std::uint32_t i = 0; i < sols.size(); ++i) {
                key_index[k][n][sols[i].first] = i;
                reps[k][n].push_back(std::move(sols[i].second));
            }
        }
    }

    for (int k = 0; k <= out_window.m; ++k) {
        TruncSSet& lv = h.level[k];
        auto fid = identity_map_of(k);
        for (int n = 1; n <= lv.trunc; ++n) {
            lv.face[n].assign(n + 1, std::vector<std::uint32_t>(lv.size[n]));
            for (int i = 0; i <= n; ++i) {
                auto transfer =
                    triple_transfer(*xr, k, n, k, n - 1, fid,
                                    coface_map(i, n));
                for (std::uint32_t cell = 0; cell < lv.size[n]; ++cell)
                    lv.face[n][i][cell] = key_index[k][n - 1].at(
                        gather(reps[k][n][cell], transfer));
            }
        }
        for (int n = 0; n < lv.trunc; ++n) {
            lv.degen[n].assign(n + 1, std::vector<std::uint32_t>(lv.size[n]));
            for (int i = 0; i <= n; ++i) {
                auto transfer =
                    triple_transfer(*xr, k, n, k, n + 1, fid,
                                    codegen_map(i, n));
                for (std::uint32_t cell = 0; cell < lv.size[n]; ++cell)
                    lv.degen[n][i][cell] = key_index[k][n + 1].at(
                        gather(reps[k][n][cell], transfer));
            }
        }
    }
    for (int k = 1; k <= out_window.m; ++k) {
        h.outer_face[k].resize(k + 1);
        for (int i = 0; i <= k; ++i) {
            h.outer_face[k][i].resize(h.level[k].trunc + 1);
            for (int n = 0; n <= h.level[k].trunc; ++n) {
                auto transfer = triple_transfer(*xr, k, n, k - 1, n,
                                                coface_map(i, k),
                                                identity_map_of(n));
                auto& tab = h.outer_face[k][i][n];
                tab.resize(h.level[k].size[n]);
                for (std::uint32_t cell = 0; cell < h.level[k].size[n]; ++cell)
                    tab[cell] = key_index[k - 1][n].at(
                        gather(reps[k][n][cell], transfer));
            }
        }
    }
    for (int k = 0; k < out_window.m; ++k) {
        h.outer_degen[k].resize(k + 1);
        for (int i = 0; i <= k; ++i) {
            h.outer_degen[k][i].resize(h.level[k + 1].trunc + 1);
            for (int n = 0; n <= h.level[k + 1].trunc; ++n) {
                auto transfer = triple_transfer(*xr, k, n, k + 1, n,
                                                codegen_map(i, k),
                                                identity_map_of(n));
                auto& tab = h.outer_degen[k][i][n];
                tab.resize(h.level[k].size[n]);
                for (std::uint32_t cell = 0; cell < h.level[k].size[n]; ++cell)
                    tab[cell] = key_index[k + 1][n].at(
                        gather(reps[k][n][cell], transfer));
            }
        }
    }

    out.exact = maps_exact_on(*xp, *wp, w);
    return out;
}

InternalHom internal_hom_constant(SSpacePtr wp, const TruncSSet& kset,
                                  const Window& out_window, const Bounds& b) {
    // uniform space truncation keeps the level keys compatible
    int nmin = wp->level[wp->m_trunc].trunc;
    for (auto& lv : wp->level) nmin = std::min(nmin, lv.trunc);
    Window rect = Window::rect(wp->m_trunc, nmin);
    TruncSSpace wrv = restrict_window(*wp, rect);
    const TruncSSpace& wsp = wrv;

    InternalHom out;
    TruncSSpace& h = out.space;
    h.m_trunc = std::min(out_window.m, wsp.m_trunc);
    h.level.resize(h.m_trunc + 1);
    h.outer_face.resize(h.m_trunc + 1);
    h.outer_degen.resize(h.m_trunc + 1);

    TruncSSet kres = truncate_sset(kset, std::min(kset.trunc, nmin));

    std::vector<std::vector<std::vector<GradedMap>>> reps(h.m_trunc + 1);
    std::vector<std::vector<std::unordered_map<std::vector<std::uint32_t>,
                                               std::uint32_t, VecHash>>>
        key_index(h.m_trunc + 1);

    for (int m = 0; m <= h.m_trunc; ++m) {
        int nt = std::min(out_window.n_at(m), nmin);
        TruncSSet& lv = h.level[m];
        lv.trunc = nt;
        lv.size.assign(nt + 1, 0);
        lv.face.resize(nt + 1);
        lv.degen.resize(nt + 1);
        reps[m].resize(nt + 1);
        key_index[m].resize(nt + 1);
        Complex cwm = wsp.level[m].to_complex();
        for (int n = 0; n <= nt; ++n) {
            TruncSSet prod = sset_product(kres, delta_sset(n, nmin));
            Complex cp = prod.to_complex();
            MapSearch p;
            p.domain = &cp;
            p.codomain = &cwm;
            p.max_solutions = b.max_maps;
            p.max_nodes = b.max_nodes;
            auto r = enumerate_complex_maps(p);
            if (!r.complete) out.complete = false;
            std::vector<std::pair<std::vector<std::uint32_t>, GradedMap>> sols;
            for (auto& s : r.solutions)
                sols.push_back({flatten(s), std::move(s)});
            std::sort(sols.begin(), sols.end(),
                      [](auto& a, auto& bb) { return a.first < bb.first; });
            lv.size[n] = std::uint32_t(sols.size());
            for (std::uint32_t i = 0; i < sols.size(); ++i) {
                key_index[m][n][sols[i].first] = i;
                reps[m][n].push_back(std::move(sols[i].second));
            }
        }
    }

    // inner structure: precompose with id_K x Δ(delta)
    MonotoneTuples ignored(0, 0);
    auto sset_transfer = [&](int nf, int ntarget, const std::vector<int>& delta) {
        MonotoneTuples to(ntarget, nmin), fr(nf, nmin);
        std::vector<std::vector<std::uint32_t>> tabs;
        for (int p = 0; p <= nmin; ++p) {
            std::uint32_t ks = kres.size[p];
            std::uint32_t dt = std::uint32_t(to.at[p].size());
            std::uint32_t df = std::uint32_t(fr.at[p].size());
            std::vector<std::uint32_t> tab(std::size_t(ks) * dt);
            for (std::uint32_t cd = 0; cd < dt; ++cd) {
                std::vector<int> t = to.at[p][cd];
                for (int& v : t) v = delta[v];
                std::uint32_t img = fr.index[p].at(t);
                for (std::uint32_t ck = 0; ck < ks; ++ck)
                    tab[std::size_t(ck) * dt + cd] = ck * df + img;
            }
            tabs.push_back(std::move(tab));
        }
        return tabs;
    };

    for (int m = 0; m <= h.m_trunc; ++m) {
        TruncSSet& lv = h.level[m];
        for (int n = 1; n <= lv.trunc; ++n) {
            lv.face[n].assign(n + 1, std::vector<std::uint32_t>(lv.size[n]));
            for (int i = 0; i <= n; ++i) {
                auto transfer = sset_transfer(n, n - 1, coface_map(i, n));
                for (std::uint32_t cell = 0; cell < lv.size[n]; ++cell)
                    lv.face[n][i][cell] = key_index[m][n - 1].at(
                        gather(reps[m][n][cell], transfer));
            }
        }
        for (int n = 0; n < lv.trunc; ++n) {
            lv.degen[n].assign(n + 1, std::vector<std::uint32_t>(lv.size[n]));
            for (int i = 0; i <= n; ++i) {
                auto transfer = sset_transfer(n, n + 1, codegen_map(i, n));
                for (std::uint32_t cell = 0; cell < lv.size[n]; ++cell)
                    lv.degen[n][i][cell] = key_index[m][n + 1].at(
                        gather(reps[m][n][cell], transfer));
            }
        }
    }
    // outer structure: postcompose with the outer operators of W
    auto post = [&](const std::vector<std::vector<std::uint32_t>>& wmap,
                    const GradedMap& rep) {
        std::vector<std::uint32_t> flat;
        for (std::size_t p = 0; p < rep.size(); ++p)
            for (std::uint32_t v : rep[p]) flat.push_back(wmap[p][v]);
        return flat;
    };
    for (int m = 1; m <= h.m_trunc; ++m) {
        h.outer_face[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            h.outer_face[m][i].resize(h.level[m].trunc + 1);
            for (int n = 0; n <= h.level[m].trunc; ++n) {
                auto& tab = h.outer_face[m][i][n];
                tab.resize(h.level[m].size[n]);
                for (std::uint32_t cell = 0; cell < h.level[m].size[n]; ++cell)
                    tab[cell] = key_index[m - 1][n].at(
                        post(wsp.outer_face[m][i], reps[m][n][cell]));
            }
        }
    }
    for (int m = 0; m < h.m_trunc; ++m) {
        h.outer_degen[m].resize(m + 1);
        for (int i = 0; i <= m; ++i) {
            h.outer_degen[m][i].resize(h.level[m + 1].trunc + 1);
            for (int n = 0; n <= h.level[m + 1].trunc; ++n) {
                auto& tab = h.outer_degen[m][i][n];
                tab.resize(h.level[m].size[n]);
                for (std::uint32_t cell = 0; cell < h.level[m].size[n]; ++cell)
                    tab[cell] = key_index[m + 1][n].at(
                        post(wsp.outer_degen[m][i], reps[m][n][cell]));
            }
        }
    }
    out.exact = kres.gen_level.has_value();
    return out;
}

TruncSSet diag_space(const TruncSSpace& w) {
    int t = -1;
    for (int n = 0; n <= w.m_trunc; ++n) {
        if (w.level[n].trunc < n) break;
        t = n;
    }
    if (t < 0) throw SegalError("diag_space: window admits no diagonal");
    TruncSSet x;
    x.trunc = t;
    x.size.resize(t + 1);
    x.face.resize(t + 1);
    x.degen.resize(t + 1);
    for (int n = 0; n <= t; ++n) x.size[n] = w.level[n].size[n];
    for (int n = 1; n <= t; ++n) {
        x.face[n].assign(n + 1, std::vector<std::uint32_t>(x.size[n]));
        for (int i = 0; i <= n; ++i)
            for (std::uint32_t c = 0; c < x.size[n]; ++c)
                x.face[n][i][c] =
                    w.level[n - 1].face[n][i][w.outer_face[n][i][n][c]];
    }
    for (int n = 0; n < t; ++n) {
        x.degen[n].assign(n + 1, std::vector<std::uint32_t>(x.size[n]));
        for (int i = 0; i <= n; ++i)
            for (std::uint32_t c = 0; c < x.size[n]; ++c)
                x.degen[n][i][c] =
                    w.level[n + 1].degen[n][i][w.outer_degen[n][i][n][c]];
    }
    return x;
}

json sspace_to_json(const TruncSSpace& x) {
    json j;
    j["m_trunc"] = x.m_trunc;
    json levels = json::array();
    for (auto& lv : x.level) levels.push_back(sset_to_json(lv));
    j["levels"] = levels;
    json of = json::array();
    for (int m = 1; m <= x.m_trunc; ++m) of.push_back(x.outer_face[m]);
    j["outer_faces"] = of;
    json od = json::array();
    for (int m = 0; m < x.m_trunc; ++m) od.push_back(x.outer_degen[m]);
    j["outer_degeneracies"] = od;
    if (x.gen_bidegree)
        j["gen_bidegree"] = {x.gen_bidegree->first, x.gen_bidegree->second};
    if (x.cosk_bidegree)
        j["cosk_bidegree"] = {x.cosk_bidegree->first, x.cosk_bidegree->second};
    return j;
}

}  // namespace segal
