#include "segal/complex.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace segal {

std::size_t Complex::total_cells() const {
    std::size_t t = 0;
    for (auto s : size) t += s;
    return t;
}

void Complex::freeze() {
    ops_from.assign(size.size(), {});
    ops_to.assign(size.size(), {});
    inv.assign(ops.size(), {});
    for (int i = 0; i < int(ops.size()); ++i) {
        ops_from[ops[i].from].push_back(i);
        ops_to[ops[i].to].push_back(i);
        inv[i].assign(size[ops[i].to], {});
        for (std::uint32_t c = 0; c < ops[i].tab.size(); ++c)
            inv[i][ops[i].tab[c]].push_back(c);
    }
}

namespace {

constexpr std::int64_t kUnassigned = -1;

struct Searcher {
    const Complex& A;
    const Complex& B;
    const MapSearch& prob;
    MapSearchResult result;

    std::vector<std::size_t> offset;
    std::size_t total = 0;
    std::vector<std::int64_t> value;  // per flat domain cell
    std::vector<int> grade_of;
    std::vector<std::uint32_t> index_of;
    std::vector<std::vector<char>> used;  // bijectivity bookkeeping
    std::vector<std::size_t> trail;
    std::vector<std::size_t> order;  // static BFS assignment order

    explicit Searcher(const MapSearch& p)
        : A(*p.domain), B(*p.codomain), prob(p) {
        offset.resize(A.size.size() + 1, 0);
        for (std::size_t g = 0; g < A.size.size(); ++g)
            offset[g + 1] = offset[g] + A.size[g];
        total = offset.back();
        value.assign(total, kUnassigned);
        grade_of.resize(total);
        index_of.resize(total);
        for (std::size_t g = 0; g < A.size.size(); ++g)
            for (std::uint32_t c = 0; c < A.size[g]; ++c) {
                grade_of[offset[g] + c] = int(g);
                index_of[offset[g] + c] = c;
            }
        if (prob.bijective) {
            used.resize(B.size.size());
            for (std::size_t g = 0; g < B.size.size(); ++g)
                used[g].assign(B.size[g], 0);
        }
        build_order();
    }

    std::size_t flat(int g, std::uint32_t c) const { return offset[g] + c; }

    // Traversal over operator adjacency so that nearly every cell is reached
    // after a neighbor that constrains it.  Bottom-up: plain BFS from the
    // lowest cells (isomorphism search, where low grades have the small
    // candidate sets).  Top-down: highest total degree first, so that a
    // branch on one top cell forces its whole face closure by propagation
    // before the next top cell is touched.
    void build_order() {
        std::vector<char> seen(total, 0);
        order.reserve(total);
        auto weight_of = [&](std::size_t cell) {
            int g = grade_of[cell];
            return g < int(A.weight.size()) ? A.weight[g] : 0;
        };
        // priority: top_down prefers heavy cells, then discovery order
        using Entry = std::pair<int, std::size_t>;
        auto cmp = [](const Entry& a, const Entry& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;  // earlier discovery first
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(
            cmp);
        std::size_t discovered = 0;
        auto visit = [&](std::size_t cell) {
            if (seen[cell]) return;
            seen[cell] = 1;
            int w = prob.top_down ? weight_of(cell) : -weight_of(cell);
            queue.push({w, discovered++});
            queue_cells.push_back(cell);
        };
        auto next_root = [&]() -> std::size_t {
            std::size_t best = total;
            for (std::size_t c = 0; c < total; ++c) {
                if (seen[c]) continue;
                if (best == total ||
                    (prob.top_down ? weight_of(c) > weight_of(best)
                                   : weight_of(c) < weight_of(best)))
                    best = c;
            }
            return best;
        };
        while (true) {
            std::size_t root = next_root();
            if (root == total) break;
            visit(root);
            while (!queue.empty()) {
                auto [w, disc] = queue.top();
                queue.pop();
                std::size_t u = queue_cells[disc];
                order.push_back(u);
                int g = grade_of[u];
                for (int opi : A.ops_from[g])
                    visit(flat(A.ops[opi].to, A.ops[opi].tab[index_of[u]]));
                for (int opi : A.ops_to[g])
                    for (std::uint32_t pre : A.inv[opi][index_of[u]])
                        visit(flat(A.ops[opi].from, pre));
            }
        }
    }
    std::vector<std::size_t> queue_cells;  // discovery order -> cell

    // Cells whose candidate sets may have shrunk; examined first when
    // branching so that empty candidate sets surface immediately.
    std::vector<std::size_t> hot;

    // Assign cell -> y and propagate through every operator out of its grade;
    // false on conflict.  Assignments are recorded on the trail.
    bool assign(std::size_t cell, std::uint32_t y) {
        if (value[cell] != kUnassigned) return value[cell] == std::int64_t(y);
        int g = grade_of[cell];
        if (prob.bijective) {
            if (used[g][y]) return false;
            used[g][y] = 1;
        }
        value[cell] = y;
        trail.push_back(cell);
        // cells mapping onto this one are now more constrained
        for (int opi : A.ops_to[g])
            for (std::uint32_t pre : A.inv[opi][index_of[cell]]) {
                std::size_t u = flat(A.ops[opi].from, pre);
                if (value[u] == kUnassigned) hot.push_back(u);
            }
        for (int opi : A.ops_from[g]) {
            const auto& op = A.ops[opi];
            const auto& bop = B.ops[opi];
            std::uint32_t img = op.tab[index_of[cell]];
            if (!assign(flat(op.to, img), bop.tab[y])) return false;
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            std::size_t cell = trail.back();
            trail.pop_back();
            if (prob.bijective)
                used[grade_of[cell]][std::uint32_t(value[cell])] = 0;
            value[cell] = kUnassigned;
        }
    }

    // Candidate images: intersect the constraints coming from operators whose
    // image cell is already assigned; otherwise the whole grade.
    std::vector<std::uint32_t> candidates(std::size_t cell) {
        int g = grade_of[cell];
        std::uint32_t c = index_of[cell];
        const std::vector<std::uint32_t>* best = nullptr;
        std::vector<int> constraining;
        for (int opi : A.ops_from[g]) {
            const auto& op = A.ops[opi];
            std::int64_t v = value[flat(op.to, op.tab[c])];
            if (v == kUnassigned) continue;
            constraining.push_back(opi);
            const auto& pre = B.inv[opi][std::uint32_t(v)];
            if (!best || pre.size() < best->size()) best = &pre;
        }
        std::vector<std::uint32_t> out;
        auto feasible = [&](std::uint32_t y) {
            if (prob.bijective && used[g][y]) return false;
            for (int opi : constraining) {
                const auto& op = A.ops[opi];
                const auto& bop = B.ops[opi];
                if (bop.tab[y] != std::uint32_t(value[flat(op.to, op.tab[c])]))
                    return false;
            }
            return true;
        };
        if (best) {
            for (std::uint32_t y : *best)
                if (feasible(y)) out.push_back(y);
        } else {
            out.reserve(B.size[g]);
            for (std::uint32_t y = 0; y < B.size[g]; ++y)
                if (feasible(y)) out.push_back(y);
        }
        return out;
    }

    bool solve(std::size_t pos) {  // false when a bound tripped
        while (pos < total && value[order[pos]] != kUnassigned) ++pos;
        if (++result.nodes > prob.max_nodes) {
            result.complete = false;
            return false;
        }
        if (pos == total) {
            GradedMap sol(A.size.size());
            for (std::size_t g = 0; g < A.size.size(); ++g) {
                sol[g].resize(A.size[g]);
                for (std::uint32_t c = 0; c < A.size[g]; ++c)
                    sol[g][c] = std::uint32_t(value[flat(int(g), c)]);
            }
            result.solutions.push_back(std::move(sol));
            if (result.solutions.size() >= prob.max_solutions) {
                result.complete = false;
                return false;
            }
            return true;
        }
        // fail-first: prefer a recently constrained cell with the fewest
        // candidates over the static order
        std::size_t cell = order[pos];
        std::vector<std::uint32_t> cand;
        {
            std::size_t best = SIZE_MAX;
            std::size_t scanned = 0;
            for (std::size_t i = hot.size(); i-- > 0 && scanned < 24;) {
                std::size_t u = hot[i];
                if (value[u] != kUnassigned) continue;
                ++scanned;
                auto cs = candidates(u);
                if (cs.size() < best) {
                    best = cs.size();
                    cell = u;
                    cand = std::move(cs);
                    if (best <= 1) break;
                }
            }
            if (best > 2) {
                auto cs = candidates(order[pos]);
                if (cs.size() <= best) {
                    cell = order[pos];
                    cand = std::move(cs);
                }
            }
            if (hot.size() > 65536)
                hot.erase(hot.begin(), hot.begin() + 32768);
        }
        for (std::uint32_t y : cand) {
            std::size_t mark = trail.size();
            if (assign(cell, y)) {
                if (!solve(pos)) {
                    undo_to(mark);
                    return false;
                }
            }
            undo_to(mark);
        }
        return true;
    }

    void run() {
        if (!prob.seed.empty()) {
            for (std::size_t g = 0; g < A.size.size(); ++g)
                for (std::uint32_t c = 0; c < A.size[g]; ++c) {
                    std::int64_t v = prob.seed[g][c];
                    if (v < 0) continue;
                    if (!assign(flat(int(g), c), std::uint32_t(v))) return;
                }
        }
        solve(0);
    }
};

}  // namespace

MapSearchResult enumerate_complex_maps(const MapSearch& problem) {
    const Complex& a = *problem.domain;
    const Complex& b = *problem.codomain;
    if (a.ops.size() != b.ops.size())
        throw SegalError("complex map search needs parallel operator lists");
    if (problem.bijective)
        for (std::size_t g = 0; g < a.size.size(); ++g)
            if (a.size[g] != b.size[g]) return MapSearchResult{};
    Searcher s(problem);
    s.run();
    return std::move(s.result);
}

std::optional<GradedMap> find_complex_iso(const Complex& a, const Complex& b,
                                          std::size_t max_nodes) {
    MapSearch p;
    p.domain = &a;
    p.codomain = &b;
    p.bijective = true;
    p.top_down = false;
    p.max_solutions = 1;
    p.max_nodes = max_nodes;
    auto r = enumerate_complex_maps(p);
    if (r.solutions.empty()) {
        if (!r.complete)
            throw BoundError("isomorphism search hit node bound", r.nodes);
        return std::nullopt;
    }
    return std::move(r.solutions.front());
}

}  // namespace segal
