#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segal/complex.hpp"
#include "segal/fincat.hpp"
#include "segal/sset.hpp"
#include "segal/verdict.hpp"

namespace segal {

// Truncation window for a bisimplicial object: outer levels 0..m, and a
// space-truncation per outer level.  The per-level truncations are
// nonincreasing, which keeps every outer face map total.  Nerve levels of
// groupoids grow like k^((m+1)(n+1)) cells, so wide-and-shallow or
// narrow-and-deep windows are both needed in practice.
struct Window {
    int m = 4;
    std::vector<int> n_at_level;  // size m+1, nonincreasing

    static Window rect(int m, int n);
    int n_at(int level) const { return n_at_level[level]; }
    int n_min() const;
    bool operator==(const Window& o) const {
        return m == o.m && n_at_level == o.n_at_level;
    }
};

// Sentinel for a direction along which an object is not generated (or not
// coskeletal) at any finite degree.
inline constexpr int kUnboundedDegree = 1000;

// A bisimplicial set truncated to a window: a simplicial object in truncated
// simplicial sets.  level[m] is the m-th space; outer faces/degeneracies are
// levelwise simplicial maps.  Immutable after construction.
struct TruncSSpace {
    int m_trunc = 0;
    std::vector<TruncSSet> level;
    // outer_face[m][i][n][cell]: defined for m >= 1, 0 <= i <= m, total on
    // level m (target truncation is at least as deep)
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> outer_face;
    // outer_degen[m][i][n][cell]: defined for n <= level[m+1].trunc
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> outer_degen;

    // componentwise bounds; kUnboundedDegree marks a direction with no bound
    std::optional<std::pair<int, int>> gen_bidegree;
    std::optional<std::pair<int, int>> cosk_bidegree;

    // Provenance for classification diagrams N(C, W): the base pair plus the
    // functor/transformation data indexing each level's cells.
    struct ClassificationTag {
        CatPtr base;
        std::vector<char> weq;
        bool weq_all_isos = false;    // classifying diagram N(C)
        bool weq_identities = false;  // discrete nerve
        // level m: bidegree-(m, 0) cell f is the functor [m] -> base with
        // these object/morphism chains; bidegree-(m, 1) cell t is the
        // transformation level_morphisms[m][t]
        std::vector<std::vector<std::vector<ObjId>>> level_functor_objects;
        std::vector<std::vector<std::vector<MorId>>> level_functor_chains;
        std::vector<std::vector<NatTrans>> level_morphisms;
    };
    std::shared_ptr<const ClassificationTag> tag;

    int n_trunc(int m) const { return level[m].trunc; }
    Window window() const;
    std::uint32_t cells(int m, int n) const { return level[m].size[n]; }
    std::uint32_t outer(int m, int i, int n, std::uint32_t c) const {
        return outer_face[m][i][n][c];
    }
    std::uint32_t outer_s(int m, int i, int n, std::uint32_t c) const {
        return outer_degen[m][i][n][c];
    }

    // Outer operator for an arbitrary monotone delta: [m'] -> [m], applied to
    // a cell at bidegree (m, n); requires n <= n_trunc(m').
    std::uint32_t outer_apply(const std::vector<int>& delta, int m, int n,
                              std::uint32_t c) const;

    bool levelwise_discrete() const;
    bool bidegree_degenerate(int m, int n, std::uint32_t c) const;
    void validate() const;  // outer simplicial identities + level validity

    Complex to_complex() const;
    int grade_of(int m, int n) const;
    std::vector<std::pair<int, int>> grades() const;
};

using SSpacePtr = std::shared_ptr<const TruncSSpace>;

struct SSpaceMap {
    SSpacePtr source;
    SSpacePtr target;
    std::vector<std::vector<std::vector<std::uint32_t>>> maps;  // [m][n][cell]

    void validate() const;
};

SSpaceMap identity_sspace_map(SSpacePtr x);
SSpaceMap compose_sspace_maps(const SSpaceMap& g, const SSpaceMap& f);

// A subobject: per-bidegree cell subsets closed under all operators.
struct SubObject {
    SSpacePtr parent;
    std::vector<std::vector<std::vector<char>>> mask;  // [m][n][cell]

    static SubObject empty(SSpacePtr parent);
    static SubObject whole(SSpacePtr parent);

    bool is_closed() const;
    void close();  // closure under all operators (in place)
    std::size_t cell_count() const;
    std::uint32_t count(int m, int n) const;

    bool contains(const SubObject& other) const;
    bool operator==(const SubObject& other) const;
    SubObject unite(const SubObject& other) const;
    SubObject intersect(const SubObject& other) const;
};

SubObject generated_by(SSpacePtr parent,
                       const std::vector<std::tuple<int, int, std::uint32_t>>&
                           seed_cells);

// Materialized subobject with its inclusion into the parent.
struct Materialized {
    SSpacePtr space;
    SSpaceMap inclusion;
    // new index per bidegree, -1 when excluded
    std::vector<std::vector<std::vector<std::int64_t>>> new_index;
};
Materialized materialize(const SubObject& sub);

// ---- standard objects -------------------------------------------------

// F(k): level m is the discrete set of monotone maps [m] -> [k].
TruncSSpace standard_F(int k, const Window& w);

// Largest subobject of F(k) not containing the identity cell.
SubObject boundary_F(int k, SSpacePtr fk);

// G(k): union of the spine edges, the smallest cover.
SubObject standard_G(int k, SSpacePtr fk);

// Image of alpha^i: F(k) -> F(n), alpha^i(j) = i + j.
SubObject alpha_image(int i, int k, int n, SSpacePtr fn);

// Constant simplicial space on a truncated simplicial set.
TruncSSpace const_sspace(const TruncSSet& k, int m_trunc);

// Monotone maps [m] -> [k] in the lexicographic order used for the cells of
// standard_F(k).
std::vector<std::vector<int>> monotone_maps(int m, int k);
std::uint32_t monotone_index(const std::vector<int>& tuple, int k);

// ---- nerve-diagram constructions ---------------------------------------

// Classification diagram N(C, W): level m is the nerve of we(C^[m]).
TruncSSpace classification_diagram(const WidePair& pair, const Window& w,
                                   const Bounds& b = {});
TruncSSpace classifying_diagram(CatPtr c, const Window& w,
                                const Bounds& b = {});
TruncSSpace discrete_nerve(CatPtr c, const Window& w, const Bounds& b = {});

// The map N(f): N(C, V) -> N(D, W) induced by a functor with f(V) within W.
SSpaceMap classification_map(const Functor& f, SSpacePtr nc, SSpacePtr nd);

// The natural inclusion discnerve(C) -> N(C, W) over the same base category
// (cells of the discrete nerve are functors; their images are the degenerate
// transformation chains).
SSpaceMap discnerve_inclusion(SSpacePtr dn, SSpacePtr nc);

// ---- operations ---------------------------------------------------------

TruncSSpace sspace_product(const TruncSSpace& x, const TruncSSpace& y);

TruncSSpace restrict_window(const TruncSSpace& x, const Window& w);
Window common_window(const TruncSSpace& x, const TruncSSpace& y);
bool bidegree_within_window(const std::pair<int, int>& bd, const Window& w);

struct SSpaceMapsResult {
    std::vector<SSpaceMap> maps;  // between the window-restricted objects
    SSpacePtr source, target;     // the restricted objects
    bool exact = false;
    bool complete = true;
};
SSpaceMapsResult sspace_maps(SSpacePtr x, SSpacePtr y, const Bounds& b = {});

std::optional<GradedMap> sspace_iso(const TruncSSpace& x, const TruncSSpace& y,
                                    std::size_t max_nodes = 30000000);

// Mapping space Map(X, W): level n = maps X x Delta[n] -> W within the
// common window.  Cells keep their underlying assignments so that level-0
// points can be read back as SSpaceMaps.
struct MappingSpace {
    TruncSSet space;
    bool exact = false;
    bool complete = true;
    SSpacePtr domain;  // window-restricted X
    SSpacePtr target;  // window-restricted W
    // reps[n][cell]: graded map over (X x Delta[n]) -> W as flat complexes
    std::vector<std::vector<GradedMap>> reps;
    SSpaceMap point_as_map(std::uint32_t level0_cell) const;
};
MappingSpace mapping_space(SSpacePtr x, SSpacePtr w, int n_trunc,
                           const Bounds& b = {});

// Internal hom W^X: level k = Map(X x F(k), W).
struct InternalHom {
    TruncSSpace space;
    bool exact = false;
    bool complete = true;
};
InternalHom internal_hom(SSpacePtr w, SSpacePtr x, const Window& out_window,
                         const Bounds& b = {});

// W^K for a constant exponent: level m = the simplicial mapping set
// Map_S(K, W_m), computed levelwise.
InternalHom internal_hom_constant(SSpacePtr w, const TruncSSet& k,
                                  const Window& out_window,
                                  const Bounds& b = {});

// Diagonal: level n = bidegree (n, n) cells, operators applied in both
// directions; defined up to the largest n with n <= n_trunc(n).
TruncSSet diag_space(const TruncSSpace& w);

json sspace_to_json(const TruncSSpace& x);

}  // namespace segal
