#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segal/complex.hpp"
#include "segal/fincat.hpp"
#include "segal/verdict.hpp"

namespace segal {

// A simplicial set truncated at level `trunc`: finite cell sets per level,
// face maps d_i for levels 1..trunc, degeneracy maps s_i for levels
// 0..trunc-1.  All simplicial identities hold within the truncation (checked
// by validate()).  `cosk_level` / `gen_level` record, when known, that the
// object is determined above that level / generated below it.
struct TruncSSet {
    int trunc = 0;
    std::vector<std::uint32_t> size;                          // per level
    std::vector<std::vector<std::vector<std::uint32_t>>> face;   // [n][i][cell]
    std::vector<std::vector<std::vector<std::uint32_t>>> degen;  // [n][i][cell]
    std::optional<int> cosk_level;
    std::optional<int> gen_level;
    std::vector<std::vector<std::string>> names;  // optional labels per level

    // When the object is (by construction) the nerve of a category, with
    // vertex i = object i and edge j = morphism j in the canonical chain
    // ordering produced by nerve().
    struct NerveTag {
        CatPtr cat;
        bool groupoid = false;
    };
    std::shared_ptr<const NerveTag> nerve_tag;

    std::uint32_t cells(int n) const { return size[n]; }
    std::uint32_t d(int n, int i, std::uint32_t c) const {
        return face[n][i][c];
    }
    std::uint32_t s(int n, int i, std::uint32_t c) const {
        return degen[n][i][c];
    }

    bool is_degenerate(int n, std::uint32_t c) const;
    std::vector<std::vector<char>> degenerate_mask() const;
    bool is_discrete() const;  // every cell above level 0 degenerate
    int max_nondegenerate_level() const;

    // Apply the operator induced by a monotone map delta: [m'] -> [n]
    // (delta given by its values, length m'+1) to a level-n cell.
    std::uint32_t apply(int n, const std::vector<int>& delta,
                        std::uint32_t c) const;

    std::string cell_label(int n, std::uint32_t c) const;
    void validate() const;  // simplicial identities, exhaustively
    Complex to_complex() const;
};

using SSetPtr = std::shared_ptr<const TruncSSet>;

struct SSetMap {
    SSetPtr source;
    SSetPtr target;
    std::vector<std::vector<std::uint32_t>> level_map;  // [n][cell]

    void validate() const;  // commutes with faces and degeneracies
};

// Standard objects.
TruncSSet delta_sset(int n, int trunc);           // Δ[n]
TruncSSet boundary_delta_sset(int n, int trunc);  // ∂Δ[n]
TruncSSet horn_sset(int n, int k, int trunc);     // Λ^k[n]

// The nerve: level n = composable n-chains of morphisms, in lexicographic
// order of morphism ids; level 0 = objects, level 1 = all morphisms in id
// order.  cosk_level = 2.
TruncSSet nerve(CatPtr c, int trunc);

// Nerve of a category presented by object count plus a morphism list with a
// composition callback; used where assembling a full composition table is
// wasteful.  Cell ordering convention matches nerve().
TruncSSet nerve_chains(std::uint32_t num_objects,
                       const std::vector<ObjId>& mor_src,
                       const std::vector<ObjId>& mor_tgt,
                       const std::vector<MorId>& identity,
                       const std::function<MorId(MorId, MorId)>& compose,
                       int trunc, const Bounds& b = {});

// Same construction, retaining the chain data and per-level chain indexes
// (needed when building the outer operators of classification diagrams).
struct ChainNerve {
    TruncSSet sset;
    // chains[n]: n morphism ids per cell, flattened; level 0 is the objects
    std::vector<std::vector<MorId>> chains;
    // chain id at level n >= 1 from its morphism tuple
    std::uint32_t index_of(int n, const std::vector<std::uint32_t>& key) const;

    struct Impl;
    std::shared_ptr<Impl> impl;
};
ChainNerve chain_nerve(std::uint32_t num_objects,
                       const std::vector<ObjId>& mor_src,
                       const std::vector<ObjId>& mor_tgt,
                       const std::vector<MorId>& identity,
                       const std::function<MorId(MorId, MorId)>& compose,
                       int trunc, const Bounds& b = {});

// Truncate to a lower level (slices the operator tables).
TruncSSet truncate_sset(const TruncSSet& x, int new_trunc);

TruncSSet sset_product(const TruncSSet& x, const TruncSSet& y);

// All simplicial maps x -> y within the truncation window, with a soundness
// flag: `exact` when x is generated and y coskeletal inside the window, so
// the truncated maps are exactly the restrictions of full maps.
struct SSetMapsResult {
    std::vector<SSetMap> maps;
    bool exact = false;
    bool complete = true;
};
SSetMapsResult sset_maps(SSetPtr x, SSetPtr y, const Bounds& b = {});

// Path components: vertex partition via the level-1 (d_1, d_0) graph.
struct Pi0 {
    std::vector<std::uint32_t> component;  // per vertex
    std::uint32_t count = 0;
    std::vector<std::uint32_t> representative;  // per component
};
Pi0 pi0(const TruncSSet& x);

Verdict nerve_groupoid_equiv(const TruncSSet& x, const TruncSSet& y,
                             const Bounds& b = {});

std::optional<GradedMap> sset_iso(const TruncSSet& x, const TruncSSet& y,
                                  std::size_t max_nodes = 30000000);

// Recover a category from a truncated nerve-like simplicial set (trunc >= 2):
// objects = vertices, morphisms = edges, composition via the unique 2-cell
// with matching outer faces.  Fails (nullopt) when no unique such 2-cell
// exists or the axioms do not hold.
std::optional<std::shared_ptr<FinCat>> category_from_nerve(const TruncSSet& x);

// Subcomplex spanned by the cells whose vertices all lie in the given vertex
// set, intersected with closure under all operators (for component unions).
TruncSSet component_subcomplex(const TruncSSet& x,
                               const std::vector<char>& keep_component,
                               const Pi0& p);

// Kan-style horn filling check for small instances: every map Λ^k[n] -> x
// extends to Δ[n] -> x within the truncation, for 1 <= n <= max_n.
Verdict fills_horns(SSetPtr x, int max_n, const Bounds& b = {});

json sset_to_json(const TruncSSet& x);

}  // namespace segal
