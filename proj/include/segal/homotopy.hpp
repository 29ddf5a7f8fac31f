#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "segal/sspace.hpp"
#include "segal/verdict.hpp"

namespace segal {

// Verdict of one Segal map phi_k within the decidable fragment.  Exact-iso
// means a levelwise bijection on an object of nerve provenance (where
// bijections are weak equivalences); Bijective-on-cells records the same
// cell-level fact without the weak-equivalence reading.
enum class SegalVerdict { ExactIso, BijectiveOnCells, Failed, Unknown };

std::string to_string(SegalVerdict v);

struct SegalReport {
    int max_k = 0;
    std::vector<SegalVerdict> verdicts;  // index k, valid for 2 <= k <= max_k
    std::vector<json> witnesses;         // per k, null when bijective
    std::vector<std::string> fragment_checks;  // named decidable checks passed

    bool all_exact() const;
    bool all_bijective() const;
    json to_json() const;
};

// Checks phi_k: W_k -> W_1 x_{W_0} ... x_{W_0} W_1 cellwise for k = 2..M.
SegalReport segal_check(const TruncSSpace& w);

// ---- objects, mapping spaces, composition --------------------------------

std::uint32_t num_objects_of(const TruncSSpace& w);
std::uint32_t identity_of(const TruncSSpace& w, std::uint32_t x);
std::uint32_t source_of(const TruncSSpace& w, std::uint32_t g);
std::uint32_t target_of(const TruncSSpace& w, std::uint32_t g);

// The fiber of (d_1, d_0): W_1 -> W_0 x W_0 over the vertex pair (x, y), as
// a truncated simplicial set together with the parent cell of each fiber
// cell.
struct MapFiber {
    TruncSSet space;
    std::vector<std::vector<std::uint32_t>> parent_cell;  // [n][cell]
    std::vector<std::int64_t> vertex_of_parent;  // [W_1 vertex] -> fiber vertex or -1
};
MapFiber map_space(const TruncSSpace& w, std::uint32_t x, std::uint32_t y);

// Vertices of the fiber of W_j over a (j+1)-tuple of objects.
std::vector<std::uint32_t> multi_fiber_vertices(
    const TruncSSpace& w, const std::vector<std::uint32_t>& objects);

// All composition results d_1(k) over vertex lifts k of (g, f) along phi_2;
// f in map(x, y), g in map(y, z).  Empty result signals a non-Segal input.
std::vector<std::uint32_t> compose_results(const TruncSSpace& w,
                                           std::uint32_t f, std::uint32_t g);

// ---- the homotopy category ------------------------------------------------

struct HoCat {
    std::shared_ptr<FinCat> cat;
    // object i of cat is vertex object_origin[i] of W_0
    std::vector<std::uint32_t> object_origin;
    // morphism of cat -> a representative vertex of W_1 (identity cells for
    // identities)
    std::vector<std::uint32_t> hom_origin;
    // component class of every W_1 vertex inside its fiber -> morphism id
    std::vector<std::int64_t> class_of_vertex;
};

// Builds ho W: objects are vertices of W_0, homs are the components of the
// mapping fibers, composition through phi_2 lifts.  Throws InvariantError
// when composition fails to be independent of the lift choice (an input
// outside the decidable fragment).
HoCat ho_category(const TruncSSpace& w);

// The post/pre-composition action of a morphism on the hom-sets of ho W.
struct HomAction {
    std::vector<std::pair<MorId, MorId>> post;  // g -> f.g for tgt(g) = src(f)
    std::vector<std::pair<MorId, MorId>> pre;   // g -> g.f for src(g) = tgt(f)
};
HomAction ho_post_pre_compose(const HoCat& h, MorId f);

// ---- homotopy equivalences and completeness -------------------------------

// Lift criterion: g is a homotopy equivalence iff (id_x, g, id_y) lifts to a
// 3-cell; cross-checked against invertibility of [g] in ho W.
Verdict is_hoequiv(const TruncSSpace& w, std::uint32_t g);
Verdict is_hoequiv_with(const TruncSSpace& w, const HoCat& ho,
                        std::uint32_t g);

struct HoequivSubspace {
    SubObject sub;          // closure inside the parent
    TruncSSet space;        // the level-1 components themselves
    std::vector<char> hoequiv_vertex;  // per W_1 vertex
    std::uint32_t component_count = 0;
    std::vector<std::vector<std::uint32_t>> vertex_map;  // fiber of space in W_1
};
HoequivSubspace hoequiv_subspace(SSpacePtr w);

Verdict completeness_check(SSpacePtr w, const Bounds& b = {});

// Dwyer-Kan check for a map of Segal spaces: equivalence on ho plus the
// fragment weak-equivalence decision on every mapping fiber.
Verdict dk_check(const SSpaceMap& f, const Bounds& b = {});

// ---- categorical homotopy and equivalence ---------------------------------

std::shared_ptr<FinCat> zigzag_category();  // 0 -> 2 <- 1 -> 3
TruncSSpace standard_Z3(const Window& w);   // its discrete nerve

Verdict categorical_homotopy_search(const SSpaceMap& f, const SSpaceMap& g,
                                    const Bounds& b = {});
Verdict categorical_equivalence_search(const SSpaceMap& f,
                                       const Bounds& b = {});

// ---- discrete Segal spaces -------------------------------------------------

std::shared_ptr<FinCat> category_from_discrete_segal(SSpacePtr w);

// Iterated degeneracy of a vertex up to bidegree (m, n).
std::uint32_t degenerate_tower(const TruncSSpace& w, std::uint32_t vertex,
                               int m, int n);

}  // namespace segal
