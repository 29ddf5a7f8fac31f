#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "segal/verdict.hpp"

namespace segal {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

// A finite category: object list, morphism list with sources/targets, the
// identity of each object, and a total composition table on composable pairs.
// Values are immutable after construction; all operations are pure.
struct FinCat {
    std::vector<std::string> obj_names;  // may be empty for derived categories
    std::vector<std::string> mor_names;
    std::vector<ObjId> mor_src;
    std::vector<ObjId> mor_tgt;
    std::vector<MorId> identity;  // per object

    std::size_t num_objects() const { return identity.size(); }
    std::size_t num_morphisms() const { return mor_src.size(); }

    bool composable(MorId g, MorId f) const { return mor_src[g] == mor_tgt[f]; }
    MorId compose(MorId g, MorId f) const;  // g∘f; throws if not composable
    bool is_identity(MorId f) const;

    void set_compose(MorId g, MorId f, MorId gf);
    std::size_t compose_entries() const { return compose_.size(); }

    // All morphisms x -> y, in id order.
    std::vector<MorId> hom(ObjId x, ObjId y) const;
    const std::vector<MorId>& from(ObjId x) const { return from_[x]; }

    std::optional<MorId> inverse(MorId f) const;
    bool is_iso(MorId f) const { return inverse(f).has_value(); }

    // Partition of objects by zig-zag isomorphism classes.
    std::vector<ObjId> iso_class_of_objects() const;

    std::string obj_label(ObjId x) const;
    std::string mor_label(MorId f) const;

    // Exhaustively verifies the category axioms: totality of the table on
    // composable pairs, identity laws, associativity.  Throws InvariantError
    // naming the offending datum.
    void validate() const;

    void finalize();  // builds the from_ index; call once after construction

  private:
    std::unordered_map<std::uint64_t, MorId> compose_;
    std::vector<std::vector<MorId>> from_;  // outgoing morphisms per object
};

using CatPtr = std::shared_ptr<const FinCat>;

struct Functor {
    CatPtr source;
    CatPtr target;
    std::vector<ObjId> obj_map;
    std::vector<MorId> mor_map;

    void validate() const;  // preserves sources/targets/identities/composites
    bool operator==(const Functor& o) const {
        return obj_map == o.obj_map && mor_map == o.mor_map;
    }
};

struct NatTrans {
    std::uint32_t source_functor = 0;  // indices into an ambient functor list
    std::uint32_t target_functor = 0;
    std::vector<MorId> components;  // per source-category object, in the target

    bool operator==(const NatTrans& o) const {
        return source_functor == o.source_functor &&
               target_functor == o.target_functor && components == o.components;
    }
};

// A category with a wide subcategory of weak equivalences.
struct WidePair {
    CatPtr cat;
    std::vector<char> weq;  // mask over morphisms

    void validate() const;  // wideness and closure under composition
    bool all_weq() const;

    static WidePair with_isos(CatPtr c);        // (C, iso C)
    static WidePair with_identities(CatPtr c);  // (C, C_0)
    static WidePair with_all(CatPtr c);         // (C, C)
};

FinCat terminal_category();
std::shared_ptr<FinCat> interval_category(int n);  // [n]

// I[n] together with the chosen inclusion [n] -> I[n].
struct IsoInterval {
    std::shared_ptr<FinCat> cat;
    Functor inclusion;  // from interval_category(n)
};
IsoInterval iso_interval_category(int n);

// Product category with its two projections.
struct ProductCat {
    std::shared_ptr<FinCat> cat;
    Functor proj1, proj2;
    std::vector<std::pair<ObjId, ObjId>> obj_pairs;
    std::vector<std::pair<MorId, MorId>> mor_pairs;
    ObjId obj_pair(ObjId a, ObjId b) const;
    MorId mor_pair(MorId f, MorId g) const;
};
ProductCat product(CatPtr c, CatPtr d);

// The category of functors dom -> cod with all natural transformations.
// Objects are indexed by `objects`, morphisms by `morphisms`.
struct FunctorCat {
    std::shared_ptr<FinCat> cat;
    std::vector<Functor> objects;
    std::vector<NatTrans> morphisms;
};
FunctorCat functor_category(CatPtr dom, CatPtr cod, const Bounds& b = {});

// we(C^dom) for pair = (C, W): all functors dom -> C, and exactly the natural
// transformations whose every component lies in W.  Returned as a WidePair
// whose category is we(C^dom) and whose weq mask marks every morphism.
struct WeFunctorCat {
    WidePair pair;
    std::vector<Functor> objects;
    std::vector<NatTrans> morphisms;
};
WeFunctorCat we_functor_category(const WidePair& pair, CatPtr dom,
                                 const Bounds& b = {});

// Maximal subgroupoid, with the index maps back into the parent.
struct SubGroupoid {
    std::shared_ptr<FinCat> cat;
    std::vector<MorId> mor_in_parent;
};
SubGroupoid iso_subgroupoid(const FinCat& c);

// Full subcategory on the given objects.
std::shared_ptr<FinCat> full_subcategory(const FinCat& c,
                                         const std::vector<ObjId>& objects);

std::vector<Functor> enumerate_functors(CatPtr dom, CatPtr cod,
                                        const Bounds& b = {});
std::vector<NatTrans> enumerate_nat_trans(const FinCat& cod,
                                          const std::vector<Functor>& functors,
                                          const Bounds& b = {});

Verdict is_equivalence(const Functor& f);
Verdict equivalent(CatPtr c, CatPtr d, const Bounds& b = {});
Verdict groupoid_equivalent(const FinCat& g, const FinCat& h,
                            const Bounds& b = {});

// Exact isomorphism of categories: bijections on objects and morphisms
// commuting with all structure, found by backtracking.
std::optional<Functor> find_cat_iso(CatPtr c, CatPtr d, const Bounds& b = {});

Functor identity_functor(CatPtr c);
Functor compose_functors(const Functor& g, const Functor& f);

// Text format: `objects:`, `arrow: f a b`, `compose: g f h`, `weq: ...`.
WidePair parse_category(const std::string& text);
std::string serialize_category(const WidePair& pair);

}  // namespace segal
