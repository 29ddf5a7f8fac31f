#pragma once

#include <cstdint>
#include <vector>

#include "segal/sspace.hpp"
#include "segal/verdict.hpp"

namespace segal {

// A cover of F(n): a union of alpha-images alpha^i F(k) with k >= 1 that
// contains every vertex.
struct Cover {
    int parent_n = 0;
    std::vector<std::pair<int, int>> constituents;  // (i, k)
    SubObject realized;
};

// Decides the cover predicate; the witness lists the maximal constituents.
Verdict is_cover(const SubObject& g, int n);

// All distinct covers of F(n), deduplicated as subobjects.
std::vector<Cover> enumerate_covers(int n, SSpacePtr fn);

// Writes F(1) x F(n) as the union of the (n+1) prism pieces gamma^i F(n+1),
// consecutive pieces meeting exactly in delta^i F(n).
Verdict prism_decomposition_check(int n);

// The filtration E^(1) in E^(2) in ... inside the discrete nerve of I[1];
// stage j is generated by the alternating word of length j+1.
struct EFiltration {
    SSpacePtr e;
    std::vector<SubObject> stage;  // index j = 1..k
    Verdict counts;                // non-degenerate point counts per stage
};
EFiltration e_filtration(int k, int m_trunc, const Bounds& b = {});

// E^(k) arises from E^(k-1) by attaching F(k) along H(k), the largest
// subobject of F(k) missing the zeroth face of the identity.
Verdict filtration_pushout_check(int k, int m_trunc, const Bounds& b = {});

// H(k) decomposes as C(k) glued with the first face of F(k-1) along the
// first face of H(k-1).
Verdict hc_gluing_check(int k, int m_trunc, const Bounds& b = {});

json cover_to_json(const Cover& c);

}  // namespace segal
