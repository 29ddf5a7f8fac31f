#pragma once

#include <memory>

#include "segal/homotopy.hpp"
#include "segal/sspace.hpp"
#include "segal/verdict.hpp"

namespace segal {

// E(m): the discrete nerve of the contractible groupoid I[m].
TruncSSpace standard_E(int m, const Window& w, const Bounds& b = {});

// The completion of a Segal space: level n of the result is the diagonal of
// [m] |-> Map(E(m), W^{F(n)}), i.e. its p-cells are the maps
// E(p) x F(n) x Delta[p] -> W.  Computed without any fibrant replacement.
struct CompletionResult {
    SSpacePtr input;       // the window-restricted input
    SSpacePtr tilde;
    SSpaceMap natural_map;  // input -> tilde
    bool exact = false;
    bool complete = true;
};
CompletionResult completion_tilde(SSpacePtr w, const Bounds& b = {});

// Dwyer-Kan check of the natural map w -> tilde(w), in the decidable
// fragment.
Verdict tilde_dk_check(SSpacePtr w, const Bounds& b = {});

}  // namespace segal
