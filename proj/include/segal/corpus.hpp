#pragma once

#include <string>
#include <vector>

#include "segal/fincat.hpp"
#include "segal/sspace.hpp"

namespace segal {

// One acceptance-corpus category with its pinned truncation windows.  The
// classifying diagrams of groupoids grow like k^((m+1)(n+1)) cells, so each
// instance carries the deepest window that stays at desk scale; levels above
// m = 3 and space degrees above 2 add no information (nerves are
// 2-coskeletal and the matching maps are isomorphisms from level 3 up).
struct CorpusEntry {
    std::string name;
    std::string file;  // file name inside the corpus directory
    CatPtr cat;
    Window window;             // for the nerve-diagram suites
    Window completion_window;  // for the completion comparison
};

std::vector<CorpusEntry> builtin_corpus();

// Parses `<dir>/<file>` for each entry and checks it against the builtin.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

// Writes the corpus category files into a directory.
void write_corpus_files(const std::string& dir);

// Named functors with their expected equivalence verdicts, for the
// equivalence-detection suite.
struct FunctorCase {
    std::string name;
    Functor functor;
    bool expect_equivalence;
    Window window;  // window for the induced diagram map
};
std::vector<FunctorCase> corpus_functors();

std::shared_ptr<FinCat> idempotent_monoid_category();
std::shared_ptr<FinCat> cyclic_group_category(int order);
std::shared_ptr<FinCat> two_object_group_groupoid();  // Z/2 automorphisms
std::shared_ptr<FinCat> discrete_category(int n);

}  // namespace segal
