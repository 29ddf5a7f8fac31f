// Acceptance driver: runs every criterion over the corpus and prints one
// pass/fail line per criterion.  Exit status 0 iff everything passed.

#include <cstdio>
#include <cstring>
#include <string>

#include "segal/acceptance.hpp"

int main(int argc, char** argv) {
    std::string corpus_dir;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--corpus") && i + 1 < argc)
            corpus_dir = argv[++i];
        else if (!std::strcmp(argv[i], "-v") || !std::strcmp(argv[i], "--verbose"))
            verbose = true;
        else {
            std::fprintf(stderr,
                         "usage: acceptance [--corpus DIR] [--verbose]\n");
            return 2;
        }
    }
    try {
        auto corpus = corpus_dir.empty() ? segal::builtin_corpus()
                                         : segal::load_corpus(corpus_dir);
        auto report = segal::run_acceptance(corpus);
        for (auto& c : report.criteria) {
            std::printf("criterion %2d [%s] %-66s (%.0f ms)\n", c.id,
                        c.pass ? "PASS" : "FAIL", c.title.c_str(), c.ms);
            for (auto& rec : c.records)
                if (verbose || !rec.pass)
                    std::printf("    %s %-50s %s %s\n",
                                rec.pass ? "ok  " : "FAIL", rec.name.c_str(),
                                rec.anchor.c_str(), rec.note.c_str());
        }
        std::printf("%s\n", report.pass ? "ALL CRITERIA PASS"
                                        : "SOME CRITERIA FAILED");
        return report.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
