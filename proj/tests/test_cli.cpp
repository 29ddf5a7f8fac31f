#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "segal/cli.hpp"
#include "segal/corpus.hpp"

using namespace segal;

namespace {

struct TempCorpus {
    std::filesystem::path dir;
    TempCorpus() {
        dir = std::filesystem::temp_directory_path() / "segal-lab-test-corpus";
        write_corpus_files(dir.string());
    }
    std::string file(const std::string& name) const {
        return (dir / name).string();
    }
};

int run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("segal-lab");
    for (auto& a : args) argv.push_back(a.c_str());
    return run_cli(int(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("cli classify and reports") {
    TempCorpus tc;
    CHECK(run({"classify", tc.file("I1.cat"), "--ntrunc", "2",
               "--format", "json"}) == 0);
    CHECK(run({"nerve", tc.file("arrow.cat")}) == 0);
    CHECK(run({"discnerve", tc.file("chain2.cat")}) == 0);
    CHECK(run({"classification", tc.file("arrow.cat")}) == 0);
}

TEST_CASE("cli verdict commands") {
    TempCorpus tc;
    CHECK(run({"segal-check", tc.file("z2.cat")}) == 0);
    CHECK(run({"complete-check", tc.file("I1.cat")}) == 0);
    CHECK(run({"complete-check", "--discnerve", tc.file("I1.cat")}) == 0);
    CHECK(run({"ho", tc.file("chain2.cat")}) == 0);
    CHECK(run({"dk-check", tc.file("arrow.cat")}) == 0);
    CHECK(run({"hoequiv", tc.file("I1.cat"), "--arrow", "0~1"}) == 0);
    CHECK(run({"covers", "2"}) == 0);
    CHECK(run({"prism", "1"}) == 0);
    CHECK(run({"filtration", "2"}) == 0);
    CHECK(run({"completion", tc.file("arrow.cat")}) == 0);
}

TEST_CASE("cli error paths") {
    CHECK(run({"classify", "/nonexistent/file.cat"}) == 2);
    CHECK(run({"no-such-command"}) == 2);
    std::filesystem::path bad =
        std::filesystem::temp_directory_path() / "segal-lab-bad.cat";
    {
        std::ofstream out(bad);
        out << "objects: a\narrow: f a c\n";
    }
    CHECK(run({"classify", bad.string()}) == 2);
}

TEST_CASE("corpus files round-trip") {
    TempCorpus tc;
    auto entries = load_corpus(tc.dir.string());
    CHECK(entries.size() == builtin_corpus().size());
}
