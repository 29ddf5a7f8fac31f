#include "segal/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "segal/acceptance.hpp"
#include "segal/completion.hpp"
#include "segal/corpus.hpp"
#include "segal/covers.hpp"
#include "segal/homotopy.hpp"

namespace segal {

namespace {

struct CliOptions {
    int mtrunc = 3;
    int ntrunc = 2;
    std::size_t bound_functors = 10000;
    std::string format = "text";  // text | json
    std::string corpus_dir;
};

WidePair read_category(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_category(ss.str());
}

// one record of a report, in the spec's stable shape
struct Record {
    std::string name;
    std::string anchor;
    Verdict verdict;
    double ms = 0.0;
};

struct Report {
    std::string command;
    std::vector<Record> records;
    json payload;  // optional serialized object
    bool pass = true;

    json to_json() const {
        json j;
        j["schema"] = 1;
        j["command"] = command;
        j["pass"] = pass;
        json rs = json::array();
        for (auto& r : records) {
            json e{{"name", r.name},
                   {"anchor", r.anchor},
                   {"verdict", r.verdict.to_json()},
                   {"ms", r.ms}};
            rs.push_back(e);
        }
        j["checks"] = rs;
        if (!payload.is_null()) j["object"] = payload;
        return j;
    }

    void print_text(std::ostream& out) const {
        for (auto& r : records) {
            out << "[" << to_string(r.verdict.outcome) << "] " << r.name
                << "  (" << r.anchor << ")";
            if (!r.verdict.reason.empty()) out << "  " << r.verdict.reason;
            out << "\n";
            if (!r.verdict.witness.is_null())
                out << "    witness: " << r.verdict.witness.dump() << "\n";
        }
        if (!payload.is_null()) out << payload.dump(1) << "\n";
        out << (pass ? "pass" : "fail") << "\n";
    }
};

void add_record(Report& rep, const std::string& name,
                const std::string& anchor, Verdict v, bool expect_yes = true) {
    if (expect_yes && !v.is_yes()) rep.pass = false;
    rep.records.push_back(Record{name, anchor, std::move(v), 0.0});
}

Bounds bounds_of(const CliOptions& opt) {
    Bounds b;
    b.max_functors = opt.bound_functors;
    return b;
}

json counts_json(const TruncSSpace& w) {
    json rows = json::array();
    for (int m = 0; m <= w.m_trunc; ++m) {
        json row = json::array();
        for (int n = 0; n <= w.level[m].trunc; ++n) row.push_back(w.cells(m, n));
        rows.push_back(row);
    }
    return rows;
}

int finish(const Report& rep, const CliOptions& opt) {
    if (opt.format == "json")
        std::cout << rep.to_json().dump(1) << "\n";
    else
        rep.print_text(std::cout);
    return rep.pass ? 0 : 1;
}

enum class DiagramKind { Classify, Discnerve, Classification };

TruncSSpace build_diagram(DiagramKind kind, const WidePair& pair,
                          const CliOptions& opt) {
    Window w = Window::rect(opt.mtrunc, opt.ntrunc);
    switch (kind) {
        case DiagramKind::Classify:
            return classifying_diagram(pair.cat, w, bounds_of(opt));
        case DiagramKind::Discnerve:
            return discrete_nerve(pair.cat, w, bounds_of(opt));
        default:
            return classification_diagram(pair, w, bounds_of(opt));
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"finite nerve constructions, Segal-space checks, cover "
                 "calculus, and the completion comparison"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    CliOptions opt;
    if (const char* env = std::getenv("SEGAL_LAB_CORPUS"))
        opt.corpus_dir = env;
    app.add_option("--mtrunc", opt.mtrunc, "outer truncation (>= 2)");
    app.add_option("--ntrunc", opt.ntrunc, "space truncation (>= 0)");
    app.add_option("--bound-functors", opt.bound_functors,
                   "ceiling for functor enumerations");
    app.add_option("--format", opt.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--corpus", opt.corpus_dir, "corpus directory");

    std::string path, second, edge;
    DiagramKind kind = DiagramKind::Classify;
    auto add_kind_flags = [&](CLI::App* cmd) {
        cmd->add_flag_callback("--classify",
                               [&] { kind = DiagramKind::Classify; },
                               "use the classifying diagram (default)");
        cmd->add_flag_callback("--discnerve",
                               [&] { kind = DiagramKind::Discnerve; },
                               "use the discrete nerve");
        cmd->add_flag_callback("--classification",
                               [&] { kind = DiagramKind::Classification; },
                               "use N(C, W) with the file's weq line");
    };

    auto* nerve_cmd = app.add_subcommand("nerve", "nerve of a category");
    nerve_cmd->add_option("file", path)->required();

    auto* discnerve_cmd =
        app.add_subcommand("discnerve", "discrete nerve of a category");
    discnerve_cmd->add_option("file", path)->required();

    auto* classify_cmd =
        app.add_subcommand("classify", "classifying diagram of a category");
    classify_cmd->add_option("file", path)->required();

    auto* classification_cmd = app.add_subcommand(
        "classification", "classification diagram N(C, W) of a marked pair");
    classification_cmd->add_option("file", path)->required();

    auto* segal_cmd =
        app.add_subcommand("segal-check", "Segal-map verdicts per degree");
    segal_cmd->add_option("file", path)->required();
    add_kind_flags(segal_cmd);

    auto* complete_cmd =
        app.add_subcommand("complete-check", "completeness verdict");
    complete_cmd->add_option("file", path)->required();
    add_kind_flags(complete_cmd);

    auto* ho_cmd =
        app.add_subcommand("ho", "homotopy category of the diagram");
    ho_cmd->add_option("file", path)->required();
    add_kind_flags(ho_cmd);

    auto* dk_cmd = app.add_subcommand(
        "dk-check",
        "Dwyer-Kan verdict for the inclusion of the discrete nerve into the "
        "classifying diagram");
    dk_cmd->add_option("file", path)->required();

    auto* hoequiv_cmd = app.add_subcommand(
        "hoequiv", "homotopy-equivalence verdict for a marked arrow");
    hoequiv_cmd->add_option("file", path)->required();
    hoequiv_cmd->add_option("--arrow", edge, "arrow name")->required();
    add_kind_flags(hoequiv_cmd);

    int n_arg = 2;
    auto* covers_cmd = app.add_subcommand("covers", "enumerate covers of F(n)");
    covers_cmd->add_option("n", n_arg)->required();

    auto* prism_cmd =
        app.add_subcommand("prism", "prism decomposition of F(1) x F(n)");
    prism_cmd->add_option("n", n_arg)->required();

    auto* filtration_cmd = app.add_subcommand(
        "filtration", "filtration stages, pushouts, and gluings up to k");
    filtration_cmd->add_option("k", n_arg)->required();

    auto* completion_cmd = app.add_subcommand(
        "completion", "completion of the discrete nerve, compared with the "
                      "classifying diagram");
    completion_cmd->add_option("file", path)->required();

    auto* verify_cmd =
        app.add_subcommand("verify-suite", "run the acceptance corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report rep;
    try {
        if (nerve_cmd->parsed()) {
            rep.command = "nerve";
            auto pair = read_category(path);
            auto n = nerve(pair.cat, opt.ntrunc >= 2 ? opt.ntrunc : 3);
            rep.payload = sset_to_json(n);
        } else if (discnerve_cmd->parsed() || classify_cmd->parsed() ||
                   classification_cmd->parsed()) {
            auto pair = read_category(path);
            if (discnerve_cmd->parsed()) {
                rep.command = "discnerve";
                kind = DiagramKind::Discnerve;
            } else if (classify_cmd->parsed()) {
                rep.command = "classify";
                kind = DiagramKind::Classify;
            } else {
                rep.command = "classification";
                kind = DiagramKind::Classification;
            }
            auto w = build_diagram(kind, pair, opt);
            rep.payload = sspace_to_json(w);
            rep.payload["cells"] = counts_json(w);
        } else if (segal_cmd->parsed()) {
            rep.command = "segal-check";
            auto pair = read_category(path);
            auto w = build_diagram(kind, pair, opt);
            auto report = segal_check(w);
            Verdict v = report.all_exact()
                            ? Verdict::yes("all Segal maps are isomorphisms")
                            : Verdict::no("a Segal map fails", report.to_json());
            add_record(rep, "segal maps of " + path, "segal-maps-exact", v);
        } else if (complete_cmd->parsed()) {
            rep.command = "complete-check";
            auto pair = read_category(path);
            auto w = std::make_shared<TruncSSpace>(
                build_diagram(kind, pair, opt));
            Verdict v = completeness_check(w, bounds_of(opt));
            add_record(rep, "completeness of " + path,
                       "classifying-diagram-complete", v,
                       /*expect_yes=*/false);
            rep.pass = !v.is_unknown();
        } else if (ho_cmd->parsed()) {
            rep.command = "ho";
            auto pair = read_category(path);
            auto w = build_diagram(kind, pair, opt);
            auto ho = ho_category(w);
            rep.payload =
                json{{"objects", ho.cat->num_objects()},
                     {"morphisms", ho.cat->num_morphisms()},
                     {"category",
                      serialize_category(WidePair::with_identities(ho.cat))}};
            bool iso = find_cat_iso(ho.cat, pair.cat).has_value();
            add_record(rep, "homotopy category matches the input",
                       "homotopy-category-reconstruction",
                       iso ? Verdict::yes() : Verdict::no());
        } else if (dk_cmd->parsed()) {
            rep.command = "dk-check";
            auto pair = read_category(path);
            Window w = Window::rect(opt.mtrunc, opt.ntrunc);
            auto dn = std::make_shared<TruncSSpace>(
                discrete_nerve(pair.cat, w, bounds_of(opt)));
            auto nc = std::make_shared<TruncSSpace>(
                classifying_diagram(pair.cat, w, bounds_of(opt)));
            auto incl = discnerve_inclusion(dn, nc);
            add_record(rep, "discrete nerve into classifying diagram",
                       "dwyer-kan-inclusion", dk_check(incl, bounds_of(opt)));
        } else if (hoequiv_cmd->parsed()) {
            rep.command = "hoequiv";
            auto pair = read_category(path);
            auto w = build_diagram(kind, pair, opt);
            if (!w.tag) throw SegalError("diagram carries no arrow data");
            const auto& chains = w.tag->level_functor_chains[1];
            std::int64_t cell = -1;
            for (std::uint32_t e = 0; e < w.cells(1, 0); ++e)
                if (pair.cat->mor_label(chains[e][0]) == edge) cell = e;
            if (cell < 0) throw ParseError("arrow not found: " + edge);
            Verdict v = is_hoequiv(w, std::uint32_t(cell));
            add_record(rep, "arrow " + edge, "homotopy-equivalence-lift", v,
                       /*expect_yes=*/false);
            rep.pass = !v.is_unknown();
        } else if (covers_cmd->parsed()) {
            rep.command = "covers";
            auto fn = std::make_shared<TruncSSpace>(
                standard_F(n_arg, Window::rect(n_arg, 0)));
            auto covers = enumerate_covers(n_arg, fn);
            json arr = json::array();
            for (auto& c : covers) arr.push_back(cover_to_json(c));
            rep.payload = json{{"count", covers.size()}, {"covers", arr}};
            bool all = true;
            for (auto& c : covers)
                all = all && is_cover(c.realized, n_arg).is_yes();
            add_record(rep, "every enumerated cover passes the predicate",
                       "cover-enumeration",
                       all ? Verdict::yes() : Verdict::no());
        } else if (prism_cmd->parsed()) {
            rep.command = "prism";
            add_record(rep, "prism decomposition of F(1) x F(" +
                                std::to_string(n_arg) + ")",
                       "prism-decomposition",
                       prism_decomposition_check(n_arg));
        } else if (filtration_cmd->parsed()) {
            rep.command = "filtration";
            int m = std::max(opt.mtrunc, n_arg + 1);
            auto filt = e_filtration(n_arg, m, bounds_of(opt));
            add_record(rep, "word counts", "filtration-word-counts",
                       filt.counts);
            for (int k = 2; k <= n_arg; ++k) {
                add_record(rep, "pushout at stage " + std::to_string(k),
                           "filtration-pushout",
                           filtration_pushout_check(k, m, bounds_of(opt)));
                add_record(rep, "gluing at stage " + std::to_string(k),
                           "horn-subobject-gluing",
                           hc_gluing_check(k, m, bounds_of(opt)));
            }
        } else if (completion_cmd->parsed()) {
            rep.command = "completion";
            auto pair = read_category(path);
            Window w = Window::rect(std::min(opt.mtrunc, 2),
                                    std::min(opt.ntrunc, 2));
            auto dn = std::make_shared<TruncSSpace>(
                discrete_nerve(pair.cat, w, bounds_of(opt)));
            auto res = completion_tilde(dn, bounds_of(opt));
            auto nc = classifying_diagram(pair.cat, w, bounds_of(opt));
            bool iso = sspace_iso(*res.tilde, nc).has_value();
            rep.payload = json{{"tilde_cells", counts_json(*res.tilde)},
                               {"exact", res.exact}};
            add_record(rep, "completion against the classifying diagram",
                       "completion-comparison",
                       iso && res.exact
                           ? Verdict::yes()
                           : Verdict::no(res.exact ? "not isomorphic"
                                                   : "window-limited"));
        } else if (verify_cmd->parsed()) {
            rep.command = "verify-suite";
            auto corpus = opt.corpus_dir.empty()
                              ? builtin_corpus()
                              : load_corpus(opt.corpus_dir);
            auto report = run_acceptance(corpus);
            for (auto& c : report.criteria) {
                for (auto& r : c.records)
                    rep.records.push_back(Record{
                        r.name, r.anchor,
                        r.pass ? Verdict::yes(r.note)
                               : Verdict::no(r.note),
                        r.ms});
                if (opt.format != "json")
                    std::cout << "criterion " << c.id << " "
                              << (c.pass ? "PASS " : "FAIL ") << c.title
                              << "\n";
            }
            rep.pass = report.pass;
            if (opt.format == "json") {
                std::cout << report.to_json().dump(1) << "\n";
                return report.pass ? 0 : 1;
            }
            std::cout << (report.pass ? "pass" : "fail") << "\n";
            return report.pass ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BoundError& e) {
        std::cerr << "bound exceeded: " << e.what()
                  << " (reached " << e.reached << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return finish(rep, opt);
}

}  // namespace segal
