#include "segal/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace segal {

std::shared_ptr<FinCat> idempotent_monoid_category() {
    auto c = std::make_shared<FinCat>();
    c->obj_names = {"*"};
    c->mor_names = {"id", "e"};
    c->mor_src = {0, 0};
    c->mor_tgt = {0, 0};
    c->identity = {0};
    c->set_compose(1, 1, 1);
    c->finalize();
    return c;
}

std::shared_ptr<FinCat> cyclic_group_category(int order) {
    auto c = std::make_shared<FinCat>();
    c->obj_names = {"*"};
    c->identity = {0};
    for (int i = 0; i < order; ++i) {
        c->mor_src.push_back(0);
        c->mor_tgt.push_back(0);
        c->mor_names.push_back(i == 0 ? "id" : "g" + std::to_string(i));
    }
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            c->set_compose(MorId(i), MorId(j), MorId((i + j) % order));
    c->finalize();
    return c;
}

std::shared_ptr<FinCat> two_object_group_groupoid() {
    // objects a, b; hom(x, y) = Z/2 for every ordered pair, with
    // (x -> y, g) . (w -> x, h) = (w -> y, g + h)
    auto c = std::make_shared<FinCat>();
    c->obj_names = {"a", "b"};
    auto mid = [](ObjId x, ObjId y, int g) {
        return MorId((x * 2 + y) * 2 + g);
    };
    for (ObjId x = 0; x < 2; ++x)
        for (ObjId y = 0; y < 2; ++y)
            for (int g = 0; g < 2; ++g) {
                c->mor_src.push_back(x);
                c->mor_tgt.push_back(y);
                std::string nm = std::string(x == 0 ? "a" : "b") +
                                 (y == 0 ? "a" : "b") +
                                 (g == 0 ? "0" : "1");
                c->mor_names.push_back(nm);
            }
    c->identity = {mid(0, 0, 0), mid(1, 1, 0)};
    for (ObjId x = 0; x < 2; ++x)
        for (ObjId y = 0; y < 2; ++y)
            for (ObjId z = 0; z < 2; ++z)
                for (int g = 0; g < 2; ++g)
                    for (int h = 0; h < 2; ++h)
                        c->set_compose(mid(y, z, g), mid(x, y, h),
                                       mid(x, z, (g + h) % 2));
    c->finalize();
    return c;
}

std::shared_ptr<FinCat> discrete_category(int n) {
    auto c = std::make_shared<FinCat>();
    for (ObjId i = 0; i < std::uint32_t(n); ++i) {
        c->obj_names.push_back("d" + std::to_string(i));
        c->mor_src.push_back(i);
        c->mor_tgt.push_back(i);
        c->mor_names.push_back("id" + std::to_string(i));
        c->identity.push_back(i);
    }
    c->finalize();
    return c;
}

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;
    out.push_back({"terminal", "terminal.cat", interval_category(0),
                   Window::rect(4, 4), Window::rect(2, 2)});
    out.push_back({"arrow", "arrow.cat", interval_category(1),
                   Window::rect(4, 4), Window::rect(2, 2)});
    out.push_back({"chain2", "chain2.cat", interval_category(2),
                   Window::rect(4, 4), Window::rect(2, 2)});
    out.push_back({"chain3", "chain3.cat", interval_category(3),
                   Window::rect(4, 3), Window::rect(2, 2)});
    out.push_back({"walking-iso", "I1.cat", iso_interval_category(1).cat,
                   Window::rect(4, 2), Window::rect(2, 2)});
    out.push_back({"codiscrete3", "I2.cat", iso_interval_category(2).cat,
                   Window::rect(4, 1), Window::rect(2, 1)});
    out.push_back({"group-z2", "z2.cat", cyclic_group_category(2),
                   Window::rect(4, 2), Window::rect(2, 2)});
    out.push_back({"groupoid-z2", "z2-groupoid.cat",
                   two_object_group_groupoid(), Window::rect(3, 1),
                   Window::rect(2, 1)});
    out.push_back({"idempotent", "idem.cat", idempotent_monoid_category(),
                   Window::rect(4, 4), Window::rect(2, 2)});
    out.push_back({"discrete2", "discrete2.cat", discrete_category(2),
                   Window::rect(4, 4), Window::rect(2, 2)});
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
    auto entries = builtin_corpus();
    for (auto& e : entries) {
        std::filesystem::path p = std::filesystem::path(dir) / e.file;
        std::ifstream in(p);
        if (!in)
            throw SegalError("corpus file not found: " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        WidePair parsed = parse_category(ss.str());
        if (!find_cat_iso(parsed.cat, e.cat).has_value())
            throw SegalError("corpus file deviates from the builtin: " +
                             p.string());
        e.cat = parsed.cat;
    }
    return entries;
}

void write_corpus_files(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (auto& e : builtin_corpus()) {
        std::ofstream out(std::filesystem::path(dir) / e.file);
        out << "# " << e.name << "\n";
        out << serialize_category(WidePair::with_identities(e.cat));
    }
}

std::vector<FunctorCase> corpus_functors() {
    std::vector<FunctorCase> out;
    auto i0 = interval_category(0);
    auto i1 = interval_category(1);
    auto i2 = interval_category(2);
    auto e1 = iso_interval_category(1);
    auto d2 = discrete_category(2);
    auto z2g = two_object_group_groupoid();

    {
        Functor f{i0, e1.cat, {0}, {e1.cat->identity[0]}};
        out.push_back({"point-into-walking-iso", f, true, Window::rect(3, 2)});
    }
    {
        Functor f{i0, i1, {0}, {i1->identity[0]}};
        out.push_back({"point-at-source-of-arrow", f, false,
                       Window::rect(3, 2)});
    }
    {
        out.push_back({"identity-of-chain2", identity_functor(i2), true,
                       Window::rect(3, 2)});
    }
    {
        // the non-full inclusion of the discrete two-object category
        Functor f{d2, i1, {0, 1}, {i1->identity[0], i1->identity[1]}};
        out.push_back({"non-full-inclusion", f, false, Window::rect(3, 2)});
    }
    {
        // [1] -> [2] along the first arrow: fully faithful, not essentially
        // surjective
        Functor f{i1, i2, {0, 1}, {}};
        f.mor_map.resize(i1->num_morphisms());
        for (MorId m = 0; m < i1->num_morphisms(); ++m)
            f.mor_map[m] =
                i2->hom(i1->mor_src[m], i1->mor_tgt[m]).front();
        out.push_back({"arrow-into-chain2", f, false, Window::rect(3, 2)});
    }
    {
        // collapse of the walking isomorphism
        Functor f{e1.cat, i0, {0, 0}, {}};
        f.mor_map.assign(e1.cat->num_morphisms(), i0->identity[0]);
        out.push_back({"walking-iso-collapse", f, true, Window::rect(3, 2)});
    }
    {
        // the object swap of the connected two-object groupoid
        Functor f{z2g, z2g, {1, 0}, {}};
        f.mor_map.resize(z2g->num_morphisms());
        for (MorId m = 0; m < z2g->num_morphisms(); ++m) {
            ObjId x = z2g->mor_src[m], y = z2g->mor_tgt[m];
            int g = int(m) % 2;
            f.mor_map[m] = MorId(((1 - x) * 2 + (1 - y)) * 2 + g);
        }
        out.push_back({"groupoid-swap", f, true, Window::rect(3, 1)});
    }
    {
        // the poset collapse [2] -> [1] merging the first two objects
        Functor f{i2, i1, {0, 0, 1}, {}};
        f.mor_map.resize(i2->num_morphisms());
        for (MorId m = 0; m < i2->num_morphisms(); ++m) {
            ObjId a = i2->mor_src[m] == 2 ? 1 : 0;
            ObjId b = i2->mor_tgt[m] == 2 ? 1 : 0;
            f.mor_map[m] = i1->hom(a, b).front();
        }
        out.push_back({"chain-collapse", f, false, Window::rect(3, 2)});
    }
    for (auto& c : out) c.functor.validate();
    return out;
}

}  // namespace segal
