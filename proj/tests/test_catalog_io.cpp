#include "oddorder/catalog_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

using namespace oddorder;

namespace {

const SubgroupCatalog& catalog() {
    static const SubgroupCatalog cat = build_catalog(3);
    return cat;
}

// Generates AGL2(Z/8): elementary matrices, two diagonal units, translations.
constexpr const char* kFullAgl8 = R"({"modulus": 8, "generators": [
  [1,1,0, 0,1,0, 0,0,1], [1,0,0, 1,1,0, 0,0,1], [3,0,0, 0,1,0, 0,0,1],
  [5,0,0, 0,1,0, 0,0,1], [1,0,0, 0,1,0, 1,0,1], [1,0,0, 0,1,0, 0,1,1]]})";

}  // namespace

TEST(Catalog, Structure) {
    const SubgroupCatalog& cat = catalog();
    ASSERT_EQ(cat.classes.size(), 63u);
    std::map<std::uint64_t, int> hist;
    for (std::size_t i = 0; i < cat.classes.size(); ++i) {
        const CatalogClass& c = cat.classes[i];
        EXPECT_EQ(c.id, static_cast<int>(i + 1));
        EXPECT_EQ(c.order, c.rep.order());
        EXPECT_EQ(c.index * c.order, c.rep.level().gamma0_order());
        EXPECT_TRUE(group::is_happy(c.rep).happy) << "class " << c.id;
        EXPECT_TRUE(cat.is_ancestor(1, c.id));
        EXPECT_EQ(c.parents.empty(), c.id == 1);
        for (int p : c.parents) EXPECT_EQ(cat.by_id(p).order, 2 * c.order) << c.id << " under " << p;
        ++hist[c.index];
    }
    EXPECT_EQ(hist, (std::map<std::uint64_t, int>{{1, 1}, {2, 16}, {4, 30}, {8, 16}}));
    EXPECT_THROW(cat.by_id(64), contract_error);
    EXPECT_FALSE(cat.is_ancestor(58, 1));
}

TEST(Catalog, JsonRoundTripIsByteStable) {
    const std::string text = save_catalog_string(catalog());
    const SubgroupCatalog back = load_catalog_string(text);
    EXPECT_EQ(save_catalog_string(back), text);
    ASSERT_EQ(back.classes.size(), catalog().classes.size());
    for (std::size_t i = 0; i < back.classes.size(); ++i) {
        const CatalogClass &x = catalog().classes[i], &y = back.classes[i];
        EXPECT_EQ(x.id, y.id);
        EXPECT_EQ(x.rep, y.rep);
        EXPECT_EQ(x.parents, y.parents);
        EXPECT_EQ(x.density, y.density);
        EXPECT_EQ(x.exemplar, y.exemplar);
    }
}

TEST(Catalog, FileRoundTrip) {
    const std::string path = (std::filesystem::path(testing::TempDir()) / "oddorder_catalog_test.json").string();
    save_catalog(catalog(), path);
    EXPECT_EQ(save_catalog_string(load_catalog(path)), save_catalog_string(catalog()));
    std::filesystem::remove(path);
    EXPECT_THROW(load_catalog(path), std::ios_base::failure);
}

TEST(Catalog, RejectsMalformedInput) {
    EXPECT_THROW(load_catalog_string("not json"), contract_error);
    EXPECT_THROW(load_catalog_string(R"({"level": 5, "classes": []})"), contract_error);
    EXPECT_THROW(load_catalog_string(R"({"level": 3})"), contract_error);
    std::string text = save_catalog_string(catalog());
    // claim the wrong order for the root class
    const std::string needle = "\"order\": 32768";
    const auto pos = text.find(needle);
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, needle.size(), "\"order\": 16384");
    EXPECT_THROW(load_catalog_string(text), contract_error);
}

TEST(Generators, FullAffineGroup) {
    const group::Subgroup h = load_generators_string(kFullAgl8);
    EXPECT_EQ(h.order(), 3u << 15);
    EXPECT_EQ(density_exact(h), DensityValue(11, 21));
}

TEST(Generators, GammaZeroSubgroup) {
    const group::Subgroup h = load_generators_string(
        R"({"modulus": 4, "generators": [[1,1,0, 0,1,0, 0,0,1], [1,0,0, 2,1,0, 0,0,1], [3,0,0, 0,1,0, 0,0,1],
            [1,0,0, 0,3,0, 0,0,1], [1,0,0, 0,1,0, 1,0,1], [1,0,0, 0,1,0, 0,1,1]]})");
    EXPECT_EQ(h.ambient(), group::Ambient::gamma0);
    EXPECT_EQ(h, group::gamma0_plus(2));
    EXPECT_EQ(density_exact(h), DensityValue(5, 21));
}

TEST(Generators, Rejects) {
    EXPECT_THROW(load_generators_string(R"({"modulus": 3, "generators": []})"), contract_error);
    EXPECT_THROW(load_generators_string(R"({"modulus": 8, "generators": [[1,0,0,0,1,0,0,0]]})"), contract_error);
    EXPECT_THROW(load_generators_string(R"({"modulus": 8, "generators": [[2,0,0, 0,1,0, 0,0,1]]})"), contract_error);
    EXPECT_THROW(load_generators_string(R"({"modulus": 8, "generators": [[1,0,1, 0,1,0, 0,0,1]]})"), contract_error);
    EXPECT_THROW(load_generators_string("{"), contract_error);
}

TEST(Dot, NodesAndEdges) {
    const std::string dot = to_dot(catalog());
    const std::regex node(R"(\n  n\d+ \[label=)"), edge(R"(\n  n(\d+) -> n\d+;)");
    EXPECT_EQ(std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator()), 63);
    std::size_t edges = 0, from_root = 0;
    for (auto it = std::sregex_iterator(dot.begin(), dot.end(), edge); it != std::sregex_iterator(); ++it) {
        ++edges;
        from_root += (*it)[1] == "1";
    }
    std::size_t parents = 0;
    for (const auto& c : catalog().classes) parents += c.parents.size();
    EXPECT_EQ(edges, parents);
    EXPECT_EQ(from_root, 16u);
    EXPECT_NE(dot.find("n58 [label=\"58 (1/14)\"]"), std::string::npos);
}
