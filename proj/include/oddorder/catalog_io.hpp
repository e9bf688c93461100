#pragma once

// JSON persistence for the catalog and for bare generator lists.
//
// Catalog file:
//   {"level": k, "encoding": "...", "classes": [{"id", "order", "index",
//    "generators": [[9 ints, row-major 3x3]], "parents": [ids],
//    "density": {"num", "den"}, "exemplar": {"a", "c", "k"}}]}
//
// Generator file (for ad-hoc subgroups):
//   {"modulus": 8, "generators": [[9 ints]]}
//
// Subgroups are rebuilt from their generators by closure on load.

#include "oddorder/catalog.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

namespace oddorder {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kCatalogEncoding =
    "generators are 3x3 matrices [a b 0; c d 0; e f 1] in row-major order, entries reduced mod 2^level, "
    "for the affine element (v, M) = ((e, f), (a b; c d)) acting by x -> x M + v. In memory an element packs "
    "one 4-bit nibble per entry (a, b, c, d, e, f from the low bits) and is indexed by "
    "((((g*H + a>>1)*H + b>>1)*H + c>>1)*H + d>>1)*Q^2 + e*Q + f with Q = 2^level, H = Q/2 and g the "
    "position of M mod 2 in [I, (1 1;0 1), (1 0;1 1), (0 1;1 0), (0 1;1 1), (1 1;1 0)]; "
    "Gamma0^+(2) is the index prefix [0, 2^(6 level - 3)). index is relative to Gamma0^+(2).";

namespace detail {

inline ordered_json generator_json(group::Word w) {
    ordered_json g = ordered_json::array();
    for (int x : group::to_matrix3(w)) g.push_back(x);
    return g;
}

inline group::Word generator_from_json(const ordered_json& g, const group::Level& lv) {
    if (!g.is_array() || g.size() != 9) throw contract_error("generator must be an array of 9 integers");
    std::array<std::int64_t, 9> m{};
    for (std::size_t i = 0; i < 9; ++i) m[i] = g.at(i).get<std::int64_t>();
    const std::int64_t q = lv.modulus();
    if (mod_floor(m[2], q) != 0 || mod_floor(m[5], q) != 0 || mod_floor(m[8], q) != 1)
        throw contract_error("generator is not of the form [a b 0; c d 0; e f 1]");
    if (mod_floor(m[0] * m[4] - m[1] * m[3], 2) != 1) throw contract_error("generator matrix is not invertible");
    return lv.make(m[0], m[1], m[3], m[4], m[6], m[7]);
}

}  // namespace detail

inline ordered_json catalog_to_json(const SubgroupCatalog& cat) {
    ordered_json j;
    j["level"] = cat.level;
    j["encoding"] = kCatalogEncoding;
    ordered_json classes = ordered_json::array();
    for (const CatalogClass& c : cat.classes) {
        ordered_json o;
        o["id"] = c.id;
        o["order"] = c.order;
        o["index"] = c.index;
        ordered_json gens = ordered_json::array();
        for (group::Word w : c.rep.generators()) gens.push_back(detail::generator_json(w));
        o["generators"] = gens;
        o["parents"] = c.parents;
        o["density"] = {{"num", c.density.num().convert_to<std::int64_t>()}, {"den", c.density.den().convert_to<std::int64_t>()}};
        o["exemplar"] = {{"a", c.exemplar.a}, {"c", c.exemplar.c}, {"k", c.exemplar.k}};
        classes.push_back(std::move(o));
    }
    j["classes"] = std::move(classes);
    return j;
}

inline std::string save_catalog_string(const SubgroupCatalog& cat) { return catalog_to_json(cat).dump(2) + "\n"; }

inline SubgroupCatalog catalog_from_json(const ordered_json& j) {
    SubgroupCatalog cat;
    cat.level = j.at("level").get<int>();
    if (cat.level != 3 && cat.level != 4) throw contract_error("catalog level must be 3 or 4");
    const group::Level lv(cat.level);
    for (const auto& o : j.at("classes")) {
        std::vector<group::Word> gens;
        for (const auto& g : o.at("generators")) gens.push_back(detail::generator_from_json(g, lv));
        CatalogClass c{o.at("id").get<int>(), group::closure(gens, cat.level), 0, 0, {}, {}, {}};
        c.order = o.at("order").get<std::uint64_t>();
        c.index = o.at("index").get<std::uint64_t>();
        if (c.rep.order() != c.order)
            throw contract_error("catalog class " + std::to_string(c.id) + ": generators give order " +
                                 std::to_string(c.rep.order()) + ", file says " + std::to_string(c.order));
        c.parents = o.at("parents").get<std::vector<int>>();
        const auto& d = o.at("density");
        c.density = DensityValue(d.at("num").get<std::int64_t>(), d.at("den").get<std::int64_t>());
        const auto& ex = o.at("exemplar");
        c.exemplar = {ex.at("a").get<std::int64_t>(), ex.at("c").get<std::int64_t>(), ex.at("k").get<std::int64_t>()};
        cat.classes.push_back(std::move(c));
    }
    return cat;
}

inline SubgroupCatalog load_catalog_string(const std::string& text) {
    try {
        return catalog_from_json(ordered_json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw contract_error(std::string("malformed catalog: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

inline void save_catalog(const SubgroupCatalog& cat, const std::string& path) {
    write_file(path, save_catalog_string(cat));
}
inline SubgroupCatalog load_catalog(const std::string& path) { return load_catalog_string(read_file(path)); }

/// Subgroup from a generator file. The ambient is Gamma0^+(2) when every
/// generator has even lower-left entry, the whole affine group otherwise.
inline group::Subgroup load_generators_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw contract_error(std::string("malformed generator file: ") + e.what());
    }
    const int modulus = j.at("modulus").get<int>();
    int k = 0;
    if (modulus == 2) k = 1;
    else if (modulus == 4) k = 2;
    else if (modulus == 8) k = 3;
    else if (modulus == 16) k = 4;
    else throw contract_error("modulus must be 2, 4, 8 or 16");
    const group::Level lv(k);
    std::vector<group::Word> gens;
    for (const auto& g : j.at("generators")) gens.push_back(detail::generator_from_json(g, lv));
    const bool in_gamma0 = std::all_of(gens.begin(), gens.end(), [](group::Word w) { return group::Level::in_gamma0(w); });
    return group::closure(gens, k, in_gamma0 ? group::Ambient::gamma0 : group::Ambient::full);
}

inline group::Subgroup load_generators(const std::string& path) { return load_generators_string(read_file(path)); }

}  // namespace oddorder
