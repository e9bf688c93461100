#pragma once

/**
 * @file catalog.hpp
 * @brief The 63 happy classes with their row numbers, lattice, densities and
 *        exemplar curves.
 *
 * Row subgroups are built explicitly inside Gamma0^+(2) at level 3:
 *
 *   - H2 = {e even}, and the characters M_-1 (det = 1 mod 4), M_2
 *     (det = +-1 mod 8), M_b (c = 0 mod 4), M_{a^2-4b} (b even);
 *   - rows 2..17 are H2 * M_E;
 *   - every later batch is anchor * (M_E restricted to the batch parent),
 *     where the anchor is a halving stabiliser (batches under rows 2 and 10)
 *     or the happy index-2 subgroup of the parent with the anchor row's
 *     density (batches under rows 7, 15, 20, 35).
 *
 * The descent's classes are then matched to rows by conjugacy.
 */

#include "oddorder/density.hpp"
#include "oddorder/enumerate.hpp"
#include "oddorder/table.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace oddorder {

struct CurveTriple {
    std::int64_t a = 0, c = 0, k = 0;
    friend bool operator==(const CurveTriple&, const CurveTriple&) = default;
};

struct CatalogClass {
    int id = 0;
    group::Subgroup rep;
    std::uint64_t order = 0;
    std::uint64_t index = 0;  ///< in Gamma0^+(2)
    std::vector<int> parents;
    DensityValue density;
    CurveTriple exemplar;
};

class SubgroupCatalog {
  public:
    int level = 3;
    std::vector<CatalogClass> classes;  ///< sorted by id

    const CatalogClass& by_id(int id) const {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const CatalogClass& c) { return c.id == id; });
        if (it == classes.end()) throw contract_error("catalog: unknown class id " + std::to_string(id));
        return *it;
    }
    bool contains_id(int id) const {
        return std::any_of(classes.begin(), classes.end(), [&](const CatalogClass& c) { return c.id == id; });
    }

    /// True iff `ancestor` lies on some upward path from `id` (or equals it).
    bool is_ancestor(int ancestor, int id) const {
        if (ancestor == id) return true;
        for (int p : by_id(id).parents)
            if (is_ancestor(ancestor, p)) return true;
        return false;
    }
};

namespace characters {

using group::Level;
using group::Word;

// Requires level >= 3 (the determinant is read mod 8).
inline bool in_m(unsigned bit, Word w) {
    const auto p = Level::unpack(w);
    const unsigned det = (p.a * p.d + 256 - p.b * p.c) & 7u;
    switch (bit) {
        case kMinusOne: return (det & 3u) == 1;
        case kTwo: return det == 1 || det == 7;
        case kB: return (p.c & 3u) == 0;
        case kDiscPrime: return (p.b & 1u) == 0;
    }
    throw contract_error("unknown square-class generator");
}

/// 0 if w fixes sqrt(E), 1 otherwise; E is a product of -1, 2, b, a^2-4b.
inline int chi(unsigned mask, Word w) {
    int s = 0;
    for (unsigned bit : {kMinusOne, kTwo, kB, kDiscPrime})
        if ((mask & bit) && !in_m(bit, w)) s ^= 1;
    return s;
}

/// The character cut out by H2 (sqrt(c)).
inline int chi_c(Word w) { return static_cast<int>(Level::unpack(w).e & 1u); }

}  // namespace characters

/// {w in parent : anchor_chi(w) == chi_E(w)}.
inline group::Subgroup twist(const group::Subgroup& parent, const std::function<int(group::Word)>& anchor_chi,
                             unsigned mask) {
    group::Bitset bits(parent.capacity());
    const group::Level& lv = parent.level();
    parent.for_each([&](group::Word w) {
        if (anchor_chi(w) == characters::chi(mask, w)) bits.set(lv.index(w));
    });
    return group::from_elements(bits, parent.k(), parent.ambient());
}

namespace detail {

// Index-2 happy subgroups of `parent` with the given density, ordered so that
// the first one contains the lowest-indexed element on which they disagree.
inline std::vector<group::Subgroup> happy_kernels_with_density(const group::Subgroup& parent,
                                                               const DensityValue& target) {
    const group::FrattiniQuotient fq(parent);
    std::vector<group::Subgroup> out;
    for (std::uint32_t f : group::happy_index2_functionals(fq)) {
        group::Subgroup h = fq.kernel(f);
        if (density_exact(h) == target) out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const group::Subgroup& x, const group::Subgroup& y) {
        const group::Bitset diff = x.elements() ^ y.elements();
        const auto i = diff.find_first();
        return i != group::Bitset::npos && x.elements().test(i);
    });
    return out;
}

}  // namespace detail

/// Subgroups for rows 1..63 at level k >= 3 (element i is row i + 1).
inline std::vector<group::Subgroup> row_subgroups(int k = 3) {
    using namespace group;
    if (k < 3) throw contract_error("row_subgroups: level must be >= 3");
    std::vector<std::optional<Subgroup>> rows(kRowSpecs.size());
    auto at = [&](int id) -> const Subgroup& { return *rows[static_cast<std::size_t>(id - 1)]; };
    const Subgroup root = gamma0_plus(k);

    for (const RowSpec& s : kRowSpecs) {
        std::optional<Subgroup> h;
        switch (s.family) {
            case RowFamily::root: h = root; break;
            case RowFamily::c_twist: h = twist(root, characters::chi_c, s.mask); break;
            case RowFamily::alpha_prime:
                h = twist(at(s.batch_parent), [](Word w) { return int(!in_alpha_halving_stabiliser(w)); }, s.mask);
                break;
            case RowFamily::alpha_t_prime:
                h = twist(at(s.batch_parent), [](Word w) { return int(!in_alpha_t_halving_stabiliser(w)); },
                          s.mask);
                break;
            default: {
                // Anchor: the batch row with mask 0.
                const auto anchor_row = std::find_if(kRowSpecs.begin(), kRowSpecs.end(), [&](const RowSpec& r) {
                    return r.family == s.family && r.mask == 0;
                });
                const ReferenceRow& ref = reference_row(anchor_row->id);
                const Subgroup& parent = at(s.batch_parent);
                const auto cands = oddorder::detail::happy_kernels_with_density(parent, DensityValue(ref.num, ref.den));
                if (cands.empty()) throw contract_error("row_subgroups: no anchor for row " + std::to_string(s.id));
                const Subgroup& anchor = cands.front();
                h = twist(parent, [&](Word w) { return int(!anchor.contains(w)); }, s.mask);
            }
        }
        rows[static_cast<std::size_t>(s.id - 1)] = std::move(h);
    }
    std::vector<Subgroup> out;
    for (auto& r : rows) out.push_back(std::move(*r));
    return out;
}

struct CatalogOptions {
    std::function<void(const std::string&)> log;
};

/// Enumerates happy classes at level k in {3, 4}, matches them to rows and
/// assembles the catalog. Throws if the match is not a bijection.
inline SubgroupCatalog build_catalog(int k, const CatalogOptions& opt = {}) {
    using namespace group;
    if (k != 3 && k != 4) throw contract_error("build_catalog: level must be 3 or 4");
    auto log = [&](const std::string& s) {
        if (opt.log) opt.log(s);
    };
    const HappyLattice lat = enumerate_happy_classes(k, {opt.log});
    log("descent: " + std::to_string(lat.classes.size()) + " classes");

    const std::vector<Subgroup> rows = row_subgroups(3);
    std::vector<Subgroup> row_cores;
    std::vector<ConjugacyKey> row_keys;
    for (const auto& r : rows) {
        row_cores.push_back(core_of(r));
        row_keys.push_back(conjugacy_key(row_cores.back()));
    }

    // class index -> row id
    std::vector<int> row_of(lat.classes.size(), 0);
    std::vector<int> class_of(rows.size(), -1);
    for (std::size_t ci = 0; ci < lat.classes.size(); ++ci) {
        const HappyClass& c = lat.classes[ci];
        if (c.core.k() > 3)
            throw contract_error("build_catalog: class " + std::to_string(ci) +
                                 " does not contain the mod-8 congruence kernel");
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            if (row_cores[ri].k() != c.core.k() || !(row_keys[ri] == c.key)) continue;
            if (!are_conjugate(row_cores[ri], c.core)) continue;
            if (row_of[ci] != 0 || class_of[ri] != -1)
                throw contract_error("build_catalog: ambiguous match for row " + std::to_string(ri + 1));
            row_of[ci] = static_cast<int>(ri + 1);
            class_of[ri] = static_cast<int>(ci);
        }
        if (row_of[ci] == 0) throw contract_error("build_catalog: class " + std::to_string(ci) + " matches no row");
    }

    SubgroupCatalog cat;
    cat.level = k;
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        if (class_of[ri] < 0) throw contract_error("build_catalog: row " + std::to_string(ri + 1) + " not found");
        const int id = static_cast<int>(ri + 1);
        CatalogClass out{id, k == 3 ? rows[ri] : lift_subgroup(rows[ri], k), 0, 0, {}, {}, {}};
        out.order = out.rep.order();
        out.index = out.rep.index_in_gamma0();
        out.density = density_exact(row_cores[ri]);
        const ReferenceRow& ref = reference_row(id);
        out.exemplar = {ref.a, ref.c, ref.k};
        for (std::size_t pi = 0; pi < lat.classes.size(); ++pi) {
            const auto& kids = lat.classes[pi].children;
            if (std::find(kids.begin(), kids.end(), static_cast<std::size_t>(class_of[ri])) != kids.end())
                out.parents.push_back(row_of[pi]);
        }
        std::sort(out.parents.begin(), out.parents.end());
        cat.classes.push_back(std::move(out));
    }
    return cat;
}

/// Graphviz rendering of the lattice; node label "id (density)".
inline std::string to_dot(const SubgroupCatalog& cat) {
    std::ostringstream os;
    os << "digraph happy_lattice {\n  rankdir=TB;\n";
    for (const auto& c : cat.classes) os << "  n" << c.id << " [label=\"" << c.id << " (" << c.density.str() << ")\"];\n";
    for (const auto& c : cat.classes)
        for (int p : c.parents) os << "  n" << p << " -> n" << c.id << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace oddorder
