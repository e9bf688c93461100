#pragma once

/**
 * @file enumerate.hpp
 * @brief Breadth-first descent through happy subgroups of Gamma0^+(2).
 *
 * Starting from Gamma0^+(2) at level k, every happy class representative is
 * split into its index-2 subgroups (kernels of characters of the Frattini
 * quotient); the happy ones are deduplicated up to conjugacy in AGL2(Z/2^k)
 * and queued. Unhappy subgroups are pruned: every subgroup of an unhappy
 * subgroup is unhappy.
 *
 * Happiness of a kernel is decided from labels alone, so unhappy kernels are
 * never materialised:
 *   - ker(f) keeps the full Gamma0(2) image iff f is nonzero on the labels of
 *     the pure translations in H;
 *   - ker(f) lies inside a halving stabiliser X (or one of its translation
 *     conjugates) iff X cuts out exactly ker(f) from H.
 *
 * Each class is stored by its core: the reduction to the lowest level j whose
 * congruence kernel it contains. Conjugacy of full preimages is conjugacy of
 * the cores, which keeps level-4 comparisons at level 3 or below.
 */

#include "oddorder/subgroup.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oddorder::group {

/// Reduction of h to the lowest level whose congruence kernel it contains.
inline Subgroup core_of(Subgroup h) {
    while (h.k() > 1 && contains_congruence_kernel(h, h.k() - 1)) h = reduce_subgroup(h, h.k() - 1);
    return h;
}

struct HappyClass {
    Subgroup rep;    ///< representative at the enumeration level
    Subgroup core;   ///< reduction to its kernel level
    ConjugacyKey key;  ///< of the core
    std::vector<std::size_t> children;
};

struct HappyLattice {
    int level = 0;
    std::vector<HappyClass> classes;  ///< index 0 is Gamma0^+(2)

    std::map<std::uint64_t, std::size_t> index_histogram() const {
        std::map<std::uint64_t, std::size_t> hist;
        for (const auto& c : classes) ++hist[c.rep.index_in_gamma0()];
        return hist;
    }
};

struct DescentOptions {
    std::function<void(const std::string&)> log;
};

namespace detail {

// Span of a set of F2 vectors, kept in reduced row form.
class XorBasis {
  public:
    void add(std::uint32_t x) {
        for (std::uint32_t b : basis_) x = std::min(x, x ^ b);
        if (x) basis_.push_back(x);
    }
    bool annihilated_by(std::uint32_t functional) const {
        for (std::uint32_t b : basis_)
            if (parity(b & functional)) return false;
        return true;
    }

  private:
    std::vector<std::uint32_t> basis_;
};

// The unique functional f with ker(f) == H cap X, if H cap X has index 2 and
// contains Phi(H); 0 otherwise.
template <class Pred>
std::uint32_t stabiliser_functional(const FrattiniQuotient& fq, Pred in_x) {
    std::uint32_t f = 0;
    for (std::size_t i = 0; i < fq.basis().size(); ++i)
        if (!in_x(fq.basis()[i])) f |= 1u << i;
    if (f == 0) return 0;
    bool exact = true;
    fq.group().for_each([&](Word w) {
        if (exact && (parity(fq.label(w) & f) == 0) != in_x(w)) exact = false;
    });
    return exact ? f : 0;
}

inline std::vector<Word> kernel_generators(const FrattiniQuotient& fq, std::uint32_t f) {
    const Level& lv = fq.group().level();
    std::vector<Word> gens = fq.frattini().generators();
    int pivot = -1;
    for (std::size_t i = 0; i < fq.basis().size(); ++i) {
        if (!(f >> i & 1u))
            gens.push_back(fq.basis()[i]);
        else if (pivot < 0)
            pivot = static_cast<int>(i);
        else
            gens.push_back(lv.mul(fq.basis()[pivot], fq.basis()[i]));
    }
    return gens;
}

}  // namespace detail

/// Happy index-2 subgroups of a happy subgroup h, as character functionals.
inline std::vector<std::uint32_t> happy_index2_functionals(const FrattiniQuotient& fq) {
    detail::XorBasis translations;
    fq.group().for_each([&](Word w) {
        if (Level::is_translation(w)) translations.add(fq.label(w));
    });
    // A kernel lies in some conjugate of a halving stabiliser iff it is cut out
    // by that conjugate.
    std::set<std::uint32_t> bad;
    for (auto in_x : {in_alpha_halving_stabiliser, in_alpha_t_halving_stabiliser})
        for (std::uint32_t s = 0; s < kHalvingShifts; ++s)
            bad.insert(detail::stabiliser_functional(
                fq, [&](Word w) { return in_conjugate_stabiliser(w, in_x, s & 1, s >> 1); }));
    std::vector<std::uint32_t> out;
    for (std::uint32_t f = 1; f < (1u << fq.rank()); ++f)
        if (!translations.annihilated_by(f) && !bad.contains(f)) out.push_back(f);
    return out;
}

inline HappyLattice enumerate_happy_classes(int level, const DescentOptions& opt = {}) {
    if (level < 1 || level > 4) throw contract_error("enumerate: level must be in [1, 4]");
    HappyLattice lat;
    lat.level = level;
    auto log = [&](const std::string& s) {
        if (opt.log) opt.log(s);
    };

    auto find_class = [&](const Subgroup& core, const ConjugacyKey& key) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < lat.classes.size(); ++i) {
            const auto& c = lat.classes[i];
            if (c.core.k() != core.k() || !(c.key == key)) continue;
            if (are_conjugate(c.core, core)) return i;
        }
        return std::nullopt;
    };
    auto add_class = [&](Subgroup rep, Subgroup core, ConjugacyKey key) {
        lat.classes.push_back({std::move(rep), std::move(core), std::move(key), {}});
        return lat.classes.size() - 1;
    };

    {
        Subgroup root = gamma0_plus(level);
        Subgroup core = core_of(root);
        auto key = conjugacy_key(core);
        add_class(std::move(root), std::move(core), std::move(key));
    }

    for (std::size_t ci = 0; ci < lat.classes.size(); ++ci) {
        const Subgroup parent = lat.classes[ci].rep;
        const FrattiniQuotient fq(parent);
        const auto functionals = happy_index2_functionals(fq);
        const auto kernel_gens = congruence_kernel_generators(level, level - 1);
        const bool parent_has_kernel = level > 1 && contains_congruence_kernel(parent, level - 1);

        std::set<std::size_t> kids;
        for (std::uint32_t f : functionals) {
            const std::vector<Word> gens = detail::kernel_generators(fq, f);
            bool kills_kernel = parent_has_kernel;
            if (kills_kernel)
                for (Word g : kernel_gens)
                    if (parity(fq.label(g) & f)) kills_kernel = false;

            Subgroup core = [&] {
                if (!kills_kernel) return closure(gens, level);
                std::vector<Word> red;
                for (Word g : gens) red.push_back(Level::reduce(g, level - 1));
                return core_of(closure(red, level - 1));
            }();
            auto key = conjugacy_key(core);
            auto found = find_class(core, key);
            if (!found) {
                Subgroup rep = core.k() == level ? core : lift_subgroup(core, level);
                found = add_class(std::move(rep), std::move(core), std::move(key));
            }
            kids.insert(*found);
        }
        lat.classes[ci].children.assign(kids.begin(), kids.end());
        log("class " + std::to_string(ci) + " index " + std::to_string(parent.index_in_gamma0()) + ": " +
            std::to_string(functionals.size()) + " happy maximal subgroups, " + std::to_string(kids.size()) +
            " classes; total " + std::to_string(lat.classes.size()));
    }
    return lat;
}

}  // namespace oddorder::group
