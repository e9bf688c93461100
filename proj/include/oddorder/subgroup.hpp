#pragma once

/**
 * @file subgroup.hpp
 * @brief Subgroups of AGL2(Z/2^k Z), k <= 4, stored as bit-sets over the
 *        perfect-hash index of the ambient group.
 *
 * Two ambients are supported: Gamma0^+(2) (the full preimage of Gamma0(2),
 * order 2^(6k-3)) and the whole affine group (order 3 * 2^(6k-3)). Because the
 * Gamma0^+(2) elements form a prefix of the index range, a Gamma0^+(2) bit-set
 * is simply a shorter bit-set.
 */

#include "oddorder/twoadic.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oddorder::group {

enum class Ambient { gamma0, full };

using Bitset = boost::dynamic_bitset<std::uint64_t>;

class Subgroup {
  public:
    Subgroup(int k, Ambient ambient) : level_(k), ambient_(ambient) {
        elements_.resize(capacity());
        elements_.set(level_.index(level_.identity()));
        order_ = 1;
    }

    const Level& level() const { return level_; }
    int k() const { return level_.k(); }
    Ambient ambient() const { return ambient_; }
    const std::vector<Word>& generators() const { return generators_; }
    const Bitset& elements() const { return elements_; }
    std::uint64_t order() const { return order_; }

    std::uint64_t capacity() const {
        return ambient_ == Ambient::gamma0 ? level_.gamma0_order() : level_.agl_order();
    }

    /// Index relative to Gamma0^+(2); only meaningful for gamma0-ambient subgroups.
    std::uint64_t index_in_gamma0() const { return level_.gamma0_order() / order_; }
    std::uint64_t index_in_agl() const { return level_.agl_order() / order_; }

    bool contains(Word w) const {
        const std::uint32_t i = level_.index(w);
        return i < elements_.size() && elements_.test(i);
    }

    template <class F>
    void for_each(F&& f) const {
        for (auto i = elements_.find_first(); i != Bitset::npos; i = elements_.find_next(i))
            f(level_.decode(static_cast<std::uint32_t>(i)));
    }

    std::vector<Word> element_list() const {
        std::vector<Word> out;
        out.reserve(order_);
        for_each([&](Word w) { out.push_back(w); });
        return out;
    }

    /// Adds g to the generators and closes (Dimino's coset extension).
    void extend(Word g) {
        if (ambient_ == Ambient::gamma0 && !Level::in_gamma0(g))
            throw contract_error("generator outside Gamma0^+(2): lower-left matrix entry is odd");
        if (contains(g)) return;
        const std::vector<Word> old = element_list();
        generators_.push_back(g);
        std::vector<Word> reps;
        auto add_coset = [&](Word y) {
            for (Word x : old) elements_.set(level_.index(level_.mul(x, y)));
            reps.push_back(y);
        };
        reps.push_back(level_.identity());
        add_coset(g);
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (Word s : generators_) {
                const Word y = level_.mul(reps[i], s);
                if (!elements_.test(level_.index(y))) add_coset(y);
            }
        order_ = elements_.count();
    }

    /// Order of the image under (v, M) -> M.
    std::uint64_t gl2_image_order() const {
        Bitset seen(1u << 16);
        for_each([&](Word w) { seen.set(Level::matrix_part(w)); });
        return seen.count();
    }

    bool is_subgroup_of(const Subgroup& other) const {
        for (Word g : generators_)
            if (!other.contains(g)) return false;
        return true;
    }

    friend bool operator==(const Subgroup& x, const Subgroup& y) {
        if (x.k() != y.k() || x.order_ != y.order_) return false;
        return x.is_subgroup_of(y);
    }

  private:
    Level level_;
    Ambient ambient_;
    std::vector<Word> generators_;
    Bitset elements_;
    std::uint64_t order_ = 1;
};

/// Smallest subgroup containing gens.
inline Subgroup closure(const std::vector<Word>& gens, int k, Ambient ambient = Ambient::gamma0) {
    Subgroup h(k, ambient);
    for (Word g : gens) h.extend(g);
    return h;
}

/// Rebuilds a subgroup (with a small generating set) from an element bit-set
/// that is known to be closed.
inline Subgroup from_elements(const Bitset& bits, int k, Ambient ambient) {
    Subgroup h(k, ambient);
    const Level& lv = h.level();
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) {
        if (h.elements().test(i)) continue;
        h.extend(lv.decode(static_cast<std::uint32_t>(i)));
    }
    if (h.elements().size() != bits.size() || h.elements() != bits)
        throw contract_error("from_elements: element set is not closed under multiplication");
    return h;
}

/// Subgroup of the ambient cut out by a predicate on words; the predicate must
/// define a subgroup.
inline Subgroup from_predicate(int k, Ambient ambient, const std::function<bool(Word)>& pred) {
    Subgroup probe(k, ambient);
    Bitset bits(probe.capacity());
    const Level& lv = probe.level();
    for (std::uint32_t i = 0; i < bits.size(); ++i)
        if (pred(lv.decode(i))) bits.set(i);
    return from_elements(bits, k, ambient);
}

/// Gamma0^+(2) at level k from a fixed generating set.
inline Subgroup gamma0_plus(int k) {
    const Level lv(k);
    return closure({lv.make(1, 0, 0, 1, 1, 0), lv.make(1, 0, 0, 1, 0, 1), lv.make(1, 1, 0, 1),
                    lv.make(1, 0, 2, 1), lv.make(-1, 0, 0, 1), lv.make(1, 0, 0, -1), lv.make(3, 0, 0, 1),
                    lv.make(1, 0, 0, 3), lv.make(5, 0, 0, 1), lv.make(1, 0, 0, 5)},
                   k);
}

inline Subgroup full_agl(int k) {
    const Level lv(k);
    return closure({lv.make(1, 0, 0, 1, 1, 0), lv.make(1, 0, 0, 1, 0, 1), lv.make(1, 1, 0, 1),
                    lv.make(0, 1, -1, 0), lv.make(-1, 0, 0, 1), lv.make(3, 0, 0, 1), lv.make(5, 0, 0, 1)},
                   k, Ambient::full);
}

/// Generators of the kernel of reduction to level j (v = 0, M = I mod 2^j).
/// Elementary generators are taken at every level t = j .. k-1: the ones at
/// level j alone generate too little once k - j >= 2.
inline std::vector<Word> congruence_kernel_generators(int k, int j) {
    const Level lv(k);
    std::vector<Word> gens;
    for (int s = j; s < k; ++s) {
        const std::int64_t t = std::int64_t{1} << s;
        for (Word g : {lv.make(1, 0, 0, 1, t, 0), lv.make(1, 0, 0, 1, 0, t), lv.make(1 + t, 0, 0, 1),
                       lv.make(1, t, 0, 1), lv.make(1, 0, t, 1), lv.make(1, 0, 0, 1 + t)})
            gens.push_back(g);
    }
    return gens;
}

inline bool contains_congruence_kernel(const Subgroup& h, int j) {
    if (j >= h.k()) return true;
    for (Word g : congruence_kernel_generators(h.k(), j))
        if (!h.contains(g)) return false;
    return true;
}

/// Image of h under reduction to level j.
inline Subgroup reduce_subgroup(const Subgroup& h, int j) {
    if (j < 1 || j > h.k()) throw contract_error("reduce_subgroup: level out of range");
    std::vector<Word> gens;
    for (Word g : h.generators()) gens.push_back(Level::reduce(g, j));
    return closure(gens, j, h.ambient());
}

/// Full preimage at level k of a subgroup at a lower level.
inline Subgroup lift_subgroup(const Subgroup& h, int k) {
    std::vector<Word> gens = h.generators();
    for (Word g : congruence_kernel_generators(k, h.k())) gens.push_back(g);
    return closure(gens, k, h.ambient());
}

// ---------------------------------------------------------------------------
// Happy predicate

enum class HappyFailure { none, image_too_small, alpha_divisible, alpha_plus_t_divisible };

inline std::string describe(HappyFailure f) {
    switch (f) {
        case HappyFailure::none: return "happy";
        case HappyFailure::image_too_small: return "im rho too small";
        case HappyFailure::alpha_divisible: return "alpha in 2E(Q)";
        case HappyFailure::alpha_plus_t_divisible: return "alpha+T in 2E(Q)";
    }
    return "?";
}

/// e == f == 0 mod 2: the stabiliser of a halving of alpha.
inline bool in_alpha_halving_stabiliser(Word w) {
    const Entries p = Level::unpack(w);
    return (p.e & 1) == 0 && (p.f & 1) == 0;
}

/// e == c/2 and f == (d-1)/2 mod 2: the stabiliser of a halving of alpha + T.
inline bool in_alpha_t_halving_stabiliser(Word w) {
    const Entries p = Level::unpack(w);
    return (p.e & 1) == ((p.c >> 1) & 1) && (p.f & 1) == (((p.d - 1) >> 1) & 1);
}

/// Conjugate of a stabiliser by the translation by s = (s1, s2) mod 2. The four
/// conjugates are the stabilisers of the four halvings of the same point.
/// Conjugation by (s, I) sends (v, M) to (v - s (M - I), M).
inline bool in_conjugate_stabiliser(Word w, bool (*in_x)(Word), std::uint32_t s1, std::uint32_t s2) {
    Entries p = Level::unpack(w);
    p.e = (p.e & ~1u) | ((p.e + s1 * (p.a - 1) + s2 * p.c) & 1u);
    p.f = (p.f & ~1u) | ((p.f + s1 * p.b + s2 * (p.d - 1)) & 1u);
    return in_x(Level::pack(p));
}

/// Number of halving shifts s in (Z/2)^2.
inline constexpr std::uint32_t kHalvingShifts = 4;

struct HappyVerdict {
    bool happy;
    HappyFailure reason;
    explicit operator bool() const { return happy; }
};

inline HappyVerdict is_happy(const Subgroup& h) {
    for (Word g : h.generators())
        if (!Level::in_gamma0(g)) return {false, HappyFailure::image_too_small};
    if (h.gl2_image_order() != h.level().gamma0_gl2_order()) return {false, HappyFailure::image_too_small};
    const auto& gens = h.generators();
    auto inside = [&](bool (*in_x)(Word)) {
        for (std::uint32_t s = 0; s < kHalvingShifts; ++s)
            if (std::all_of(gens.begin(), gens.end(),
                            [&](Word g) { return in_conjugate_stabiliser(g, in_x, s & 1, s >> 1); }))
                return true;
        return false;
    };
    if (inside(in_alpha_halving_stabiliser)) return {false, HappyFailure::alpha_divisible};
    if (inside(in_alpha_t_halving_stabiliser)) return {false, HappyFailure::alpha_plus_t_divisible};
    return {true, HappyFailure::none};
}

// ---------------------------------------------------------------------------
// Frattini quotient and index-2 subgroups

/// H / Phi(H) as an F2-vector space: Phi(H), a basis of the quotient, and the
/// coordinate vector ("label") of every element of H.
class FrattiniQuotient {
  public:
    explicit FrattiniQuotient(const Subgroup& h) : group_(h), frattini_(h.k(), h.ambient()) {
        const Level& lv = h.level();
        const auto& gens = h.generators();
        // Phi(H) is the normal closure of squares and commutators of generators
        // (H is a 2-group, so the quotient by it is elementary abelian).
        for (std::size_t i = 0; i < gens.size(); ++i) {
            frattini_.extend(lv.mul(gens[i], gens[i]));
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                frattini_.extend(lv.mul(lv.mul(lv.inv(gens[i]), lv.inv(gens[j])), lv.mul(gens[i], gens[j])));
        }
        for (bool grew = true; grew;) {
            grew = false;
            const auto fg = frattini_.generators();
            for (Word x : fg)
                for (Word g : gens) {
                    const Word y = lv.mul(lv.mul(lv.inv(g), x), g);
                    if (!frattini_.contains(y)) {
                        frattini_.extend(y);
                        grew = true;
                    }
                }
        }
        Subgroup span = frattini_;
        for (Word g : gens)
            if (!span.contains(g)) {
                basis_.push_back(g);
                span.extend(g);
            }
        if (basis_.size() > 24) throw contract_error("Frattini quotient rank too large");

        labels_.assign(h.capacity(), 0);
        const std::vector<Word> phi = frattini_.element_list();
        for (std::uint32_t mask = 0; mask < (1u << basis_.size()); ++mask) {
            Word t = lv.identity();
            for (std::size_t i = 0; i < basis_.size(); ++i)
                if (mask >> i & 1u) t = lv.mul(t, basis_[i]);
            for (Word x : phi) labels_[lv.index(lv.mul(x, t))] = mask;
        }
    }

    const Subgroup& group() const { return group_; }
    const Subgroup& frattini() const { return frattini_; }
    const std::vector<Word>& basis() const { return basis_; }
    int rank() const { return static_cast<int>(basis_.size()); }

    /// Coordinates of an element of H in the quotient basis.
    std::uint32_t label(Word w) const { return labels_[group_.level().index(w)]; }

    /// Kernel of the functional x -> parity(functional & x) on H / Phi(H).
    Subgroup kernel(std::uint32_t functional) const {
        if (functional == 0 || functional >= (1u << basis_.size()))
            throw contract_error("kernel: functional out of range");
        const Level& lv = group_.level();
        Subgroup ker = frattini_;
        int pivot = -1;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (!(functional >> i & 1u)) {
                ker.extend(basis_[i]);
            } else if (pivot < 0) {
                pivot = static_cast<int>(i);
            } else {
                ker.extend(lv.mul(basis_[pivot], basis_[i]));
            }
        }
        return ker;
    }

  private:
    Subgroup group_;
    Subgroup frattini_;
    std::vector<Word> basis_;
    std::vector<std::uint32_t> labels_;
};

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

/// All subgroups of index 2 (kernels of the 2^d - 1 nonzero characters).
inline std::vector<Subgroup> index2_subgroups(const Subgroup& h) {
    FrattiniQuotient fq(h);
    std::vector<Subgroup> out;
    for (std::uint32_t f = 1; f < (1u << fq.rank()); ++f) out.push_back(fq.kernel(f));
    return out;
}

/// Elements of G lying in both or in neither of two index-2 subgroups.
inline Subgroup star(const Subgroup& n1, const Subgroup& n2, const Subgroup& g) {
    if (n1.k() != g.k() || n2.k() != g.k() || n1.ambient() != g.ambient() || n2.ambient() != g.ambient())
        throw contract_error("star: level mismatch");
    if (!n1.is_subgroup_of(g) || !n2.is_subgroup_of(g) || n1.order() * 2 != g.order() ||
        n2.order() * 2 != g.order())
        throw contract_error("star: arguments must be index-2 subgroups of G");
    Bitset bits = g.elements() & ~(n1.elements() ^ n2.elements());
    return from_elements(bits, g.k(), g.ambient());
}

/// Intersection of two subgroups.
inline Subgroup intersect(const Subgroup& x, const Subgroup& y) {
    if (x.k() != y.k() || x.ambient() != y.ambient()) throw contract_error("intersect: level mismatch");
    return from_elements(x.elements() & y.elements(), x.k(), x.ambient());
}

// ---------------------------------------------------------------------------
// Conjugacy

/// Conjugation-invariant fingerprint used to prefilter conjugator searches.
struct ConjugacyKey {
    std::uint64_t order = 0;
    std::uint64_t gl2_image_order = 0;
    std::map<std::uint32_t, std::uint64_t> order_histogram;
    std::uint64_t fixed_point_count = 0;
    std::uint32_t abelianisation_rank = 0;  ///< rank of H / Phi(H)

    friend bool operator==(const ConjugacyKey&, const ConjugacyKey&) = default;
    friend auto operator<=>(const ConjugacyKey&, const ConjugacyKey&) = default;
};

inline ConjugacyKey conjugacy_key(const Subgroup& h) {
    ConjugacyKey key;
    key.order = h.order();
    key.gl2_image_order = h.gl2_image_order();
    const Level& lv = h.level();
    h.for_each([&](Word w) {
        ++key.order_histogram[lv.order(w)];
        if (lv.has_fixed_point(w)) ++key.fixed_point_count;
    });
    key.abelianisation_rank = static_cast<std::uint32_t>(FrattiniQuotient(h).rank());
    return key;
}

/// Searches g in AGL2(Z/2^k) with g h1 g^-1 = h2. When both subgroups contain
/// the kernel of reduction mod 2^(k-1), the search runs on the reductions and
/// the conjugator is lifted, which is exact since that kernel is normal.
inline std::optional<Word> find_conjugator(const Subgroup& h1, const Subgroup& h2) {
    if (h1.k() != h2.k()) throw contract_error("find_conjugator: level mismatch");
    if (h1.order() != h2.order()) return std::nullopt;
    const int k = h1.k();
    const Level& lv = h1.level();
    if (h1.is_subgroup_of(h2)) return lv.identity();
    if (k > 1 && contains_congruence_kernel(h1, k - 1) && contains_congruence_kernel(h2, k - 1)) {
        auto g = find_conjugator(reduce_subgroup(h1, k - 1), reduce_subgroup(h2, k - 1));
        if (!g) return std::nullopt;
        return *g;  // entries in [0, 2^(k-1)) are a valid lift
    }
    const auto& gens = h1.generators();
    // Coset representatives of Gamma0^+(2) in AGL2 times an inner search over
    // Gamma0^+(2): together this is every element of AGL2.
    for (std::uint32_t i = 0; i < lv.agl_order(); ++i) {
        const Word g = lv.decode(i);
        const Word gi = lv.inv(g);
        bool ok = true;
        for (Word x : gens)
            if (!h2.contains(lv.mul(lv.mul(g, x), gi))) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return std::nullopt;
}

inline bool are_conjugate(const Subgroup& h1, const Subgroup& h2) { return find_conjugator(h1, h2).has_value(); }

/// g h g^-1 as a new subgroup.
inline Subgroup conjugate(const Subgroup& h, Word g) {
    const Level& lv = h.level();
    std::vector<Word> gens;
    const Word gi = lv.inv(g);
    for (Word x : h.generators()) gens.push_back(lv.mul(lv.mul(g, x), gi));
    const bool inside = std::all_of(gens.begin(), gens.end(), Level::in_gamma0);
    return closure(gens, h.k(), inside ? h.ambient() : Ambient::full);
}

}  // namespace oddorder::group
