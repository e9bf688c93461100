#pragma once

/**
 * @file density.hpp
 * @brief Exact odd-order densities F(G) for subgroups G of AGL2(Z/l^r Z).
 *
 * F(G) is the limiting proportion of lifts of elements of G that have a fixed
 * point. It is the sum over (v, M) in G of mu_r(v, M), the contribution of all
 * lifts of (v, M). mu_r is evaluated by a five-way dispatch:
 *
 *   (v, M) == (0, I) mod l^r    closed form
 *   v not in Row(M - I)         0
 *   v == 0, M == I mod l        (1 / l^6) mu_{r-1}(v / l, (M - I) / l + I)
 *   det(M - I) != 0 mod l^r     m / #AGL2(Z/l^r)
 *   otherwise                   m / (l^(6r-4) (l-1)^2 (l+1)^2)
 *
 * where m is the index of G in AGL2(Z/l^r Z). The (0, I) test has to come
 * before the descent, otherwise the recursion would never terminate.
 */

#include "oddorder/arith.hpp"
#include "oddorder/modmatrix.hpp"
#include "oddorder/subgroup.hpp"

#include <array>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace oddorder {

enum class MuCase { zero, identity, unit, singular };

/// Outcome of the dispatch: mu = base(kind, level) / l^(6 depth).
struct MuTerm {
    MuCase kind = MuCase::zero;
    int level = 0;
    int depth = 0;
    friend auto operator<=>(const MuTerm&, const MuTerm&) = default;
};

struct MuInput {
    Row2 v;
    Matrix2 m;
    PrimePower modulus;
    BigInt index = 1;  ///< m = [AGL2(Z/l^r) : G]
};

/// #AGL2(Z/l^r Z) = l^(2r) * l^(4(r-1)) * (l^2 - 1)(l^2 - l).
inline BigInt agl2_order(int ell, int r) {
    BigInt l = ell;
    return boost::multiprecision::pow(l, 2 * r) * boost::multiprecision::pow(l, 4 * (r - 1)) * (l * l - 1) *
           (l * l - l);
}

inline MuTerm mu_dispatch(Row2 v, Matrix2 m, PrimePower q) {
    if (q.level < 1) throw contract_error("mu: level must be >= 1");
    const int ell = q.ell;
    Residue mod = q.value();
    v = reduce(v, mod);
    Matrix2 n = minus_identity(m, mod);
    int depth = 0;
    while (true) {
        const bool v_zero = v.e == 0 && v.f == 0;
        if (v_zero && n.a == 0 && n.b == 0 && n.c == 0 && n.d == 0) return {MuCase::identity, q.level, depth};
        if (!solve_row_space(v, n, q).member) return {MuCase::zero, q.level, depth};
        const bool all_div = v.e % ell == 0 && v.f % ell == 0 && n.a % ell == 0 && n.b % ell == 0 &&
                             n.c % ell == 0 && n.d % ell == 0;
        if (all_div) {
            // q.level >= 2 here: at level 1 this case is exactly (0, I).
            v = {v.e / ell, v.f / ell};
            n = {n.a / ell, n.b / ell, n.c / ell, n.d / ell};
            --q.level;
            mod /= ell;
            ++depth;
            continue;
        }
        if (det_mod(n, mod) != 0) return {MuCase::unit, q.level, depth};
        return {MuCase::singular, q.level, depth};
    }
}

inline Rational mu_value(const MuTerm& t, int ell, const BigInt& index) {
    using boost::multiprecision::pow;
    const BigInt l = ell;
    Rational base;
    switch (t.kind) {
        case MuCase::zero: return Rational(0);
        case MuCase::identity:
            base = Rational(((l - 1) * l + 1) * index, (l - 1) * pow(l, 6 * t.level - 5) * (pow(l, 6) - 1));
            break;
        case MuCase::unit: base = Rational(index, agl2_order(ell, t.level)); break;
        case MuCase::singular:
            base = Rational(index, pow(l, 6 * t.level - 4) * (l - 1) * (l - 1) * (l + 1) * (l + 1));
            break;
    }
    return base / Rational(pow(l, 6 * t.depth));
}

inline DensityValue mu(const MuInput& in) {
    check_prime_power(in.modulus);
    if (in.index <= 0 || agl2_order(in.modulus.ell, in.modulus.level) % in.index != 0)
        throw contract_error("mu: index must divide #AGL2");
    return DensityValue(mu_value(mu_dispatch(in.v, in.m, in.modulus), in.modulus.ell, in.index));
}

namespace detail {
inline DensityValue sum_terms(const std::map<MuTerm, std::uint64_t>& tally, int ell, const BigInt& index) {
    Rational total = 0;
    for (const auto& [term, count] : tally) total += mu_value(term, ell, index) * count;
    return DensityValue(total);
}
}  // namespace detail

/// F(G) for G given by its element list (any prime l).
inline DensityValue density_exact(std::span<const AffineElement> elements, PrimePower q) {
    check_prime_power(q);
    const BigInt total = agl2_order(q.ell, q.level);
    if (elements.empty() || total % elements.size() != 0) throw contract_error("density_exact: bad element count");
    const BigInt index = total / elements.size();
    std::map<MuTerm, std::uint64_t> tally;
    for (const auto& g : elements) {
        if (!(g.modulus == q)) throw contract_error("density_exact: element at wrong level");
        ++tally[mu_dispatch(g.v, g.m, q)];
    }
    return detail::sum_terms(tally, q.ell, index);
}

/// F(G) for a 2-adic subgroup.
inline DensityValue density_exact(const group::Subgroup& h) {
    const PrimePower q{2, h.k()};
    const BigInt index = BigInt(h.level().agl_order() / h.order());
    std::map<MuTerm, std::uint64_t> tally;
    const group::Level& lv = h.level();
    h.for_each([&](group::Word w) {
        const AffineElement g = lv.to_affine(w);
        ++tally[mu_dispatch(g.v, g.m, q)];
    });
    return detail::sum_terms(tally, 2, index);
}

struct FiniteLevelOptions {
    int max_exhaustive_gap = 2;
    bool allow_sampling = false;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
};

/// Proportion of lifts to level k of elements of h that have a fixed point.
/// Exhaustive for k - r <= 2; beyond that only with sampling enabled, in which
/// case the returned value is the sampled proportion.
inline DensityValue density_finite_level(const group::Subgroup& h, int k, const FiniteLevelOptions& opt = {}) {
    const int r = h.k();
    if (k < r) throw contract_error("density_finite_level: k must be >= level of H");
    if (k > 30) throw contract_error("density_finite_level: k too large");
    const PrimePower q{2, k};
    const Residue step = Residue{1} << r;
    const Residue lifts_per_entry = Residue{1} << (k - r);

    auto fixed = [&](const std::array<Residue, 6>& x) {
        return solve_row_space(Row2{x[4], x[5]}, minus_identity(Matrix2{x[0], x[1], x[2], x[3]}, q.value()), q)
            .member;
    };
    auto base_entries = [&](group::Word w) {
        const auto p = group::Level::unpack(w);
        return std::array<Residue, 6>{p.a, p.b, p.c, p.d, p.e, p.f};
    };

    if (k - r > opt.max_exhaustive_gap) {
        if (!opt.allow_sampling)
            throw budget_error("density_finite_level: k - r exceeds the exhaustive budget; enable sampling");
        const std::vector<group::Word> elems = h.element_list();
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        std::uniform_int_distribution<Residue> lift(0, lifts_per_entry - 1);
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
            auto x = base_entries(elems[pick(rng)]);
            for (auto& e : x) e += step * lift(rng);
            hits += fixed(x);
        }
        return DensityValue(Rational(BigInt(hits), BigInt(opt.samples)));
    }

    const int gap = k - r;
    const std::uint64_t lifts = std::uint64_t{1} << (6 * gap);
    const Residue sub_mask = lifts_per_entry - 1;
    std::uint64_t hits = 0;
    h.for_each([&](group::Word w) {
        const auto base = base_entries(w);
        for (std::uint64_t t = 0; t < lifts; ++t) {
            auto x = base;
            for (int i = 0; i < 6; ++i) x[i] += step * ((t >> (gap * i)) & sub_mask);
            hits += fixed(x);
        }
    });
    return DensityValue(Rational(BigInt(hits), BigInt(h.order()) * lifts));
}

/// Checks mu_r(v, M) == sum of mu_{r+1} over its l^6 lifts.
inline bool mu_unfold_check(const MuInput& in, std::string* trace = nullptr) {
    const PrimePower q = in.modulus;
    const PrimePower q1{q.ell, q.level + 1};
    const Residue step = q.value();
    const Rational lhs = mu(in).value();
    Rational rhs = 0;
    const Residue l = q.ell;
    const Residue base_entries[6] = {in.m.a, in.m.b, in.m.c, in.m.d, in.v.e, in.v.f};
    const Residue nlifts = ipow(l, 6);
    for (Residue t = 0; t < nlifts; ++t) {
        Residue x[6];
        Residue tt = t;
        for (int i = 0; i < 6; ++i) {
            x[i] = mod_floor(base_entries[i], step) + step * (tt % l);
            tt /= l;
        }
        rhs += mu_value(mu_dispatch(Row2{x[4], x[5]}, Matrix2{x[0], x[1], x[2], x[3]}, q1), q.ell, in.index);
    }
    if (lhs != rhs && trace) {
        std::ostringstream os;
        os << "mu_r = " << lhs << " but sum over lifts = " << rhs;
        *trace = os.str();
    }
    return lhs == rhs;
}

}  // namespace oddorder
