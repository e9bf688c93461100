#pragma once

// Word-sized modular arithmetic, primality and integer factorisation.
//
// Below 2^64 primality is decided by Miller-Rabin with the first twelve prime
// bases, which is deterministic in that range. Larger cofactors are split by
// Pollard-Brent under a step budget; exceeding it raises budget_error.

#include "oddorder/arith.hpp"

#include <boost/multiprecision/integer.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oddorder {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 x, u64 y, u64 m) {
    if (m <= 0xffffffffULL) return (x * y) % m;
    return static_cast<u64>(static_cast<u128>(x) * y % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Inverse of x modulo m; x must be a unit.
inline u64 invmod(u64 x, u64 m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(x % m);
    while (nr != 0) {
        const std::int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw contract_error("invmod: not a unit");
    return static_cast<u64>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) composite = false;
        }
        if (composite) return false;
    }
    return true;
}

/// Floor square root.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw contract_error("isqrt of a negative number");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n, BigInt* root = nullptr) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

/// q is the square of a rational; optionally returns the non-negative root.
inline bool is_rational_square(const Rational& q, Rational* root = nullptr) {
    BigInt rn, rd;
    if (!is_perfect_square(numerator_of(q), &rn) || !is_perfect_square(denominator_of(q), &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

struct FactorOptions {
    std::uint64_t pollard_budget = 50'000'000;  ///< total Pollard-Brent iterations
    int mr_rounds = 40;                         ///< for cofactors above 2^64
};

namespace detail {

inline bool probably_prime(const BigInt& n, const FactorOptions& opt) {
    if (n <= std::numeric_limits<u64>::max()) return is_prime_u64(static_cast<u64>(n));
    std::mt19937_64 rng(static_cast<u64>(n & 0xffffffffu) ^ 0x5eedULL);
    return boost::multiprecision::miller_rabin_test(n, opt.mr_rounds, rng);
}

inline BigInt pollard_brent(const BigInt& n, std::uint64_t& budget) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        BigInt y = 2, x, g = 1, q = 1, ys;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t j = 0; j < r && g == 1; j += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - j); ++i) {
                    y = f(y);
                    BigInt diff = x > y ? BigInt(x - y) : BigInt(y - x);
                    q = (q * diff) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                const std::uint64_t spent = std::min(m, r - j);
                if (budget < spent) throw budget_error("factorisation budget exhausted");
                budget -= spent;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                BigInt diff = x > ys ? BigInt(x - ys) : BigInt(ys - x);
                g = boost::multiprecision::gcd(diff, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(BigInt n, std::map<BigInt, int>& out, std::uint64_t& budget, const FactorOptions& opt) {
    if (n == 1) return;
    if (probably_prime(n, opt)) {
        ++out[n];
        return;
    }
    BigInt r;
    if (is_perfect_square(n, &r)) {
        std::map<BigInt, int> sub;
        factor_into(r, sub, budget, opt);
        for (auto& [p, e] : sub) out[p] += 2 * e;
        return;
    }
    const BigInt d = pollard_brent(n, budget);
    factor_into(d, out, budget, opt);
    factor_into(n / d, out, budget, opt);
}

}  // namespace detail

/// Prime factorisation of |n| (n != 0).
inline std::map<BigInt, int> factorize(const BigInt& n, const FactorOptions& opt = {}) {
    if (n == 0) throw contract_error("factorize: zero");
    BigInt m = n < 0 ? BigInt(-n) : n;
    std::map<BigInt, int> out;
    for (unsigned p = 2; p < 1000 && m > 1; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ++out[BigInt(p)];
            m /= p;
        }
    }
    std::uint64_t budget = opt.pollard_budget;
    detail::factor_into(m, out, budget, opt);
    return out;
}

/// Factorisation of a word-sized number by trial division (used for group
/// orders, which stay far below 2^40 in scans).
inline std::vector<std::pair<u64, int>> factorize_small(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace oddorder
