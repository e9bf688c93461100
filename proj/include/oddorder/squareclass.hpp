#pragma once

// Rationals modulo squares, and the independence test for -1, 2, b, a^2-4b, c.

#include "oddorder/ecurve.hpp"
#include "oddorder/factor.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace oddorder {

/// Signed squarefree representative of q (Q^x)^2, or the distinguished zero.
struct SquareClass {
    bool zero = false;
    BigInt rep = 1;

    bool is_square() const { return !zero && rep == 1; }
    std::string str() const {
        if (zero) return "0";
        std::ostringstream os;
        os << rep;
        return os.str();
    }
    friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

inline SquareClass squarefree_part(const Rational& q, const FactorOptions& opt = {}) {
    if (q == 0) return {true, 0};
    // num / den has the square class of num * den
    std::map<BigInt, int> exps;
    for (const BigInt& part : {numerator_of(q), denominator_of(q)}) {
        if (part == 1 || part == -1) continue;
        for (const auto& [p, e] : factorize(part, opt)) exps[p] += e;
    }
    BigInt rep = q < 0 ? -1 : 1;
    for (const auto& [p, e] : exps)
        if (e % 2) rep *= p;
    return {false, rep};
}

/// Rank over F_2 of the exponent vectors (sign and prime valuations mod 2).
inline int square_class_rank(const std::vector<BigInt>& values, const FactorOptions& opt = {}) {
    std::map<BigInt, std::size_t> column;
    std::vector<std::vector<std::size_t>> support;
    for (const BigInt& v : values) {
        if (v == 0) throw contract_error("square_class_rank: zero value");
        std::vector<std::size_t> cols;
        if (v < 0) cols.push_back(0);
        for (const auto& [p, e] : factorize(v, opt)) {
            if (e % 2 == 0) continue;
            auto [it, fresh] = column.emplace(p, column.size() + 1);
            cols.push_back(it->second);
        }
        support.push_back(std::move(cols));
    }
    const std::size_t width = column.size() + 1;
    std::vector<boost::dynamic_bitset<>> rows;
    for (const auto& cols : support) {
        boost::dynamic_bitset<> r(width);
        for (std::size_t c : cols) r.set(c);
        rows.push_back(std::move(r));
    }
    int rank = 0;
    for (std::size_t col = 0; col < width; ++col) {
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return r.test(col); });
        if (pivot == rows.end()) continue;
        std::swap(*pivot, rows[static_cast<std::size_t>(rank)]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && rows[i].test(col)) rows[i] ^= rows[static_cast<std::size_t>(rank)];
        ++rank;
    }
    return rank;
}

/// -1, 2, b, a^2 - 4b and c are independent modulo squares.
inline bool genericity_check(const CurveParams& e, const FactorOptions& opt = {}) {
    return square_class_rank({BigInt(-1), BigInt(2), e.b, e.disc_prime, BigInt(e.c)}, opt) == 5;
}

}  // namespace oddorder
