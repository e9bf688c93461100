#pragma once

/**
 * @file modmatrix.hpp
 * @brief Elements of AGL2(Z/l^r Z) and linear algebra over Z/l^r Z.
 *
 * An element is a pair (v, M) of a row vector v and an invertible 2x2 matrix
 * M. The group law is the one induced by the 3x3 embedding
 *
 *     (v, M) -> [ M  0 ]
 *               [ v  1 ]
 *
 * so (v1, M1) * (v2, M2) = (v1 M2 + v2, M1 M2). The element acts on row
 * vectors by x -> x M + v; it has a fixed point iff v lies in Row(M - I).
 */

#include "oddorder/arith.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace oddorder {

using Residue = std::int64_t;

struct Row2 {
    Residue e = 0, f = 0;
    friend bool operator==(const Row2&, const Row2&) = default;
};

/// Row-major 2x2 matrix (a b; c d).
struct Matrix2 {
    Residue a = 1, b = 0, c = 0, d = 1;
    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

using Matrix3 = std::array<Residue, 9>;

/// Modulus l^r together with its factorisation. l^r is kept below 2^31 so that
/// products of two residues never overflow.
struct PrimePower {
    int ell = 2;
    int level = 1;

    Residue value() const { return ipow(ell, level); }
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline void check_prime_power(const PrimePower& q) {
    if (q.ell < 2 || q.level < 1) throw contract_error("modulus must be l^r with l prime, r >= 1");
    for (int p = 2; p * p <= q.ell; ++p)
        if (q.ell % p == 0) throw contract_error("modulus base must be prime");
    Residue v = 1;
    for (int i = 0; i < q.level; ++i) {
        v *= q.ell;
        if (v >= (Residue{1} << 31)) throw contract_error("modulus l^r too large");
    }
}

/// l-adic valuation of x modulo l^r; returns r when x == 0 mod l^r.
inline int valuation(Residue x, const PrimePower& q) {
    x = mod_floor(x, q.value());
    if (x == 0) return q.level;
    int t = 0;
    while (x % q.ell == 0) {
        x /= q.ell;
        ++t;
    }
    return t;
}

/// Inverse of a unit modulo m (extended Euclid).
inline Residue inverse_mod(Residue x, Residue m) {
    Residue r0 = m, r1 = mod_floor(x, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Residue qt = r0 / r1;
        Residue t = r0 - qt * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qt * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw contract_error("inverse_mod: argument is not a unit");
    return mod_floor(s0, m);
}

inline Residue det_mod(const Matrix2& m, Residue modulus) {
    return mod_floor(m.a * m.d - m.b * m.c, modulus);
}

inline Matrix2 reduce(const Matrix2& m, Residue q) {
    return {mod_floor(m.a, q), mod_floor(m.b, q), mod_floor(m.c, q), mod_floor(m.d, q)};
}
inline Row2 reduce(const Row2& v, Residue q) { return {mod_floor(v.e, q), mod_floor(v.f, q)}; }

inline Matrix2 mat_mul(const Matrix2& x, const Matrix2& y, Residue q) {
    return {mod_floor(x.a * y.a + x.b * y.c, q), mod_floor(x.a * y.b + x.b * y.d, q),
            mod_floor(x.c * y.a + x.d * y.c, q), mod_floor(x.c * y.b + x.d * y.d, q)};
}

inline Row2 row_mul(const Row2& v, const Matrix2& m, Residue q) {
    return {mod_floor(v.e * m.a + v.f * m.c, q), mod_floor(v.e * m.b + v.f * m.d, q)};
}

inline Matrix2 minus_identity(const Matrix2& m, Residue q) {
    return reduce(Matrix2{m.a - 1, m.b, m.c, m.d - 1}, q);
}

/// An element (v, M) of AGL2(Z/l^r Z) in canonical form.
struct AffineElement {
    PrimePower modulus;
    Row2 v;
    Matrix2 m;

    friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

/// Validating constructor: reduces entries into [0, l^r) and checks det(M) is a unit.
inline AffineElement make_affine(PrimePower q, Row2 v, Matrix2 m) {
    check_prime_power(q);
    const Residue mod = q.value();
    AffineElement g{q, reduce(v, mod), reduce(m, mod)};
    if (det_mod(g.m, q.ell) == 0) throw contract_error("matrix part is not invertible");
    return g;
}

inline AffineElement affine_identity(PrimePower q) { return make_affine(q, {}, {}); }

inline AffineElement affine_mul(const AffineElement& g1, const AffineElement& g2) {
    if (!(g1.modulus == g2.modulus)) throw contract_error("affine_mul: level or prime mismatch");
    const Residue q = g1.modulus.value();
    const Row2 vm = row_mul(g1.v, g2.m, q);
    return {g1.modulus, reduce(Row2{vm.e + g2.v.e, vm.f + g2.v.f}, q), mat_mul(g1.m, g2.m, q)};
}

inline AffineElement affine_inv(const AffineElement& g) {
    const Residue q = g.modulus.value();
    const Residue di = inverse_mod(det_mod(g.m, q), q);
    const Matrix2 mi = reduce(Matrix2{g.m.d * di, -g.m.b * di, -g.m.c * di, g.m.a * di}, q);
    const Row2 vm = row_mul(g.v, mi, q);
    return {g.modulus, reduce(Row2{-vm.e, -vm.f}, q), mi};
}

inline Matrix3 embed_3x3(const AffineElement& g) {
    return {g.m.a, g.m.b, 0, g.m.c, g.m.d, 0, g.v.e, g.v.f, 1};
}

/// Entrywise reduction to level j <= level(g).
inline AffineElement reduce_level(const AffineElement& g, int j) {
    if (j < 1 || j > g.modulus.level) throw contract_error("reduce_level: target level out of range");
    PrimePower q{g.modulus.ell, j};
    return {q, reduce(g.v, q.value()), reduce(g.m, q.value())};
}

struct RowSpaceWitness {
    bool member = false;
    Row2 x;  ///< satisfies x (M - I) == v when member
};

namespace detail {

// Smith form of a 2x2 matrix over Z/l^r: D = R N C with D diagonal, R and C
// invertible. Pivots are chosen by minimal l-adic valuation, which over a
// local ring divides every other entry.
struct Smith2 {
    Matrix2 r, c, d;
};

inline Smith2 smith_form(const Matrix2& n, const PrimePower& pq) {
    const Residue q = pq.value();
    Matrix2 d = reduce(n, q), r{}, c{};
    std::array<Residue*, 4> entries{&d.a, &d.b, &d.c, &d.d};
    int best = 0, best_val = pq.level;
    for (int i = 0; i < 4; ++i) {
        int v = valuation(*entries[i], pq);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best_val == pq.level) return {r, c, d};  // zero matrix

    if (best >= 2) {  // swap rows
        std::swap(d.a, d.c);
        std::swap(d.b, d.d);
        std::swap(r.a, r.c);
        std::swap(r.b, r.d);
    }
    if (best % 2 == 1) {  // swap columns
        std::swap(d.a, d.b);
        std::swap(d.c, d.d);
        std::swap(c.a, c.b);
        std::swap(c.c, c.d);
    }
    const Residue lt = ipow(pq.ell, best_val);
    const Residue unit_inv = inverse_mod(d.a / lt, q);
    // Row 1 -= (d.c / d.a) * row 0.
    const Residue fr = mod_floor((d.c / lt) * unit_inv, q);
    d.c = mod_floor(d.c - fr * d.a, q);
    d.d = mod_floor(d.d - fr * d.b, q);
    r.c = mod_floor(r.c - fr * r.a, q);
    r.d = mod_floor(r.d - fr * r.b, q);
    // Column 1 -= (d.b / d.a) * column 0.
    const Residue fc = mod_floor((d.b / lt) * unit_inv, q);
    d.b = mod_floor(d.b - fc * d.a, q);
    d.d = mod_floor(d.d - fc * d.c, q);
    c.b = mod_floor(c.b - fc * c.a, q);
    c.d = mod_floor(c.d - fc * c.c, q);
    return {r, c, d};
}

}  // namespace detail

/// Solves x (M - I) = v over Z/l^r Z via valuation-tracked elimination.
inline RowSpaceWitness solve_row_space(const Row2& v, const Matrix2& n, const PrimePower& pq) {
    const Residue q = pq.value();
    const auto sf = detail::smith_form(n, pq);
    const Row2 vc = row_mul(reduce(v, q), sf.c, q);
    Row2 y;
    const std::array<Residue, 2> diag{sf.d.a, sf.d.d};
    const std::array<Residue, 2> rhs{vc.e, vc.f};
    std::array<Residue, 2> sol{0, 0};
    for (int i = 0; i < 2; ++i) {
        const int t = valuation(diag[i], pq);
        if (t == pq.level) {
            if (rhs[i] != 0) return {false, {}};
            continue;
        }
        const Residue lt = ipow(pq.ell, t);
        if (rhs[i] % lt != 0) return {false, {}};
        sol[i] = mod_floor((rhs[i] / lt) * inverse_mod(diag[i] / lt, q), q);
    }
    y = {sol[0], sol[1]};
    return {true, row_mul(y, sf.r, q)};
}

/// Decides v in Row(M - I) and returns a witness x with x (M - I) = v.
inline RowSpaceWitness row_membership(const Row2& v, const Matrix2& m, const PrimePower& pq) {
    return solve_row_space(v, minus_identity(m, pq.value()), pq);
}

inline std::string to_string(const AffineElement& g) {
    std::ostringstream os;
    os << "((" << g.v.e << "," << g.v.f << "),(" << g.m.a << "," << g.m.b << ";" << g.m.c << ","
       << g.m.d << ")) mod " << g.modulus.ell << "^" << g.modulus.level;
    return os.str();
}

}  // namespace oddorder
