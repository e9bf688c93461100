#pragma once

/**
 * @file twoadic.hpp
 * @brief Packed elements of AGL2(Z/2^k Z) for k <= 4.
 *
 * Word layout (one 4-bit nibble per entry, low to high):
 *
 *     bits  0- 3  a      bits 12-15  d
 *     bits  4- 7  b      bits 16-19  e
 *     bits  8-11  c      bits 20-23  f
 *
 * for the element (v, M) = ((e, f), (a b; c d)).
 *
 * Perfect hash. Every element of AGL2(Z/2^k Z) gets an index in
 * [0, 3 * 2^(6k-3)):
 *
 *     index = ((((g * H + a>>1) * H + b>>1) * H + c>>1) * H + d>>1) * Q^2 + e * Q + f
 *
 * with Q = 2^k, H = 2^(k-1) and g in [0, 6) the position of M mod 2 in the list
 * I, (1 1; 0 1), (1 0; 1 1), (0 1; 1 0), (0 1; 1 1), (1 1; 1 0). The first two
 * entries are exactly the matrices with even lower-left entry, so the elements
 * of Gamma0^+(2) (translation part arbitrary, M in Gamma0(2)) occupy the prefix
 * [0, 2^(6k-3)) of the index range.
 */

#include "oddorder/modmatrix.hpp"

#include <array>
#include <cstdint>

namespace oddorder::group {

using Word = std::uint32_t;

struct Entries {
    std::uint32_t a, b, c, d, e, f;
};

class Level {
  public:
    explicit Level(int k) : k_(k) {
        if (k < 1 || k > 4) throw contract_error("packed 2-adic level must be in [1, 4]");
        mask_ = (1u << k) - 1;
        for (std::uint32_t x = 1; x < 16; x += 2)
            for (std::uint32_t y = 1; y < 16; y += 2)
                if (((x * y) & mask_) == 1) odd_inverse_[x & mask_] = y & mask_;
    }

    int k() const { return k_; }
    std::uint32_t modulus() const { return 1u << k_; }
    std::uint32_t mask() const { return mask_; }

    static Word pack(const Entries& x) {
        return x.a | (x.b << 4) | (x.c << 8) | (x.d << 12) | (x.e << 16) | (x.f << 20);
    }
    static Entries unpack(Word w) {
        return {w & 15u, (w >> 4) & 15u, (w >> 8) & 15u, (w >> 12) & 15u, (w >> 16) & 15u, (w >> 20) & 15u};
    }
    Word make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t e = 0,
              std::int64_t f = 0) const {
        auto r = [this](std::int64_t x) { return static_cast<std::uint32_t>(mod_floor(x, modulus())); };
        return pack({r(a), r(b), r(c), r(d), r(e), r(f)});
    }

    Word identity() const { return pack({1, 0, 0, 1, 0, 0}); }

    Word mul(Word x, Word y) const {
        const Entries p = unpack(x), q = unpack(y);
        const std::uint32_t m = mask_;
        return pack({(p.a * q.a + p.b * q.c) & m, (p.a * q.b + p.b * q.d) & m, (p.c * q.a + p.d * q.c) & m,
                     (p.c * q.b + p.d * q.d) & m, (p.e * q.a + p.f * q.c + q.e) & m,
                     (p.e * q.b + p.f * q.d + q.f) & m});
    }

    Word inv(Word x) const {
        const Entries p = unpack(x);
        const std::uint32_t m = mask_, n = modulus();
        const std::uint32_t di = odd_inverse_[(p.a * p.d + (n * n - p.b * p.c)) & m];
        const std::uint32_t ia = (p.d * di) & m, ib = ((n - p.b) * di) & m, ic = ((n - p.c) * di) & m,
                            id = (p.a * di) & m;
        const std::uint32_t ve = (p.e * ia + p.f * ic) & m, vf = (p.e * ib + p.f * id) & m;
        return pack({ia, ib, ic, id, (n - ve) & m, (n - vf) & m});
    }

    Word conj(Word g, Word h) const { return mul(mul(g, h), inv(g)); }

    Word power(Word x, std::uint64_t n) const {
        Word r = identity();
        while (n) {
            if (n & 1) r = mul(r, x);
            x = mul(x, x);
            n >>= 1;
        }
        return r;
    }

    /// Exact element order; orders in AGL2(Z/2^k) are 2^j or 3 * 2^j.
    std::uint32_t order(Word x) const {
        const Word id = identity();
        Word y = x;
        for (std::uint32_t o = 1; o <= 64; o <<= 1) {
            if (y == id) return o;
            y = mul(y, y);
        }
        y = power(x, 3);
        for (std::uint32_t o = 3; o <= 192; o <<= 1) {
            if (y == id) return o;
            y = mul(y, y);
        }
        throw contract_error("element order out of range");
    }

    static bool in_gamma0(Word x) { return ((x >> 8) & 1u) == 0; }
    static Word matrix_part(Word x) { return x & 0xFFFFu; }
    static bool is_translation(Word x) { return (x & 0xFFFFu) == 0x1001u; }

    std::uint64_t agl_order() const { return 3ull << (6 * k_ - 3); }
    std::uint64_t gamma0_order() const { return 1ull << (6 * k_ - 3); }
    /// |Gamma0(2)| inside GL2(Z/2^k).
    std::uint64_t gamma0_gl2_order() const { return 1ull << (4 * k_ - 3); }

    std::uint32_t index(Word x) const {
        const Entries p = unpack(x);
        const std::uint32_t lo = (p.a & 1) | ((p.b & 1) << 1) | ((p.c & 1) << 2) | ((p.d & 1) << 3);
        const std::uint32_t g = kGl2Position[lo];
        const int h = k_ - 1;
        std::uint32_t idx = g;
        idx = (idx << h) | (p.a >> 1);
        idx = (idx << h) | (p.b >> 1);
        idx = (idx << h) | (p.c >> 1);
        idx = (idx << h) | (p.d >> 1);
        idx = (idx << k_) | p.e;
        idx = (idx << k_) | p.f;
        return idx;
    }

    Word decode(std::uint32_t idx) const {
        const std::uint32_t hm = (1u << (k_ - 1)) - 1;
        Entries p{};
        p.f = idx & mask_;
        idx >>= k_;
        p.e = idx & mask_;
        idx >>= k_;
        const int h = k_ - 1;
        const std::uint32_t dh = idx & hm;
        idx >>= h;
        const std::uint32_t ch = idx & hm;
        idx >>= h;
        const std::uint32_t bh = idx & hm;
        idx >>= h;
        const std::uint32_t ah = idx & hm;
        idx >>= h;
        const std::uint32_t lo = kGl2Mod2[idx];
        p.a = (ah << 1) | (lo & 1);
        p.b = (bh << 1) | ((lo >> 1) & 1);
        p.c = (ch << 1) | ((lo >> 2) & 1);
        p.d = (dh << 1) | ((lo >> 3) & 1);
        return pack(p);
    }

    /// Entrywise reduction to level j (as a word of that level).
    static Word reduce(Word x, int j) {
        const std::uint32_t m = (1u << j) - 1;
        const std::uint32_t mm = m | (m << 4) | (m << 8) | (m << 12) | (m << 16) | (m << 20);
        return x & mm;
    }

    AffineElement to_affine(Word x) const {
        const Entries p = unpack(x);
        return {PrimePower{2, k_}, Row2{p.e, p.f}, Matrix2{p.a, p.b, p.c, p.d}};
    }

    Word from_affine(const AffineElement& g) const {
        if (g.modulus.ell != 2 || g.modulus.level != k_) throw contract_error("from_affine: level mismatch");
        return make(g.m.a, g.m.b, g.m.c, g.m.d, g.v.e, g.v.f);
    }

    /// v in Row(M - I), i.e. the affine map x -> x M + v has a fixed point.
    bool has_fixed_point(Word x) const {
        const Entries p = unpack(x);
        const PrimePower q{2, k_};
        return solve_row_space(Row2{p.e, p.f},
                               Matrix2{static_cast<Residue>((p.a + mask_) & mask_), p.b, p.c,
                                       static_cast<Residue>((p.d + mask_) & mask_)},
                               q)
            .member;
    }

    friend bool operator==(const Level& x, const Level& y) { return x.k_ == y.k_; }

  private:
    // Invertible 2x2 matrices mod 2 as 4-bit masks (a | b<<1 | c<<2 | d<<3).
    static constexpr std::array<std::uint32_t, 6> kGl2Mod2{0b1001, 0b1011, 0b1101, 0b0110, 0b1110, 0b0111};
    static constexpr std::array<std::uint32_t, 16> kGl2Position = [] {
        std::array<std::uint32_t, 16> pos{};
        for (auto& x : pos) x = 0;
        for (std::uint32_t i = 0; i < 6; ++i) pos[kGl2Mod2[i]] = i;
        return pos;
    }();

    int k_;
    std::uint32_t mask_;
    std::array<std::uint32_t, 16> odd_inverse_{};
};

/// Row-major 3x3 embedding of a packed element (used by the catalog format).
inline std::array<int, 9> to_matrix3(Word x) {
    const Entries p = Level::unpack(x);
    return {static_cast<int>(p.a), static_cast<int>(p.b), 0, static_cast<int>(p.c), static_cast<int>(p.d), 0,
            static_cast<int>(p.e), static_cast<int>(p.f), 1};
}

}  // namespace oddorder::group
