#include "oddorder/modmatrix.hpp"
#include "oddorder/twoadic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace oddorder;

namespace {

AffineElement random_element(PrimePower q, std::mt19937_64& rng) {
    std::uniform_int_distribution<Residue> pick(0, q.value() - 1);
    for (;;) {
        Matrix2 m{pick(rng), pick(rng), pick(rng), pick(rng)};
        if (det_mod(m, q.ell) == 0) continue;
        return make_affine(q, {pick(rng), pick(rng)}, m);
    }
}

std::array<oracle::i64, 9> as_array(const Matrix3& m) {
    std::array<oracle::i64, 9> out{};
    for (int i = 0; i < 9; ++i) out[i] = m[i];
    return out;
}

}  // namespace

TEST(AffineMul, IdentityIsNeutral) {
    const PrimePower q{2, 3};
    std::mt19937_64 rng(3);
    const AffineElement g = random_element(q, rng);
    EXPECT_EQ(affine_mul(affine_identity(q), g), g);
    EXPECT_EQ(affine_mul(g, affine_identity(q)), g);
}

TEST(AffineMul, TranslationsAdd) {
    const PrimePower q{2, 3};
    const AffineElement x = make_affine(q, {1, 0}, {}), y = make_affine(q, {0, 1}, {});
    EXPECT_EQ(affine_mul(x, y), make_affine(q, {1, 1}, {}));
}

TEST(AffineMul, MatchesThreeByThreeProduct) {
    std::mt19937_64 rng(11);
    for (int ell : {2, 3})
        for (int r = 1; r <= 4; ++r) {
            const PrimePower q{ell, r};
            for (int i = 0; i < 1000; ++i) {
                const AffineElement g = random_element(q, rng), h = random_element(q, rng);
                const auto expect = oracle::mat3_mul(as_array(embed_3x3(g)), as_array(embed_3x3(h)), q.value());
                ASSERT_EQ(as_array(embed_3x3(affine_mul(g, h))), expect) << to_string(g) << " * " << to_string(h);
            }
        }
}

TEST(AffineMul, AssociativeWithInverses) {
    std::mt19937_64 rng(5);
    const PrimePower q{2, 4};
    for (int i = 0; i < 500; ++i) {
        const AffineElement x = random_element(q, rng), y = random_element(q, rng), z = random_element(q, rng);
        ASSERT_EQ(affine_mul(affine_mul(x, y), z), affine_mul(x, affine_mul(y, z)));
        ASSERT_EQ(affine_mul(x, affine_inv(x)), affine_identity(q));
        ASSERT_EQ(affine_mul(affine_inv(x), x), affine_identity(q));
    }
}

TEST(AffineMul, Contracts) {
    EXPECT_THROW(make_affine({2, 2}, {0, 0}, {2, 0, 0, 2}), contract_error);
    EXPECT_THROW(make_affine({4, 1}, {0, 0}, {}), contract_error);
    EXPECT_THROW(affine_mul(affine_identity({2, 2}), affine_identity({2, 3})), contract_error);
    EXPECT_THROW(reduce_level(affine_identity({2, 2}), 3), contract_error);
}

TEST(AffineMul, ReductionIsAHomomorphism) {
    std::mt19937_64 rng(8);
    const PrimePower q{2, 4};
    for (int i = 0; i < 300; ++i) {
        const AffineElement x = random_element(q, rng), y = random_element(q, rng);
        for (int j = 1; j <= 4; ++j)
            ASSERT_EQ(reduce_level(affine_mul(x, y), j), affine_mul(reduce_level(x, j), reduce_level(y, j)));
    }
}

TEST(PackedLevel, AgreesWithAffineElements) {
    std::mt19937_64 rng(21);
    for (int k = 1; k <= 4; ++k) {
        const group::Level lv(k);
        const PrimePower q{2, k};
        for (int i = 0; i < 1000; ++i) {
            const AffineElement x = random_element(q, rng), y = random_element(q, rng);
            const group::Word wx = lv.from_affine(x), wy = lv.from_affine(y);
            ASSERT_EQ(lv.to_affine(lv.mul(wx, wy)), affine_mul(x, y));
            ASSERT_EQ(lv.to_affine(lv.inv(wx)), affine_inv(x));
            ASSERT_EQ(lv.decode(lv.index(wx)), wx);
        }
    }
}

TEST(PackedLevel, IndexIsAPerfectHash) {
    for (int k = 1; k <= 3; ++k) {
        const group::Level lv(k);
        for (std::uint32_t i = 0; i < lv.agl_order(); ++i) {
            const group::Word w = lv.decode(i);
            ASSERT_EQ(lv.index(w), i);
            ASSERT_EQ(i < lv.gamma0_order(), group::Level::in_gamma0(w)) << "index " << i;
        }
    }
}

TEST(RowMembership, ExhaustiveAgainstBruteForce) {
    const std::vector<PrimePower> levels{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
    for (const PrimePower& q : levels) {
        const Residue m = q.value();
        std::uint64_t checked = 0, members = 0;
        for (Residue a = 0; a < m; ++a)
            for (Residue b = 0; b < m; ++b)
                for (Residue c = 0; c < m; ++c)
                    for (Residue d = 0; d < m; ++d) {
                        if (det_mod({a, b, c, d}, q.ell) == 0) continue;
                        for (Residue e = 0; e < m; ++e)
                            for (Residue f = 0; f < m; ++f) {
                                const RowSpaceWitness w = row_membership({e, f}, {a, b, c, d}, q);
                                ASSERT_EQ(w.member, oracle::in_row_space(e, f, a, b, c, d, m))
                                    << "v=(" << e << "," << f << ") M=(" << a << "," << b << ";" << c << "," << d
                                    << ") mod " << m;
                                if (w.member) {
                                    ++members;
                                    ASSERT_EQ(oracle::md(w.x.e * (a - 1) + w.x.f * c - e, m), 0);
                                    ASSERT_EQ(oracle::md(w.x.e * b + w.x.f * (d - 1) - f, m), 0);
                                }
                                ++checked;
                            }
                    }
        EXPECT_GT(members, 0u);
        EXPECT_LT(members, checked);
    }
}

TEST(RowMembership, SingularMatrixCases) {
    const PrimePower q{2, 3};
    // M = I: only v = 0 is reachable.
    EXPECT_TRUE(row_membership({0, 0}, {}, q).member);
    EXPECT_FALSE(row_membership({4, 0}, {}, q).member);
    // M - I = diag(2, 0): row space is 2Z/8 x 0.
    EXPECT_TRUE(row_membership({6, 0}, {3, 0, 0, 1}, q).member);
    EXPECT_FALSE(row_membership({1, 0}, {3, 0, 0, 1}, q).member);
    EXPECT_FALSE(row_membership({2, 2}, {3, 0, 0, 1}, q).member);
}
