#include "oddorder/ecurve.hpp"
#include "oddorder/table.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace oddorder;

namespace {

ReducedPoint from_oracle(const oracle::Pt& P) {
    if (!P) return ReducedPoint::infinity();
    return ReducedPoint::affine(P->first, P->second);
}

oracle::Curve oracle_curve(const CurveParams& e, u64 p) {
    return {p, reduce_mod(e.a, p), reduce_mod(e.b, p)};
}

}  // namespace

TEST(CurveParams, DerivedQuantities) {
    const CurveParams e = curve_from_params(3, 3, 1);
    EXPECT_EQ(e.b, -15);
    EXPECT_EQ(e.disc_prime, 69);
    EXPECT_EQ(e.delta, 16 * 225 * 69);
}

TEST(CurveParams, AlphaLiesOnTheCurve) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> pick(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t a = pick(rng), c = pick(rng), k = pick(rng);
        CurveParams e;
        try {
            e = curve_from_params(a, c, k);
        } catch (const contract_error&) {
            continue;
        }
        const BigInt x = c, y = BigInt(c) * k;
        ASSERT_EQ(y * y, x * x * x + a * x * x + e.b * x) << to_string(e);
    }
}

TEST(CurveParams, Contracts) {
    EXPECT_THROW(curve_from_params(0, 0, 1), contract_error);
    EXPECT_THROW(curve_from_params(2, 2, 2), contract_error);  // b = 8 - 4 - 4 = 0
    EXPECT_THROW(FpCurve(2, 1, 1), contract_error);
    EXPECT_THROW(FpCurve(7, 1, 0), contract_error);
    EXPECT_THROW(reduce_curve(curve_from_params(3, 3, 1), 5), contract_error);  // 5 | b
}

TEST(FpCurve, GroupLawAgainstOracle) {
    std::mt19937_64 rng(9);
    for (u64 p : {101ull, 1009ull, 65537ull}) {
        const CurveParams e = curve_from_params(3, 3, 1);
        const FpCurve E = reduce_curve(e, p);
        const oracle::Curve O = oracle_curve(e, p);
        for (int i = 0; i < 200; ++i) {
            const oracle::Pt P = O.random_point(rng), Q = O.random_point(rng);
            ASSERT_EQ(E.add(from_oracle(P), from_oracle(Q)), from_oracle(O.add(P, Q)));
            ASSERT_EQ(E.add(from_oracle(P), from_oracle(P)), from_oracle(O.add(P, P)));
            ASSERT_TRUE(E.contains(E.add(from_oracle(P), from_oracle(Q))));
            ASSERT_TRUE(E.add(from_oracle(P), E.neg(from_oracle(P))).inf);
        }
    }
}

TEST(GroupOrder, SmallPrimesAgainstPointCount) {
    for (const ReferenceRow& row : kReferenceRows) {
        if (row.id % 4 != 1) continue;
        const CurveParams e = curve_from_params(row.a, row.c, row.k);
        for (u64 p = 3; p < 3000; p += 2) {
            if (!oracle::is_prime(p) || !is_good_prime(e, p)) continue;
            const FpCurve E = reduce_curve(e, p);
            const u64 n = oracle_curve(e, p).count();
            ASSERT_EQ(group_order_naive(E), n) << "row " << row.id << " p=" << p;
            OrderOptions opt;
            opt.exhaustive_below = 3;  // force the point-order path
            ASSERT_EQ(group_order(E, opt), n) << "row " << row.id << " p=" << p;
        }
    }
}

TEST(GroupOrder, LargerPrimesAgainstPointCount) {
    const CurveParams e = curve_from_params(30, -150, 1);
    int checked = 0;
    for (u64 p = 200'003; checked < 12; p += 2) {
        if (!oracle::is_prime(p) || !is_good_prime(e, p)) continue;
        ASSERT_EQ(group_order(reduce_curve(e, p)), oracle_curve(e, p).count()) << "p=" << p;
        ++checked;
    }
}

TEST(GroupOrder, SeedDoesNotChangeTheAnswer) {
    const CurveParams e = curve_from_params(2, -5, 1);
    for (u64 p : {100'003ull, 1'000'003ull, 99'999'989ull}) {
        if (!is_good_prime(e, p)) continue;
        OrderOptions a, b;
        a.seed = 1;
        b.seed = 987654321;
        EXPECT_EQ(group_order(reduce_curve(e, p), a), group_order(reduce_curve(e, p), b)) << "p=" << p;
    }
}

TEST(OddOrder, AllExemplarsAgainstNaiveOrder) {
    for (const ReferenceRow& row : kReferenceRows) {
        const CurveParams e = curve_from_params(row.a, row.c, row.k);
        for (u64 p = 3; p < 2000; p += 2) {
            if (!oracle::is_prime(p) || !is_good_prime(e, p)) continue;
            const oracle::Curve O = oracle_curve(e, p);
            const oracle::Pt alpha = std::make_pair(reduce_mod(e.c, p), oracle::mulm(reduce_mod(e.c, p), reduce_mod(e.k, p), p));
            const bool odd = O.order(alpha) % 2 == 1;
            const OddOrderResult r = odd_order_details(e, p);
            ASSERT_EQ(r.odd, odd) << "row " << row.id << " p=" << p;
            ASSERT_EQ(r.N, r.m << r.s);
            ASSERT_EQ(r.m % 2, 1u);
        }
    }
}

TEST(Isogeny, PsiAfterPhiIsDoubling) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> row_pick(0, kReferenceRows.size() - 1);
    std::uniform_int_distribution<u64> prime_pick(3, 20000);
    int done = 0;
    while (done < 100) {
        const ReferenceRow& row = kReferenceRows[row_pick(rng)];
        const CurveParams e = curve_from_params(row.a, row.c, row.k);
        const u64 p = prime_pick(rng);
        if (!oracle::is_prime(p) || !is_good_prime(e, p)) continue;
        const FpCurve E = reduce_curve(e, p);
        const FpCurve Ep = isogenous(E);
        const oracle::Curve O = oracle_curve(e, p);
        const oracle::Curve Op{p, Ep.a(), Ep.b()};
        const oracle::Pt P = O.random_point(rng);
        const ReducedPoint Q = phi(E, from_oracle(P));
        ASSERT_TRUE(Ep.contains(Q)) << "p=" << p;
        ASSERT_EQ(psi(Ep, Q), from_oracle(O.add(P, P))) << "row " << row.id << " p=" << p;
        const oracle::Pt R = Op.random_point(rng);
        ASSERT_EQ(phi(E, psi(Ep, from_oracle(R))), from_oracle(Op.add(R, R))) << "row " << row.id << " p=" << p;
        ++done;
    }
}

TEST(Isogeny, KernelIsTwoTorsionPoint) {
    const FpCurve E = reduce_curve(curve_from_params(3, 3, 1), 101);
    EXPECT_TRUE(phi(E, ReducedPoint::affine(0, 0)).inf);
    EXPECT_TRUE(phi(E, ReducedPoint::infinity()).inf);
}

TEST(Sieve, SegmentsMatchPlainSieve) {
    const auto all = small_primes(100'000);
    const auto base = small_primes(400);
    std::vector<u64> joined;
    for (u64 lo = 0; lo < 100'001; lo += 4096) {
        const auto seg = sieve_segment(lo, std::min<u64>(100'001, lo + 4096), base);
        joined.insert(joined.end(), seg.begin(), seg.end());
    }
    EXPECT_EQ(joined, all);
    EXPECT_EQ(all.size(), 9592u);
    for (u64 q : all) ASSERT_TRUE(oracle::is_prime(q));
}

TEST(Scan, PrimeCountsAndDeterminism) {
    const CurveParams e = curve_from_params(3, 3, 1);
    ScanOptions one, three;
    one.audit = three.audit = true;
    one.segment = three.segment = 4096;
    three.workers = 3;
    const ScanReport a = empirical_density(e, 50'000, one), b = empirical_density(e, 50'000, three);
    EXPECT_EQ(a.primes_total, 5133u);
    EXPECT_EQ(a.primes_total, b.primes_total);
    EXPECT_EQ(a.odd_count, b.odd_count);
    ASSERT_EQ(a.audit.size(), b.audit.size());
    for (std::size_t i = 0; i < a.audit.size(); ++i) ASSERT_EQ(to_csv(a.audit[i]), to_csv(b.audit[i]));
    // bad: 2, 3 and 5 (b = -15), 23 (a^2 - 4b = 69)
    EXPECT_EQ(a.primes_good, a.primes_total - 4);
    EXPECT_EQ(a.audit.size(), a.primes_good);
}

TEST(Scan, AuditLinesAgreeWithOracle) {
    const CurveParams e = curve_from_params(-3, 1, 3);
    ScanOptions opt;
    opt.audit = true;
    const ScanReport r = empirical_density(e, 5000, opt);
    std::uint64_t odd = 0;
    for (const AuditLine& l : r.audit) {
        const oracle::Curve O = oracle_curve(e, l.p);
        ASSERT_EQ(l.N, O.count()) << "p=" << l.p;
        const oracle::Pt alpha =
            std::make_pair(reduce_mod(e.c, l.p), oracle::mulm(reduce_mod(e.c, l.p), reduce_mod(e.k, l.p), l.p));
        ASSERT_EQ(l.odd, O.order(alpha) % 2 == 1) << "p=" << l.p;
        odd += l.odd;
    }
    EXPECT_EQ(odd, r.odd_count);
    EXPECT_EQ(r.ratio(), Rational(BigInt(r.odd_count), BigInt(669)));
}

TEST(Scan, RejectsTinyRange) { EXPECT_THROW(empirical_density(curve_from_params(3, 3, 1), 999), contract_error); }
