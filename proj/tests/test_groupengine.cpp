#include "oddorder/density.hpp"
#include "oddorder/enumerate.hpp"
#include "oddorder/subgroup.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace oddorder;
using namespace oddorder::group;

namespace {

Word random_word(const Level& lv, std::mt19937_64& rng, bool gamma0_only) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(
                                                             (gamma0_only ? lv.gamma0_order() : lv.agl_order()) - 1));
    return lv.decode(pick(rng));
}

// Closure by breadth-first search over a std::set.
std::set<Word> bfs_closure(const std::vector<Word>& gens, const Level& lv) {
    std::set<Word> seen{lv.identity()};
    std::vector<Word> frontier{lv.identity()};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (Word x : frontier)
            for (Word g : gens) {
                const Word y = lv.mul(x, g);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen;
}

}  // namespace

TEST(Subgroup, AmbientOrders) {
    for (int k = 1; k <= 4; ++k) {
        const Subgroup g0 = gamma0_plus(k);
        EXPECT_EQ(g0.order(), std::uint64_t{1} << (6 * k - 3));
        EXPECT_EQ(g0.gl2_image_order(), g0.level().gamma0_gl2_order());
        if (k <= 3) {
            EXPECT_EQ(full_agl(k).order(), 3 * (std::uint64_t{1} << (6 * k - 3)));
        }
    }
}

TEST(Subgroup, ClosureMatchesBreadthFirstSearch) {
    std::mt19937_64 rng(4);
    for (int k = 1; k <= 3; ++k) {
        const Level lv(k);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Word> gens;
            const int n = 1 + trial % 3;
            for (int i = 0; i < n; ++i) gens.push_back(random_word(lv, rng, true));
            const Subgroup h = closure(gens, k);
            const std::set<Word> expect = bfs_closure(gens, lv);
            ASSERT_EQ(h.order(), expect.size());
            for (Word w : expect) ASSERT_TRUE(h.contains(w));
        }
    }
}

TEST(Subgroup, CongruenceKernelOrders) {
    for (int k = 2; k <= 4; ++k)
        for (int j = 1; j < k; ++j) {
            const Subgroup ker = closure(congruence_kernel_generators(k, j), k);
            EXPECT_EQ(ker.order(), std::uint64_t{1} << (6 * (k - j))) << "k=" << k << " j=" << j;
            ker.for_each([&](Word w) { ASSERT_EQ(Level::reduce(w, j), Level(j).identity()); });
        }
}

TEST(Subgroup, ReduceAndLift) {
    const Subgroup g3 = gamma0_plus(3);
    EXPECT_EQ(reduce_subgroup(g3, 2), gamma0_plus(2));
    EXPECT_EQ(lift_subgroup(gamma0_plus(1), 3), g3);
    EXPECT_EQ(core_of(g3).k(), 1);
    std::mt19937_64 rng(2);
    const Level lv(3);
    const Subgroup h = closure({random_word(lv, rng, true), random_word(lv, rng, true)}, 3);
    EXPECT_TRUE(h.is_subgroup_of(lift_subgroup(reduce_subgroup(h, 2), 3)));
}

TEST(Happy, AmbientIsHappy) {
    for (int k = 1; k <= 3; ++k) EXPECT_TRUE(is_happy(gamma0_plus(k)).happy) << "k=" << k;
}

TEST(Happy, FailureReasons) {
    const int k = 3;
    const Subgroup alpha_stab = from_predicate(k, Ambient::gamma0, in_alpha_halving_stabiliser);
    EXPECT_EQ(is_happy(alpha_stab).reason, HappyFailure::alpha_divisible);
    const Subgroup alpha_t_stab = from_predicate(k, Ambient::gamma0, in_alpha_t_halving_stabiliser);
    EXPECT_EQ(is_happy(alpha_t_stab).reason, HappyFailure::alpha_plus_t_divisible);
    const Subgroup small = from_predicate(k, Ambient::gamma0, [](Word w) {
        const Entries p = Level::unpack(w);
        return (p.a & 1) == 1 && (p.b & 1) == 0 && (p.d & 1) == 1;
    });
    EXPECT_EQ(is_happy(small).reason, HappyFailure::image_too_small);
    EXPECT_FALSE(is_happy(full_agl(k)).happy);
}

TEST(Happy, TranslationConjugatesOfStabilisersAreUnhappy) {
    const int k = 3;
    const Level lv(k);
    const Subgroup stab = from_predicate(k, Ambient::gamma0, in_alpha_halving_stabiliser);
    for (std::uint32_t s = 0; s < 4; ++s) {
        const Subgroup h = conjugate(stab, lv.make(1, 0, 0, 1, s & 1, s >> 1));
        EXPECT_EQ(is_happy(h).reason, HappyFailure::alpha_divisible) << "shift " << s;
    }
}

TEST(Frattini, LabelsAreAHomomorphism) {
    std::mt19937_64 rng(6);
    const Subgroup g = gamma0_plus(3);
    const FrattiniQuotient fq(g);
    const Level& lv = g.level();
    for (int i = 0; i < 2000; ++i) {
        const Word x = random_word(lv, rng, true), y = random_word(lv, rng, true);
        ASSERT_EQ(fq.label(lv.mul(x, y)), fq.label(x) ^ fq.label(y));
    }
    fq.frattini().for_each([&](Word w) { ASSERT_EQ(fq.label(w), 0u); });
}

TEST(Frattini, IndexTwoSubgroups) {
    for (int k = 2; k <= 3; ++k) {
        const Subgroup g = gamma0_plus(k);
        const int rank = FrattiniQuotient(g).rank();
        const auto subs = index2_subgroups(g);
        ASSERT_EQ(subs.size(), (std::size_t{1} << rank) - 1);
        for (std::size_t i = 0; i < subs.size(); ++i) {
            EXPECT_EQ(subs[i].order() * 2, g.order());
            EXPECT_TRUE(subs[i].is_subgroup_of(g));
            for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(subs[i] == subs[j]);
        }
    }
}

TEST(Star, ClosedOnIndexTwoSubgroups) {
    const Subgroup g = gamma0_plus(2);
    const auto subs = index2_subgroups(g);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        EXPECT_EQ(star(subs[i], subs[i], g), g);
        for (std::size_t j = 0; j < subs.size(); ++j) {
            if (i == j) continue;
            const Subgroup s = star(subs[i], subs[j], g);
            EXPECT_EQ(s.order() * 2, g.order());
            EXPECT_EQ(s, star(subs[j], subs[i], g));
            EXPECT_EQ(star(s, subs[j], g), subs[i]);
            EXPECT_NE(std::find(subs.begin(), subs.end(), s), subs.end());
        }
    }
}

TEST(Star, RejectsNonIndexTwo) {
    const Subgroup g = gamma0_plus(2);
    const auto subs = index2_subgroups(g);
    const Subgroup quarter = intersect(subs[0], subs[1]);
    EXPECT_THROW(star(quarter, subs[0], g), contract_error);
    EXPECT_THROW(star(subs[0], subs[1], gamma0_plus(3)), contract_error);
}

TEST(Conjugacy, ConjugatesAreRecognised) {
    std::mt19937_64 rng(13);
    const Subgroup g = gamma0_plus(3);
    const auto subs = index2_subgroups(g);
    const Level& lv = g.level();
    for (int trial = 0; trial < 6; ++trial) {
        const Subgroup& h = subs[static_cast<std::size_t>(trial * 7) % subs.size()];
        const Subgroup hc = conjugate(h, random_word(lv, rng, true));
        EXPECT_EQ(conjugacy_key(h), conjugacy_key(hc));
        const auto c = find_conjugator(h, hc);
        ASSERT_TRUE(c.has_value());
        EXPECT_EQ(conjugate(h, *c), hc);
        EXPECT_EQ(density_exact(hc), density_exact(h));
    }
}

TEST(Conjugacy, DifferentDensitiesAreNotConjugate) {
    const Subgroup g = gamma0_plus(3);
    const auto subs = index2_subgroups(g);
    for (std::size_t i = 0; i + 1 < subs.size(); ++i)
        if (density_exact(subs[i]) != density_exact(subs[i + 1])) {
            EXPECT_FALSE(are_conjugate(subs[i], subs[i + 1]));
            return;
        }
    FAIL() << "all index-2 subgroups have the same density";
}

TEST(Descent, LevelThreeLattice) {
    const HappyLattice lat = enumerate_happy_classes(3);
    ASSERT_EQ(lat.classes.size(), 63u);
    const std::map<std::uint64_t, std::size_t> expect{{1, 1}, {2, 16}, {4, 30}, {8, 16}};
    EXPECT_EQ(lat.index_histogram(), expect);
    EXPECT_EQ(lat.classes[0].children.size(), 16u);
    for (std::size_t i = 0; i < lat.classes.size(); ++i) {
        const HappyClass& c = lat.classes[i];
        EXPECT_TRUE(is_happy(c.rep).happy) << "class " << i;
        for (std::size_t kid : c.children) EXPECT_EQ(lat.classes[kid].rep.order() * 2, c.rep.order());
        for (std::size_t j = 0; j < i; ++j) {
            const HappyClass& d = lat.classes[j];
            if (d.core.k() == c.core.k() && d.key == c.key) {
                EXPECT_FALSE(are_conjugate(d.core, c.core));
            }
        }
    }
}

TEST(Descent, LevelContracts) {
    EXPECT_THROW(enumerate_happy_classes(0), contract_error);
    EXPECT_THROW(enumerate_happy_classes(5), contract_error);
    EXPECT_THROW(Level(5), contract_error);
}
