#include <gtest/gtest.h>

#include <random>

#include "resonator/bound.hpp"
#include "resonator/catalog.hpp"
#include "resonator/multinet.hpp"

namespace {

using namespace resonator;

const Rationals kQ{};

// Every component of `inner` lies in some component of `outer`.
bool nested(const SubspaceArrangement<Rationals>& inner, const SubspaceArrangement<Rationals>& outer) {
    for (const auto& s : inner.components) {
        bool found = false;
        for (const auto& t : outer.components) found = found || t.contains(s);
        if (!found) return false;
    }
    return true;
}

TEST(Bound, ComponentsArePairwiseIncomparable) {
    const auto b = bound(kQ, catalog::x_graph(), 1, false);
    ASSERT_FALSE(b.components.empty());
    EXPECT_FALSE(b.truncated);
    EXPECT_EQ(b.covers.size(), b.components.size());
    for (std::size_t i = 0; i < b.components.size(); ++i)
        for (std::size_t j = 0; j < b.components.size(); ++j)
            if (i != j) {
                EXPECT_FALSE(b.components[j].contains(b.components[i]));
            }
}

TEST(Bound, GrowsWithDegreeAndContainsEssential) {
    for (const auto& m : {catalog::pyramid(), catalog::x_graph(), catalog::delres_g1()}) {
        for (int p = 0; p + 1 <= m.rank(); ++p) {
            const auto lower = bound(kQ, m, p, false);
            EXPECT_TRUE(nested(lower, bound(kQ, m, p + 1, false))) << m.to_string() << " p=" << p;
            EXPECT_TRUE(nested(bound(kQ, m, p, true), lower)) << m.to_string() << " p=" << p;
        }
    }
}

TEST(Bound, TopDegreeIsTheSumZeroHyperplane) {
    for (const auto& m : {catalog::pyramid(), Matroid::uniform(3, 5), catalog::delres_g2()}) {
        const auto b = bound(kQ, m, m.rank(), false);
        ASSERT_EQ(b.components.size(), 1u) << m.to_string();
        EXPECT_EQ(b.components.front(), Subspace<Rationals>::sum_zero(kQ, static_cast<std::size_t>(m.size())));
    }
}

TEST(Bound, CoverEnumerationHonoursTheLimit) {
    const auto m = Matroid::from_graph(5, catalog::complete_graph_edges(5));
    const auto b = bound(kQ, m, 2, false, 3);
    EXPECT_TRUE(b.truncated);
    EXPECT_LE(b.covers_examined, 3u);
}

TEST(Bound, ResonantPointsSatisfyTheFlatCondition) {
    const auto m = catalog::pyramid();
    const OsAlgebra a(m);
    const ResonanceEngine<Rationals> engine(a, kQ);
    std::mt19937_64 rng(5);
    for (int p = 1; p < m.rank() - 1; ++p) {
        const auto cmp = compare_bound(engine, p, false);
        for (std::size_t i = 0; i < cmp.verdicts.size(); ++i) {
            if (cmp.verdicts[i].verdict != Verdict::contained) continue;
            const auto v = cmp.arrangement.components[i].sample(rng, 50);
            ASSERT_GE(engine.cohomology_dim(v, p), 1u);
            EXPECT_TRUE(sv_bound_membership(kQ, m, v, p));
        }
    }
}

TEST(Multinet, TriangleIsANet) {
    const auto m = Matroid::uniform(2, 3);
    const auto verdict = verify_multinet(m, Partition::singletons(3), {full_mask(3)});
    EXPECT_TRUE(verdict.valid());
    EXPECT_EQ(verdict.k, 3);
    EXPECT_EQ(verdict.d, 1);
}

TEST(Multinet, UnequalBlocksFail) {
    const auto m = Matroid::uniform(2, 4);
    const auto verdict = verify_multinet(m, Partition::from_lists(4, {{1}, {2, 3}, {4}}), {full_mask(4)});
    EXPECT_FALSE(verdict.valid());
}

TEST(Multinet, B3Arrangement) {
    const auto m = catalog::b3_doubled();
    const auto blocks = Partition::from_lists(m.size(), catalog::b3_multinet_blocks());
    std::vector<Mask> flats;
    for (const auto& f : m.irreducible_flats_of_rank(2)) flats.push_back(f.elements);
    const auto verdict = verify_multinet(m, blocks, flats);
    EXPECT_TRUE(verdict.valid());
    EXPECT_EQ(verdict.k, 3);
    EXPECT_EQ(verdict.d, 4);
}

TEST(Multinet, SectionNeedsInvertibleBlockSizes) {
    const auto m = catalog::fat_triangle();
    const OsAlgebra a(m);
    const auto blocks = Partition::from_lists(6, {{1, 2}, {3, 4}, {5, 6}});
    EXPECT_THROW(multinet_section(PrimeField(2), a, blocks), HypothesisError);
    const auto section = multinet_section(kQ, a, blocks);
    EXPECT_TRUE(section.respects_relations);
    EXPECT_TRUE(section.split);
}

TEST(Multinet, PartitionMorphismKeepsParallelClassesTogether) {
    const auto m = catalog::fat_triangle();
    EXPECT_THROW(partition_morphism(m, Partition::from_lists(6, {{1, 3}, {2, 4}, {5, 6}})), WeakMapError);
    const auto f = partition_morphism(m, Partition::from_lists(6, {{1, 2}, {3, 4}, {5, 6}}));
    EXPECT_EQ(f.target(), Matroid::uniform(2, 3));
    EXPECT_THROW(partition_morphism(m, Partition::singletons(5)), std::invalid_argument);
}

TEST(Multinet, SearchFindsNothingOnAFreeMatroid) {
    EXPECT_TRUE(search_multinets(Matroid::free_matroid(4)).empty());
    EXPECT_EQ(search_multinets(Matroid::uniform(2, 3)).size(), 1u);
}

TEST(Singular, RankOfSubspaces) {
    const OsAlgebra a(Matroid::uniform(2, 3));
    const auto w = Subspace<Rationals>::sum_zero(kQ, 3);
    const auto report = singular_rank(kQ, a, w);
    EXPECT_EQ(report.dim, 2u);
    EXPECT_EQ(report.rank, 1u);
    EXPECT_TRUE(report.is_singular);

    const OsAlgebra free(Matroid::free_matroid(3));
    const auto full = singular_rank(kQ, free, Subspace<Rationals>::whole(kQ, 3));
    EXPECT_EQ(full.rank, 3u);
    EXPECT_FALSE(full.is_singular);
}

TEST(Singular, PushForwardSumsParallelClasses) {
    const auto m = catalog::fat_triangle();
    const auto s = m.simplify();
    using V = std::vector<mpq_class>;
    const auto w = Subspace<Rationals>::span(kQ, 6, {V{1, 0, -1, 0, 0, 0}, V{0, 1, 0, 0, 0, -1}});
    const auto pushed = push_to_simplification(w, s);
    EXPECT_EQ(pushed.ambient(), 3u);
    EXPECT_EQ(pushed, Subspace<Rationals>::sum_zero(kQ, 3));
}

}  // namespace
