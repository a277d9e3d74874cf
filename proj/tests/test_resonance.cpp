#include <gtest/gtest.h>

#include <random>

#include "resonator/bound.hpp"
#include "resonator/catalog.hpp"
#include "resonator/identities.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"
#include "resonator/verify/dense_oracle.hpp"

namespace {

using namespace resonator;
using QVector = std::vector<mpq_class>;

const Rationals kQ{};

QVector qv(std::initializer_list<long> xs) {
    QVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

TEST(Subspace, PartitionSubspacesAreComplementary) {
    for (const auto& blocks : std::vector<std::vector<std::vector<int>>>{
             {{1, 2}, {3}, {4, 5, 6}}, {{1}, {2}, {3}}, {{1, 2, 3, 4}}, {{1, 4}, {2, 5}, {3, 6}}}) {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        const auto pi = Partition::from_lists(n, blocks);
        const auto p = p_subspace(kQ, pi);
        const auto q = q_subspace(kQ, pi);
        EXPECT_TRUE(complementary(p, q));
        EXPECT_EQ(p.dim() + q.dim(), static_cast<std::size_t>(n));
        EXPECT_EQ(p.sum(q), (Subspace<Rationals>::whole(kQ, static_cast<std::size_t>(n))));
        EXPECT_EQ(p.intersect(q).dim(), 0u);
    }
}

TEST(Subspace, EquationsCutOutTheSpan) {
    const auto w = Subspace<Rationals>::span(kQ, 4, {qv({1, -1, 0, 0}), qv({0, 1, 1, -2})});
    const auto again = Subspace<Rationals>::solutions(kQ, 4, w.equations());
    EXPECT_EQ(w, again);
    EXPECT_TRUE(w.contains(qv({1, 0, 1, -2})));
    EXPECT_FALSE(w.contains(qv({1, 0, 0, 0})));
}

TEST(Resonance, ProfilesOfTheTriangle) {
    const OsAlgebra a(Matroid::uniform(2, 3));
    const ResonanceEngine<Rationals> engine(a, kQ);
    EXPECT_EQ(engine.cohomology_dims(qv({1, 1, -2})), (std::vector<std::size_t>{0, 1, 1}));
    EXPECT_EQ(engine.cohomology_dims(qv({0, 0, 0})), (std::vector<std::size_t>{1, 3, 2}));
    EXPECT_EQ(engine.cohomology_dims(qv({1, 0, 0})), (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_EQ(engine.cohomology_dims(qv({1, 1, -2}), true), (std::vector<std::size_t>{0, 1, 0}));
}

TEST(Resonance, EulerCharacteristicIsConstant) {
    for (const auto& m : {catalog::pyramid(), catalog::delres_g1(), Matroid::uniform(3, 5)}) {
        const OsAlgebra a(m);
        const ResonanceEngine<Rationals> engine(a, kQ);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 10; ++t) {
            QVector v;
            for (int e = 0; e < m.size(); ++e) v.emplace_back(static_cast<long>(rng() % 5) - 2);
            long long chi = 0, chi_a = 0;
            const auto h = engine.cohomology_dims(v);
            for (std::size_t p = 0; p < h.size(); ++p) chi += (p % 2 ? -1 : 1) * static_cast<long long>(h[p]);
            for (int p = 0; p <= a.top_degree(); ++p) chi_a += (p % 2 ? -1 : 1) * static_cast<long long>(a.dim(p));
            EXPECT_EQ(chi, chi_a);
        }
    }
}

template <class F>
void compare_with_oracle(const F& field, const Matroid& m, std::uint64_t seed) {
    const OsAlgebra a(m);
    const ResonanceEngine<F> engine(a, field);
    const verify::DenseOsOracle<F> oracle(m, field);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 12; ++t) {
        std::vector<typename F::value_type> v;
        for (int e = 0; e < m.size(); ++e) v.push_back(field.from_int(static_cast<long long>(rng() % 3) - 1));
        // Force the sum to zero half of the time, where resonance lives.
        if (t % 2 == 0) {
            auto s = field.zero();
            for (std::size_t e = 0; e + 1 < v.size(); ++e) s = field.add(s, v[e]);
            v.back() = field.neg(s);
        }
        auto expected = oracle.cohomology(v);
        auto got = engine.cohomology_dims(v);
        expected.resize(std::max(expected.size(), got.size()), 0);
        got.resize(expected.size(), 0);
        EXPECT_EQ(got, expected) << m.to_string() << " over " << field.name();
    }
}

TEST(Resonance, AgreesWithDenseOracle) {
    for (const auto& m : {catalog::fat_triangle(), catalog::pyramid(), Matroid::uniform(3, 5)}) {
        compare_with_oracle(kQ, m, 11);
        compare_with_oracle(PrimeField(2), m, 12);
        compare_with_oracle(PrimeField(3), m, 13);
    }
}

TEST(Resonance, CertifiedRanksMatchBareiss) {
    // Resonant and generic points, affine and projective complexes.
    for (const auto& m : {catalog::pyramid(), catalog::x_graph().dual(), catalog::fat_triangle()}) {
        const OsAlgebra a(m);
        const ResonanceEngine<Rationals> engine(a, kQ);
        std::mt19937_64 rng(21);
        const auto bound_space = bound(kQ, m, 1, false).components.front();
        for (int t = 0; t < 16; ++t) {
            QVector v = t % 2 ? bound_space.sample(rng, 6) : Subspace<Rationals>::sum_zero(kQ, m.size()).sample(rng, 6);
            for (bool projective : {false, true}) {
                const auto dims = engine.cohomology_dims(v, projective);
                for (int p = 0; p <= a.top_degree(); ++p) {
                    const std::size_t direct = engine.complex_dim(p, projective) - engine.direct_rank(v, p, projective) -
                                               engine.direct_rank(v, p - 1, projective);
                    EXPECT_EQ(dims[static_cast<std::size_t>(p)], direct) << m.to_string() << " p=" << p;
                    EXPECT_EQ(engine.cohomology_dim(v, p, projective), direct);
                }
            }
        }
    }
}

TEST(Resonance, ScalingInvariance) {
    const OsAlgebra a(catalog::x_graph());
    const ResonanceEngine<Rationals> engine(a, kQ);
    EXPECT_TRUE(scaling_invariance_check(engine, qv({1, -1, 1, -1, 2, -2}), mpq_class(-7, 3)));
    EXPECT_THROW(scaling_invariance_check(engine, qv({1, -1, 1, -1, 2, -2}), mpq_class(0)), std::invalid_argument);
}

TEST(Resonance, ContainmentModes) {
    const OsAlgebra a(Matroid::uniform(2, 3));
    const ResonanceEngine<Rationals> engine(a, kQ);
    const auto hyperplane = Subspace<Rationals>::sum_zero(kQ, 3);
    const auto whole = Subspace<Rationals>::whole(kQ, 3);

    ContainmentOptions symbolic;
    symbolic.mode = ContainmentMode::symbolic;
    auto r = subspace_in_resonance(engine, hyperplane, 1, 1, symbolic);
    EXPECT_EQ(r.verdict, Verdict::contained);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.generic_dim, 1u);

    r = subspace_in_resonance(engine, whole, 1, 1, symbolic);
    EXPECT_EQ(r.verdict, Verdict::not_contained);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LT(engine.cohomology_dim(*r.witness, 1), 1u);

    ContainmentOptions probabilistic;
    r = subspace_in_resonance(engine, hyperplane, 1, 1, probabilistic);
    EXPECT_EQ(r.verdict, Verdict::contained);
    EXPECT_FALSE(r.exact);
    EXPECT_GT(r.failure_bound, 0.0);
    EXPECT_LT(r.failure_bound, 1e-20);

    r = subspace_in_resonance(engine, whole, 1, 1, probabilistic);
    EXPECT_EQ(r.verdict, Verdict::not_contained);
    EXPECT_TRUE(r.exact);
}

TEST(Resonance, SmallPrimeFieldIsInconclusive) {
    const PrimeField f2(2);
    const OsAlgebra a(Matroid::uniform(2, 3));
    const ResonanceEngine<PrimeField> engine(a, f2);
    const auto r = subspace_in_resonance(engine, Subspace<PrimeField>::sum_zero(f2, 3), 1, 1, ContainmentOptions{});
    EXPECT_EQ(r.verdict, Verdict::inconclusive);

    const PrimeField f101(101);
    const ResonanceEngine<PrimeField> big(a, f101);
    const auto ok = subspace_in_resonance(big, Subspace<PrimeField>::sum_zero(f101, 3), 1, 1, ContainmentOptions{});
    EXPECT_EQ(ok.verdict, Verdict::contained);
    EXPECT_LT(ok.failure_bound, 1.0);
}

TEST(Resonance, ProjectiveModeNeedsSumZero) {
    const OsAlgebra a(Matroid::uniform(2, 3));
    const ResonanceEngine<Rationals> engine(a, kQ);
    ContainmentOptions opt;
    opt.projective = true;
    EXPECT_THROW(subspace_in_resonance(engine, Subspace<Rationals>::whole(kQ, 3), 1, 1, opt), HypothesisError);
}

TEST(Identities, PointwiseChecksHoldOnThePyramid) {
    const OsAlgebra a(catalog::pyramid());
    const ResonanceEngine<Rationals> engine(a, kQ);
    const auto v = qv({1, 1, 1, 1, -1, -1, -1, -1});
    EXPECT_TRUE(propagation_check(engine, v).ok());
    EXPECT_TRUE(euler_check(engine, v).ok());
    EXPECT_TRUE(bottom_degree_check(engine, v).ok());
    for (int p = 0; p <= a.top_degree(); ++p) EXPECT_TRUE(decone_check(engine, v, p).ok()) << p;
}

TEST(Identities, DualityOnTheTorus) {
    const auto m = catalog::x_graph();
    const OsAlgebra a(m), b(m.dual());
    const ResonanceEngine<Rationals> primal(a, kQ), dual(b, kQ);
    const auto v = qv({1, 2, -3, 1, -2, 1});
    for (int p = 0; p <= m.rank(); ++p) EXPECT_TRUE(duality_torus_check(primal, dual, v, p).ok()) << p;
    EXPECT_THROW(duality_torus_check(primal, dual, qv({0, 1, -1, 1, -2, 1}), 1), HypothesisError);
}

TEST(Identities, DeletionContraction) {
    const auto m = catalog::pyramid();
    const OsAlgebra a(m), del(m.delete_element(1)), con(m.contract_element(1));
    const ResonanceEngine<Rationals> whole(a, kQ), deletion(del, kQ), contraction(con, kQ);
    const auto v = qv({0, 1, -1, 1, -1, 1, -1, 0});
    EXPECT_TRUE(minor_inclusion_check(whole, deletion, contraction, 1, v).ok());
    EXPECT_THROW(minor_inclusion_check(whole, deletion, contraction, 2, v), HypothesisError);
}

TEST(Identities, HilbertSeriesOfParallelConnection) {
    EXPECT_TRUE(hilbert_parallel_check(Matroid::uniform(2, 3), Matroid::uniform(3, 5), 1, 2).ok());
    EXPECT_TRUE(hilbert_parallel_check(catalog::pyramid(), catalog::x_graph(), 4, 6).ok());
}

TEST(Identities, PropagationRequiresSumZero) {
    const OsAlgebra a(Matroid::uniform(2, 3));
    const ResonanceEngine<Rationals> engine(a, kQ);
    EXPECT_THROW(propagation_check(engine, qv({1, 0, 0})), HypothesisError);
}

}  // namespace
