#include <gtest/gtest.h>

#include "resonator/catalog.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/verify/dense_oracle.hpp"

namespace {

using namespace resonator;
using Element = OsElement<Rationals>;

const Rationals kQ{};

TEST(OsAlgebra, DimensionsOfSmallExamples) {
    EXPECT_EQ(OsAlgebra(Matroid::uniform(2, 3)).dims(), (std::vector<std::size_t>{1, 3, 2}));
    EXPECT_EQ(OsAlgebra(Matroid::uniform(3, 4)).dims(), (std::vector<std::size_t>{1, 4, 6, 3}));
    // Free matroid: the full exterior algebra.
    EXPECT_EQ(OsAlgebra(Matroid::free_matroid(4)).dims(), (std::vector<std::size_t>{1, 4, 6, 4, 1}));
    // K5: Poincare polynomial (1+t)(1+2t)(1+3t)(1+4t).
    const OsAlgebra k5(Matroid::from_graph(5, catalog::complete_graph_edges(5)));
    EXPECT_EQ(k5.dims(), (std::vector<std::size_t>{1, 10, 35, 50, 24}));
}

TEST(OsAlgebra, HilbertSeriesMatchesCharacteristicPolynomial) {
    for (const auto& m : {catalog::pyramid(), catalog::x_graph(), catalog::delres_g2(), Matroid::uniform(3, 6)}) {
        const OsAlgebra a(m);
        const auto chi = m.characteristic_polynomial();
        const auto h = a.hilbert_series();
        ASSERT_EQ(h.size(), chi.size());
        // chi(t) = sum_p (-1)^p dim A^p t^{r-p}.
        const int r = m.rank();
        for (int p = 0; p <= r; ++p) {
            const long long c = chi[static_cast<std::size_t>(r - p)];
            EXPECT_EQ(h[static_cast<std::size_t>(p)], p % 2 ? -c : c) << m.to_string() << " degree " << p;
        }
    }
}

TEST(OsAlgebra, DimensionsAgreeWithDenseOracle) {
    for (const auto& m : {catalog::fat_triangle(), catalog::pyramid(), catalog::delres_g1(),
                          Matroid::from_graph(3, {{1, 2}, {2, 2}, {2, 3}, {1, 3}}, true)}) {
        const OsAlgebra a(m);
        const verify::DenseOsOracle<Rationals> oracle(m, kQ);
        for (int p = 0; p <= m.size(); ++p) EXPECT_EQ(a.dim(p), oracle.dim(p)) << m.to_string() << " degree " << p;
    }
}

TEST(OsAlgebra, LoopKillsTheAlgebra) {
    const OsAlgebra a(Matroid::from_graph(2, {{1, 2}, {1, 1}}, true));
    EXPECT_TRUE(a.is_zero());
}

TEST(OsAlgebra, SquaresVanishAndProductsAnticommute) {
    const OsAlgebra a(catalog::pyramid());
    for (int i = 1; i <= 8; ++i) {
        const auto ei = Element::monomial(a, kQ, {i});
        EXPECT_TRUE((ei * ei).is_zero());
        for (int j = i + 1; j <= 8; ++j) {
            const auto ej = Element::monomial(a, kQ, {j});
            EXPECT_EQ(ei * ej, -(ej * ei));
        }
    }
}

TEST(OsAlgebra, CircuitRelationHolds) {
    // In U_{2,3}: e2e3 - e1e3 + e1e2 = 0.
    const OsAlgebra a(Matroid::uniform(2, 3));
    const auto rel = Element::monomial(a, kQ, {2, 3}) - Element::monomial(a, kQ, {1, 3}) + Element::monomial(a, kQ, {1, 2});
    EXPECT_TRUE(rel.is_zero());
    EXPECT_FALSE(Element::monomial(a, kQ, {1, 2}).is_zero());
    EXPECT_TRUE(Element::monomial(a, kQ, {1, 2, 3}).is_zero());
}

TEST(OsAlgebra, BoundarySquaresToZero) {
    const OsAlgebra a(catalog::delres_g2());
    for (int p = 1; p <= a.top_degree(); ++p)
        for (Mask s : a.basis(p)) {
            std::vector<int> seq;
            for (int e : elements(s)) seq.push_back(e);
            EXPECT_TRUE(Element::monomial(a, kQ, seq).boundary().boundary().is_zero());
        }
}

TEST(OsAlgebra, ProjectiveDimensionsSplit) {
    const OsAlgebra a(Matroid::uniform(3, 5));
    const auto proj = projective_basis(a, kQ);
    // dim A^p = dim Abar^p + dim Abar^{p-1}, Abar^0 = 1.
    EXPECT_EQ(proj.dims(), (std::vector<std::size_t>{1, 4, 6}));
    for (int p = 0; p <= a.top_degree(); ++p) EXPECT_EQ(a.dim(p), proj.dim(p) + proj.dim(p - 1));
}

TEST(OsAlgebra, InducedMapRequiresCompleteness) {
    const auto u23 = Matroid::uniform(2, 3);
    const OsAlgebra a(u23), b(Matroid::uniform(2, 2));
    const auto incomplete = WeakMap::from_values(u23, Matroid::uniform(2, 2), {1, 2, 0});
    EXPECT_THROW(induced_map(incomplete, a, b), IncompleteMap);

    const auto fat = catalog::fat_triangle();
    const OsAlgebra source(fat), target(u23);
    const auto collapse = WeakMap::from_values(fat, u23, {1, 1, 2, 2, 3, 3});
    const auto maps = induced_map(collapse, source, target);
    ASSERT_EQ(maps.size(), 3u);
    EXPECT_EQ(maps[1].rows(), source.dim(1));
    EXPECT_EQ(maps[1].cols(), target.dim(1));
}

}  // namespace
