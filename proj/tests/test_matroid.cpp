#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "resonator/catalog.hpp"
#include "resonator/matroid.hpp"
#include "resonator/weak_map.hpp"

namespace {

using namespace resonator;

// Graphic rank by union-find: |V| minus the number of components spanned.
int graph_rank(int vertices, const std::vector<std::pair<int, int>>& edges, Mask s) {
    std::vector<int> parent(static_cast<std::size_t>(vertices + 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int merged = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!(s & bit(static_cast<int>(i) + 1))) continue;
        const int a = find(edges[i].first), b = find(edges[i].second);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            ++merged;
        }
    }
    return merged;
}

// Crapo's formula, from ranks alone.
long long crapo_beta(const Matroid& m) {
    long long sum = 0;
    for (Mask s = 0; s <= full_mask(m.size()); ++s) sum += (popcount(s) % 2 ? -1 : 1) * m.rank(s);
    return (m.rank() % 2 ? -1 : 1) * sum;
}

std::vector<Matroid> samples() {
    return {Matroid::uniform(2, 3),
            Matroid::uniform(3, 5),
            Matroid::from_graph(4, catalog::complete_graph_edges(4)),
            catalog::fat_triangle(),
            catalog::x_graph(),
            catalog::pyramid(),
            catalog::delres_g1(),
            Matroid::direct_sum(Matroid::uniform(2, 3), Matroid::uniform(1, 2))};
}

TEST(Matroid, GraphRanksMatchUnionFind) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int v = 3 + static_cast<int>(rng() % 4);
        std::vector<std::pair<int, int>> edges;
        const int e = 3 + static_cast<int>(rng() % 7);
        for (int i = 0; i < e; ++i) {
            int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(v));
            int b = 1 + static_cast<int>(rng() % static_cast<unsigned>(v));
            if (a == b) b = a % v + 1;
            edges.emplace_back(a, b);
        }
        const auto m = Matroid::from_graph(v, edges);
        for (Mask s = 0; s <= full_mask(e); ++s) ASSERT_EQ(m.rank(s), graph_rank(v, edges, s)) << m.to_string();
    }
}

TEST(Matroid, FromCircuitsRejectsNonMatroids) {
    // Eliminating 1 from {1,2,3} and {1,2,4} needs a circuit inside {2,3,4}.
    EXPECT_THROW(Matroid::from_circuits(4, {{1, 2, 3}, {1, 2, 4}}), AxiomViolation);
    EXPECT_NO_THROW(Matroid::from_circuits(4, {{1, 2, 3}, {1, 2, 4}, {3, 4}}));
    EXPECT_NO_THROW(Matroid::from_circuits(3, {{1, 2, 3}}));
}

TEST(Matroid, UniformRanks) {
    const auto m = Matroid::uniform(3, 6);
    for (Mask s = 0; s <= full_mask(6); ++s) EXPECT_EQ(m.rank(s), std::min(popcount(s), 3));
    EXPECT_EQ(m.circuits().size(), 15u);
}

TEST(Matroid, BetaMatchesCrapo) {
    for (const auto& m : samples()) EXPECT_EQ(m.beta(), crapo_beta(m)) << m.to_string();
    EXPECT_EQ(Matroid::uniform(2, 3).beta(), 1);
    EXPECT_EQ(Matroid::uniform(3, 5).beta(), 3);
    EXPECT_EQ(Matroid::from_graph(4, catalog::complete_graph_edges(4)).beta(), 2);
}

TEST(Matroid, DualityInvariants) {
    for (const auto& m : samples()) {
        const auto d = m.dual();
        EXPECT_EQ(d.dual(), m);
        EXPECT_EQ(m.rank() + d.rank(), m.size());
        for (Mask s = 0; s <= full_mask(m.size()); ++s)
            ASSERT_EQ(d.rank(s), popcount(s) + m.rank(full_mask(m.size()) & ~s) - m.rank());
    }
}

TEST(Matroid, MinorsCommuteAndDualize) {
    for (const auto& m : samples()) {
        if (m.size() < 3) continue;
        EXPECT_EQ(m.delete_element(1).contract_element(1), m.contract_element(2).delete_element(1))
            << m.to_string();
        EXPECT_EQ(m.delete_element(2).dual(), m.dual().contract_element(2));
        EXPECT_EQ(m.contract_element(3).dual(), m.dual().delete_element(3));
    }
}

TEST(Matroid, SimplificationOfFatTriangle) {
    const auto s = catalog::fat_triangle().simplify();
    EXPECT_EQ(s.simple, Matroid::uniform(2, 3));
    EXPECT_EQ(s.classes.size(), 3u);
    EXPECT_EQ(s.map[1], s.map[2]);
    EXPECT_NE(s.map[2], s.map[3]);
}

TEST(Matroid, LoopsAndConnectivity) {
    const auto m = Matroid::from_graph(3, {{1, 2}, {2, 2}, {2, 3}}, true);
    EXPECT_TRUE(m.is_loop(2));
    EXPECT_EQ(m.loops(), bit(2));
    EXPECT_EQ(m.beta(), 0);
    EXPECT_TRUE(Matroid::uniform(2, 4).is_connected());
    EXPECT_FALSE(Matroid::direct_sum(Matroid::uniform(1, 1), Matroid::uniform(1, 1)).is_connected());
}

TEST(Matroid, IrreducibleFlatsOfRankTwo) {
    // K4: four triangles are the irreducible rank-2 flats.
    const auto m = Matroid::from_graph(4, catalog::complete_graph_edges(4));
    const auto flats = m.irreducible_flats_of_rank(2);
    EXPECT_EQ(flats.size(), 4u);
    for (const auto& f : flats) EXPECT_EQ(popcount(f.elements), 3);
}

TEST(Matroid, ParallelConnectionSizesAndRank) {
    const auto a = Matroid::uniform(2, 3), b = Matroid::uniform(2, 4);
    const auto pc = a.parallel_connection(b, 1, 1);
    EXPECT_EQ(pc.size(), 3 + 4 - 1);
    EXPECT_EQ(pc.rank(), a.rank() + b.rank() - 1);
}

TEST(WeakMap, PyramidToDual) {
    const auto pyramid = catalog::pyramid();
    const auto sigma = catalog::pyramid_duality_permutation();
    EXPECT_EQ(pyramid.dual().relabel(sigma), pyramid);
}

TEST(WeakMap, IdentityAndComposition) {
    const auto m = catalog::fat_triangle();
    const auto id = WeakMap::identity(m);
    EXPECT_TRUE(id.is_complete());
    EXPECT_TRUE(id.is_nondegenerate());
    const auto f = WeakMap::from_values(m, Matroid::uniform(2, 3), {1, 1, 2, 2, 3, 3});
    const auto g = compose_weak(id, f);
    EXPECT_EQ(g.table(), f.table());
    EXPECT_TRUE(satisfies_epimorphism_condition(f));
}

TEST(WeakMap, RejectsRankIncrease) {
    // The dependent pair maps onto an independent pair.
    EXPECT_THROW(WeakMap::from_values(Matroid::uniform(1, 2), Matroid::uniform(2, 2), {1, 2}), WeakMapError);
}

TEST(WeakMap, DegenerateValueMakesIncompleteMap) {
    const auto m = Matroid::uniform(2, 3);
    const auto f = WeakMap::from_values(m, Matroid::uniform(2, 2), {1, 2, 0});
    EXPECT_FALSE(f.is_nondegenerate());
    EXPECT_FALSE(f.is_complete());
}

}  // namespace
