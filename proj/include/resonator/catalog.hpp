#pragma once

// Named matroids and data used by the regression corpus.  Edge and column
// orders fix the element labels.

#include <utility>
#include <vector>

#include "resonator/field.hpp"
#include "resonator/matroid.hpp"

namespace resonator::catalog {

using Edges = std::vector<std::pair<int, int>>;

/// Triangle with every edge doubled: edges 1,2 | 3,4 | 5,6.
inline Edges fat_triangle_edges() { return {{1, 2}, {1, 2}, {2, 3}, {2, 3}, {3, 1}, {3, 1}}; }
inline Matroid fat_triangle() { return Matroid::from_graph(3, fat_triangle_edges()); }

/// Square a-b-c-d with a centre e joined to a and c.  Its graphic matroid is
/// the dual of the fat triangle.
inline Edges x_graph_edges() { return {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 3}}; }
inline Matroid x_graph() { return Matroid::from_graph(5, x_graph_edges()); }

/// Square a-b-c-d with a centre e joined to every corner (the wheel W_4).
inline Edges pyramid_edges() { return {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}; }
inline Matroid pyramid() { return Matroid::from_graph(5, pyramid_edges()); }

/// Values f(1..8) of the non-degenerate weak map pyramid -> U_{3,4}.
inline std::vector<int> pyramid_weak_map_values() { return {1, 2, 3, 4, 4, 1, 2, 3}; }

/// Self-duality permutation of the pyramid, one-line notation.
inline std::vector<int> pyramid_duality_permutation() { return {5, 6, 7, 8, 4, 1, 2, 3}; }

/// Five-vertex graphs of the deletion-contraction chain G1 ⊂ G2 ⊂ K5.
inline Edges delres_g1_edges() { return {{3, 2}, {2, 4}, {5, 4}, {3, 5}, {3, 1}, {1, 4}, {2, 5}}; }
inline Edges delres_g2_edges() {
    auto e = delres_g1_edges();
    e.push_back({5, 1});
    e.push_back({1, 2});
    return e;
}
inline Edges delres_k5_edges() {
    auto e = delres_g2_edges();
    e.push_back({3, 4});
    return e;
}
inline Matroid delres_g1() { return Matroid::from_graph(5, delres_g1_edges()); }
inline Matroid delres_g2() { return Matroid::from_graph(5, delres_g2_edges()); }
inline Matroid delres_k5() { return Matroid::from_graph(5, delres_k5_edges()); }

/// Complete graph K_n with edges in lexicographic order.
inline Edges complete_graph_edges(int n) {
    Edges e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
    return e;
}

/// B3 root system with the coordinate hyperplanes doubled:
/// x, x, y, y, z, z, x-y, x+y, x-z, x+z, y-z, y+z.
inline std::vector<std::vector<long long>> b3_doubled_columns() {
    return {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {0, 0, 1},  {0, 0, 1},
            {1, -1, 0}, {1, 1, 0}, {1, 0, -1}, {1, 0, 1}, {0, 1, -1}, {0, 1, 1}};
}

inline Matroid b3_doubled() {
    Rationals q;
    std::vector<std::vector<mpq_class>> cols;
    for (const auto& c : b3_doubled_columns()) {
        std::vector<mpq_class> col;
        for (auto x : c) col.push_back(q.from_int(x));
        cols.push_back(col);
    }
    return Matroid::from_columns(q, cols);
}

/// The (3,4)-multinet on b3_doubled().
inline std::vector<std::vector<int>> b3_multinet_blocks() { return {{1, 2, 11, 12}, {3, 4, 9, 10}, {5, 6, 7, 8}}; }

}  // namespace resonator::catalog
