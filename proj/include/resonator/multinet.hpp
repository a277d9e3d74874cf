#pragma once

// Multinets, the maps p_L : M -> U_{2,k} and i_L : A(U_{2,k}) -> A(M),
// singular subspaces and their factorization through truncated exterior
// algebras Ā(U_{q+1,k+1}).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resonator/bits.hpp"
#include "resonator/field.hpp"
#include "resonator/linalg.hpp"
#include "resonator/matroid.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"
#include "resonator/weak_map.hpp"

namespace resonator {

class MultinetError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NotSingularEnough : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Multinet {
    Partition blocks;
    std::vector<Mask> flats;
    int k = 0;
    int d = 0;
};

struct AxiomCheck {
    bool holds = false;
    std::string detail;
};

struct MultinetVerdict {
    std::array<AxiomCheck, 4> axioms;
    int k = 0;
    int d = 0;

    bool valid() const {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCheck& a) { return a.holds; });
    }
};

/// Checks the four multinet axioms for the partition L and flat set X.
/// X must consist of irreducible rank-2 flats.  Chains in the fourth axiom
/// stay inside the block.
inline MultinetVerdict verify_multinet(const Matroid& m, const Partition& l, const std::vector<Mask>& x) {
    if (l.ground_size() != m.size()) throw MultinetError("partition is not on the ground set of the matroid");
    for (Mask f : x) {
        if (m.closure(f) != f) throw MultinetError(to_string(f) + " is not a flat");
        if (m.rank(f) != 2) throw MultinetError(to_string(f) + " does not have rank 2");
        if (!m.is_connected(f)) throw MultinetError(to_string(f) + " is not irreducible");
    }
    auto in_x = [&](Mask f) { return std::find(x.begin(), x.end(), f) != x.end(); };
    auto span = [&](int i, int j) { return m.closure(bit(i) | bit(j)); };

    MultinetVerdict out;
    out.k = static_cast<int>(l.size());
    out.d = l.size() ? popcount(l[0]) : 0;

    auto& a1 = out.axioms[0];
    a1.holds = l.size() >= 3;
    if (!a1.holds) a1.detail = "fewer than three blocks";
    for (Mask b : l.blocks())
        if (popcount(b) != out.d) {
            a1.holds = false;
            a1.detail = "block sizes differ";
        }

    auto& a2 = out.axioms[1];
    a2.holds = true;
    for (int i = 1; i <= m.size() && a2.holds; ++i)
        for (int j = i + 1; j <= m.size() && a2.holds; ++j)
            if (l.block_of(i) != l.block_of(j) && !in_x(span(i, j))) {
                a2.holds = false;
                a2.detail = "elements " + std::to_string(i) + "," + std::to_string(j) + " span " +
                            to_string(span(i, j)) + " outside X";
            }

    auto& a3 = out.axioms[2];
    a3.holds = true;
    for (Mask f : x) {
        const int first = popcount(l[0] & f);
        for (Mask b : l.blocks())
            if (popcount(b & f) != first) {
                a3.holds = false;
                a3.detail = "flat " + to_string(f) + " meets blocks unevenly";
            }
    }

    auto& a4 = out.axioms[3];
    a4.holds = true;
    for (Mask b : l.blocks()) {
        const auto members = elements(b);
        Mask reached = bit(members.front());
        for (bool grew = true; grew;) {
            grew = false;
            for (int i : members) {
                if (!(reached & bit(i))) continue;
                for (int j : members)
                    if (!(reached & bit(j)) && !in_x(span(i, j))) {
                        reached |= bit(j);
                        grew = true;
                    }
            }
        }
        if (reached != b) {
            a4.holds = false;
            a4.detail = "block " + to_string(b) + " is not linked by pairs spanning flats outside X";
        }
    }
    return out;
}

/// The essential component Q_L ∩ V̄.
template <class F>
Subspace<F> multinet_component(const F& field, const Partition& l) {
    const auto n = static_cast<std::size_t>(l.ground_size());
    return q_subspace(field, l).intersect(Subspace<F>::sum_zero(field, n));
}

/// Image of W under k^n -> k^{n_s}, v ↦ (Σ_{i ∈ class c} v_i)_c, which
/// identifies degree one of A(M) with that of its simplification.  Loops are
/// dropped.
template <class F>
Subspace<F> push_to_simplification(const Subspace<F>& w, const Simplification& s) {
    const F& field = w.field();
    const auto target = static_cast<std::size_t>(s.simple.size());
    std::vector<std::vector<typename F::value_type>> rows;
    for (std::size_t r = 0; r < w.dim(); ++r) {
        std::vector<typename F::value_type> image(target, field.zero());
        const auto v = w.basis_vector(r);
        for (std::size_t e = 1; e < s.map.size(); ++e)
            if (s.map[e] != 0) {
                auto& slot = image[static_cast<std::size_t>(s.map[e] - 1)];
                slot = field.add(slot, v[e - 1]);
            }
        rows.push_back(std::move(image));
    }
    return Subspace<F>::span(field, target, rows);
}

/// p_π : M -> U_{2,k}, sending each element to the index of its block.
/// Requires parallel elements to share a block.
inline WeakMap partition_morphism(const Matroid& m, const Partition& pi) {
    if (pi.ground_size() != m.size()) throw std::invalid_argument("partition is not on the ground set");
    for (int i = 1; i <= m.size(); ++i)
        for (int j = i + 1; j <= m.size(); ++j)
            if (m.are_parallel(i, j) && pi.block_of(i) != pi.block_of(j))
                throw WeakMapError("parallel elements " + std::to_string(i) + " and " + std::to_string(j) +
                                   " lie in different blocks");
    std::vector<int> values;
    for (int i = 1; i <= m.size(); ++i) values.push_back(static_cast<int>(pi.block_of(i)) + 1);
    return WeakMap::from_values(m, Matroid::uniform(2, static_cast<int>(pi.size())), values);
}

template <class F>
struct MultinetSection {
    /// i_L in each degree, rows indexed by the NBC basis of A(U_{2,k}).
    std::vector<Matrix<typename F::value_type>> maps;
    bool respects_relations = false;
    bool split = false;
};

/// i_L(e_s) = (1/|L_s|) Σ_{i ∈ L_s} e_i, extended multiplicatively, with the
/// checks that it kills the relations of A(U_{2,k}) and that A(p_L) ∘ i_L
/// is the identity.
template <class F>
MultinetSection<F> multinet_section(const F& field, const OsAlgebra& algebra, const Partition& l) {
    using Element = OsElement<F>;
    const Matroid& m = algebra.matroid();
    for (Mask b : l.blocks())
        if (divides_characteristic(field, popcount(b)))
            throw HypothesisError("characteristic divides the block size " + std::to_string(popcount(b)));
    const int k = static_cast<int>(l.size());
    const OsAlgebra target(Matroid::uniform(2, k));

    std::vector<Element> gens;
    for (Mask b : l.blocks()) {
        std::vector<typename F::value_type> v(static_cast<std::size_t>(m.size()), field.zero());
        const auto w = field.inv(field.from_int(popcount(b)));
        for (int e : elements(b)) v[static_cast<std::size_t>(e - 1)] = w;
        gens.push_back(Element::from_vector(algebra, field, v));
    }
    auto image = [&](Mask s) {
        Element out = Element::one(algebra, field);
        for (int e : elements(s)) out = out * gens[static_cast<std::size_t>(e - 1)];
        return out;
    };

    MultinetSection<F> out;
    for (int p = 0; p <= target.top_degree(); ++p) {
        Matrix<typename F::value_type> mp(0, algebra.dim(p));
        for (Mask s : target.basis(p)) mp.append_row(image(s).coordinates());
        out.maps.push_back(std::move(mp));
    }

    // ∂(e_abc) ↦ 0 for every triple of generators.
    out.respects_relations = true;
    for_each_subset_of_size(full_mask(k), 3, [&](Mask t) {
        const auto idx = elements(t);
        Element rel = image(bit(idx[1]) | bit(idx[2])) - image(bit(idx[0]) | bit(idx[2])) +
                      image(bit(idx[0]) | bit(idx[1]));
        if (!rel.is_zero()) out.respects_relations = false;
    });

    const auto projection = induced_map(partition_morphism(m, l), algebra, target);
    out.split = true;
    for (int p = 0; p <= target.top_degree(); ++p) {
        const auto composite = multiply(field, out.maps[static_cast<std::size_t>(p)],
                                        to_field(field, projection[static_cast<std::size_t>(p)]));
        if (!matrices_equal(field, composite, identity(field, target.dim(p)))) out.split = false;
    }
    return out;
}

// ------------------------------------------------------------- singular subspaces

template <class F>
struct SingularReport {
    std::size_t dim = 0;
    std::size_t rank = 0;
    bool is_singular = false;
    /// Rank of Λ^q(W) -> A^q for q = 1..dim.
    std::vector<std::size_t> image_ranks;
};

namespace detail {

/// Products w_J for all q-subsets J of the basis rows, in A^q coordinates.
template <class F>
Matrix<typename F::value_type> wedge_images(const F& field, const OsAlgebra& algebra,
                                            const std::vector<OsElement<F>>& gens, int q) {
    Matrix<typename F::value_type> out(0, algebra.dim(q));
    if (q > static_cast<int>(gens.size())) return out;
    for_each_subset_of_size(full_mask(static_cast<int>(gens.size())), q, [&](Mask j) {
        OsElement<F> prod = OsElement<F>::one(algebra, field);
        for (int i : elements(j)) prod = prod * gens[static_cast<std::size_t>(i - 1)];
        out.append_row(prod.coordinates());
    });
    return out;
}

template <class F>
std::vector<OsElement<F>> degree_one_elements(const F& field, const OsAlgebra& algebra,
                                              const Matrix<typename F::value_type>& rows) {
    std::vector<OsElement<F>> out;
    for (std::size_t r = 0; r < rows.rows(); ++r) out.push_back(OsElement<F>::from_vector(algebra, field, rows.row(r)));
    return out;
}

}  // namespace detail

template <class F>
SingularReport<F> singular_rank(const F& field, const OsAlgebra& algebra, const Subspace<F>& w) {
    SingularReport<F> out;
    out.dim = w.dim();
    const auto gens = detail::degree_one_elements(field, algebra, w.basis());
    for (int q = 1; q <= static_cast<int>(w.dim()); ++q) {
        const auto r = rank(field, detail::wedge_images(field, algebra, gens, q));
        out.image_ranks.push_back(r);
        if (r > 0) out.rank = static_cast<std::size_t>(q);
    }
    out.is_singular = out.rank < out.dim;
    return out;
}

template <class F>
struct TruncatedFactorization {
    int q = 0;
    int k = 0;
    /// The source U_{q+1,k+1}.
    Matroid source;
    /// Per degree p <= q: rows are u_J = Π (e_j - e_{k+1}) in NBC coordinates
    /// of A^p(U_{q+1,k+1}), a basis of Ā^p.
    std::vector<Matrix<typename F::value_type>> source_basis;
    /// Per degree: rows are the images w_J in A^p(M).
    std::vector<Matrix<typename F::value_type>> images;
    bool injective_in_degree_one = false;
};

/// Factors Λ(W) -> A(M) through Ā(U_{q+1,k+1}) via u_j ↦ w_j for the given
/// ordered basis w_1..w_k of W.  Throws NotSingularEnough when Λ^{q+1}(W)
/// has nonzero image.
template <class F>
TruncatedFactorization<F> truncated_factorization(const F& field, const OsAlgebra& algebra,
                                                  const std::vector<std::vector<typename F::value_type>>& basis,
                                                  int q) {
    using Element = OsElement<F>;
    const int k = static_cast<int>(basis.size());
    if (q < 1) throw std::invalid_argument("truncation degree must be positive");
    const auto rows = Matrix<typename F::value_type>::from_rows(basis, static_cast<std::size_t>(algebra.ground_size()));
    const auto gens = detail::degree_one_elements(field, algebra, rows);
    if (q < k && rank(field, detail::wedge_images(field, algebra, gens, q + 1)) != 0)
        throw NotSingularEnough("degree " + std::to_string(q + 1) + " products of W do not vanish");

    TruncatedFactorization<F> out{q, k, Matroid::uniform(std::min(q + 1, k + 1), k + 1), {}, {}, false};
    const OsAlgebra source(out.source);
    std::vector<Element> us;
    for (int j = 1; j <= k; ++j) us.push_back(Element::monomial(source, field, {j}) - Element::monomial(source, field, {k + 1}));
    for (int p = 0; p <= std::min(q, k); ++p) {
        out.source_basis.push_back(detail::wedge_images(field, source, us, p));
        out.images.push_back(detail::wedge_images(field, algebra, gens, p));
    }
    out.injective_in_degree_one = rank(field, out.images[1 < out.images.size() ? 1 : 0]) == static_cast<std::size_t>(k);
    return out;
}

/// Checks Φ_p · A(f)_p = sign^p · ι_p in every degree p, where ι_p holds the
/// coordinates of the u_J.  With sign = -1 this is the statement that -A(f)
/// on degree one (extended multiplicatively) inverts Φ.
template <class F>
std::vector<bool> factorization_split_check(const F& field, const TruncatedFactorization<F>& phi,
                                            const std::vector<Matrix<std::int64_t>>& weak_map_matrices, int sign) {
    std::vector<bool> out;
    for (std::size_t p = 0; p < phi.images.size(); ++p) {
        if (p >= weak_map_matrices.size()) {
            out.push_back(false);
            continue;
        }
        const auto lhs = multiply(field, phi.images[p], to_field(field, weak_map_matrices[p]));
        auto rhs = phi.source_basis[p];
        if (sign < 0 && p % 2 == 1)
            for (std::size_t r = 0; r < rhs.rows(); ++r)
                for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(r, c) = field.neg(rhs(r, c));
        out.push_back(matrices_equal(field, lhs, rhs));
    }
    return out;
}

// ---------------------------------------------------------------- search

namespace detail {

inline Matroid with_multiplicities(const Matroid& simple, const std::vector<int>& mult, std::vector<int>& origin) {
    origin.clear();
    for (int e = 1; e <= simple.size(); ++e)
        for (int c = 0; c < mult[static_cast<std::size_t>(e - 1)]; ++c) origin.push_back(e);
    const int n = static_cast<int>(origin.size());
    return Matroid::from_rank_function(n, [&](Mask s) {
        Mask t = 0;
        for (int e : elements(s)) t |= bit(origin[static_cast<std::size_t>(e - 1)]);
        return simple.rank(t);
    });
}

}  // namespace detail

struct MultinetSearchResult {
    /// Matroid the multinet lives on (the input, or an expansion of it by
    /// multiplicities).
    Matroid matroid;
    /// origin[i - 1] is the input element that element i copies.
    std::vector<int> origin;
    Multinet multinet;
};

/// All multinets on M with 3 <= k <= k_max, up to block order.  Blocks are
/// unions of parallel classes.
inline std::vector<Multinet> search_multinets_on(const Matroid& m, int k_max) {
    std::vector<Multinet> out;
    if (m.loops() != 0) return out;
    const auto simp = m.simplify();
    std::vector<Mask> classes = simp.classes.blocks();
    std::sort(classes.begin(), classes.end(), [](Mask a, Mask b) { return min_element(a) < min_element(b); });
    const int total = m.size();
    const int c = static_cast<int>(classes.size());

    // Irreducible rank-2 closure for each pair of classes, or 0.
    std::vector<std::vector<Mask>> pair_flat(static_cast<std::size_t>(c), std::vector<Mask>(static_cast<std::size_t>(c), 0));
    for (int a = 0; a < c; ++a)
        for (int b = a + 1; b < c; ++b) {
            const Mask f = m.closure(classes[static_cast<std::size_t>(a)] | classes[static_cast<std::size_t>(b)]);
            const Mask g = m.is_connected(f) ? f : 0;
            pair_flat[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = g;
            pair_flat[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = g;
        }

    for (int k = 3; k <= k_max; ++k) {
        if (total % k != 0) continue;
        const int d = total / k;
        std::vector<int> assign(static_cast<std::size_t>(c), -1);
        std::vector<int> load(static_cast<std::size_t>(k), 0);
        std::function<void(int, int)> place = [&](int i, int used) {
            if (i == c) {
                if (used != k) return;
                std::vector<Mask> blocks(static_cast<std::size_t>(k), 0);
                for (int a = 0; a < c; ++a) blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(a)])] |= classes[static_cast<std::size_t>(a)];
                std::vector<Mask> x;
                for (int a = 0; a < c; ++a)
                    for (int b = a + 1; b < c; ++b)
                        if (assign[static_cast<std::size_t>(a)] != assign[static_cast<std::size_t>(b)])
                            x.push_back(pair_flat[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                std::sort(x.begin(), x.end(), lex_less);
                x.erase(std::unique(x.begin(), x.end()), x.end());
                Partition l(m.size(), blocks);
                if (verify_multinet(m, l, x).valid()) out.push_back({l.canonical(), x, k, d});
                return;
            }
            const Mask cls = classes[static_cast<std::size_t>(i)];
            for (int b = 0; b < std::min(used + 1, k); ++b) {
                if (load[static_cast<std::size_t>(b)] + popcount(cls) > d) continue;
                if (c - i - 1 < k - std::max(used, b + 1)) continue;
                bool ok = true;
                for (int a = 0; a < i && ok; ++a)
                    if (assign[static_cast<std::size_t>(a)] != b && pair_flat[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] == 0)
                        ok = false;
                if (!ok) continue;
                assign[static_cast<std::size_t>(i)] = b;
                load[static_cast<std::size_t>(b)] += popcount(cls);
                place(i + 1, std::max(used, b + 1));
                load[static_cast<std::size_t>(b)] -= popcount(cls);
                assign[static_cast<std::size_t>(i)] = -1;
            }
        };
        place(0, 0);
    }
    return out;
}

/// Multinet search.  With max_multiplicity > 1 the parallel classes of M are
/// also expanded to every multiplicity profile up to that bound, so that a
/// simple matroid supporting a multinet through a multiplicity function is
/// found.
inline std::vector<MultinetSearchResult> search_multinets(const Matroid& m, int k_max = 4, int max_multiplicity = 1) {
    std::vector<MultinetSearchResult> out;
    const auto simp = m.simplify();
    if (max_multiplicity <= 1 || m.loops() != 0) {
        std::vector<int> origin;
        for (int e = 1; e <= m.size(); ++e) origin.push_back(e);
        for (auto& mn : search_multinets_on(m, k_max)) out.push_back({m, origin, std::move(mn)});
        return out;
    }
    const Matroid& s = simp.simple;
    std::vector<int> mult(static_cast<std::size_t>(s.size()), 1);
    for (;;) {
        int total = 0;
        for (int x : mult) total += x;
        if (total <= static_cast<int>(kMaxGroundSet)) {
            std::vector<int> origin;
            Matroid expanded = detail::with_multiplicities(s, mult, origin);
            for (auto& mn : search_multinets_on(expanded, k_max)) out.push_back({expanded, origin, std::move(mn)});
        }
        std::size_t i = 0;
        while (i < mult.size() && mult[i] == max_multiplicity) mult[i++] = 1;
        if (i == mult.size()) break;
        ++mult[i];
    }
    return out;
}

}  // namespace resonator
