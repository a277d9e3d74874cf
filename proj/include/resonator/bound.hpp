#pragma once

// Covers by irreducible flats and the upper-bound arrangements
//   Bound^p(M) = ∪ P_Co over covers Co ⊆ L^irr_{<=p+1}(M),
// with P_Co = {v ∈ V̄ : v(X) = 0 for all X ∈ Co}.  Only minimal covers are
// enumerated, since enlarging a cover can only shrink P_Co.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resonator/matroid.hpp"
#include "resonator/parallel.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"

namespace resonator {

inline constexpr std::size_t kDefaultCoverLimit = 1000000;

class CoverError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Cover {
    std::vector<Mask> flats;
    /// witness[i - 1] indexes the flat assigned to element i.
    std::vector<std::size_t> witness;
    bool essential = false;
};

/// Validates that the flats are irreducible and cover [n]; builds a witness.
inline Cover make_cover(const Matroid& m, std::vector<Mask> flats) {
    std::sort(flats.begin(), flats.end(), lex_less);
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
    Cover c;
    c.essential = true;
    for (Mask x : flats) {
        if (m.closure(x) != x) throw CoverError(to_string(x) + " is not a flat");
        if (!m.is_connected(x)) throw CoverError(to_string(x) + " is not irreducible");
        if (popcount(x) <= 1) c.essential = false;
    }
    c.witness.assign(static_cast<std::size_t>(m.size()), 0);
    for (int e = 1; e <= m.size(); ++e) {
        auto it = std::find_if(flats.begin(), flats.end(), [&](Mask x) { return (x & bit(e)) != 0; });
        if (it == flats.end()) throw CoverError("element " + std::to_string(e) + " is not covered");
        c.witness[static_cast<std::size_t>(e - 1)] = static_cast<std::size_t>(it - flats.begin());
    }
    c.flats = std::move(flats);
    return c;
}

/// P_Co = {v ∈ V̄ : v(X) = 0 for X ∈ Co}.
template <class F>
Subspace<F> cover_subspace(const F& field, int n, const std::vector<Mask>& flats) {
    const auto size = static_cast<std::size_t>(n);
    std::vector<std::vector<typename F::value_type>> eqs;
    eqs.emplace_back(size, field.one());
    for (Mask x : flats) {
        std::vector<typename F::value_type> row(size, field.zero());
        for (int e : elements(x)) row[static_cast<std::size_t>(e - 1)] = field.one();
        eqs.push_back(std::move(row));
    }
    return Subspace<F>::solutions(field, size, eqs);
}

template <class F>
Subspace<F> cover_subspace(const F& field, const Matroid& m, const Cover& cover) {
    return cover_subspace(field, m.size(), cover.flats);
}

/// The flats a cover of degree p may use.
inline std::vector<Mask> cover_candidates(const Matroid& m, int p, bool essential) {
    std::vector<Mask> out;
    for (const Flat& f : m.irreducible_flats(std::min(p + 1, m.rank())))
        if (!essential || popcount(f.elements) > 1) out.push_back(f.elements);
    return out;
}

struct CoverEnumeration {
    std::vector<std::vector<Mask>> covers;
    bool truncated = false;
};

/// All minimal covers of [n] by the candidate flats, each exactly once.
inline CoverEnumeration minimal_covers(int n, const std::vector<Mask>& candidates,
                                       std::size_t limit = kDefaultCoverLimit) {
    const Mask all = full_mask(n);
    CoverEnumeration out;
    if (n == 0) {
        out.covers.push_back({});
        return out;
    }
    Mask reachable = 0;
    for (Mask x : candidates) reachable |= x;
    if (reachable != all) return out;

    std::atomic<std::size_t> found{0};
    std::atomic<bool> truncated{false};

    struct State {
        std::vector<std::size_t> chosen;
        std::vector<char> forbidden;
    };

    // Each chosen flat must keep an element covered by no other chosen flat.
    auto minimal = [&](const std::vector<std::size_t>& chosen) {
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            Mask others = 0;
            for (std::size_t j = 0; j < chosen.size(); ++j)
                if (j != i) others |= candidates[chosen[j]];
            if ((candidates[chosen[i]] & ~others) == 0) return false;
        }
        return true;
    };

    auto search = [&](auto&& self, State& st, Mask covered, std::vector<std::vector<Mask>>& sink) -> void {
        if (truncated.load(std::memory_order_relaxed)) return;
        if (covered == all) {
            if (found.fetch_add(1) >= limit) {
                truncated = true;
                return;
            }
            std::vector<Mask> cover;
            for (auto i : st.chosen) cover.push_back(candidates[i]);
            std::sort(cover.begin(), cover.end(), lex_less);
            sink.push_back(std::move(cover));
            return;
        }
        const int e = min_element(all & ~covered);
        std::vector<std::size_t> options;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (!st.forbidden[i] && (candidates[i] & bit(e))) options.push_back(i);
        for (std::size_t k = 0; k < options.size(); ++k) {
            const auto i = options[k];
            st.chosen.push_back(i);
            if (minimal(st.chosen)) self(self, st, covered | candidates[i], sink);
            st.chosen.pop_back();
            st.forbidden[i] = 1;
        }
        for (auto i : options) st.forbidden[i] = 0;
    };

    // Split the first branching level across workers.
    const int first = 1;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (candidates[i] & bit(first)) roots.push_back(i);
    std::vector<std::vector<std::vector<Mask>>> per_root(roots.size());
    parallel_for(roots.size(), [&](std::size_t k) {
        State st;
        st.forbidden.assign(candidates.size(), 0);
        for (std::size_t j = 0; j < k; ++j) st.forbidden[roots[j]] = 1;
        st.chosen.push_back(roots[k]);
        search(search, st, candidates[roots[k]], per_root[k]);
    });
    for (auto& part : per_root)
        for (auto& c : part) out.covers.push_back(std::move(c));
    out.truncated = truncated.load();
    if (out.truncated && out.covers.size() > limit) out.covers.resize(limit);
    return out;
}

template <class F>
struct SubspaceArrangement {
    std::size_t ambient = 0;
    /// Maximal subspaces, sorted, pairwise incomparable.
    std::vector<Subspace<F>> components;
    /// For each component, one minimal cover realizing it.
    std::vector<std::vector<Mask>> covers;
    std::size_t covers_examined = 0;
    bool truncated = false;

    bool contains(const std::vector<typename F::value_type>& v) const {
        return std::any_of(components.begin(), components.end(), [&](const Subspace<F>& s) { return s.contains(v); });
    }
};

/// Keeps only subspaces not contained in another; output sorted.
template <class F>
void keep_maximal(std::vector<Subspace<F>>& spaces, std::vector<std::vector<Mask>>& tags) {
    std::vector<std::size_t> order(spaces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spaces[a] < spaces[b]; });
    std::vector<Subspace<F>> uniq;
    std::vector<std::vector<Mask>> uniq_tags;
    for (auto i : order) {
        if (!uniq.empty() && uniq.back() == spaces[i]) continue;
        uniq.push_back(spaces[i]);
        uniq_tags.push_back(tags[i]);
    }
    std::vector<Subspace<F>> out;
    std::vector<std::vector<Mask>> out_tags;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < uniq.size() && !dominated; ++j)
            if (j != i && uniq[j].dim() > uniq[i].dim() && uniq[j].contains(uniq[i])) dominated = true;
        if (!dominated) {
            out.push_back(uniq[i]);
            out_tags.push_back(uniq_tags[i]);
        }
    }
    spaces = std::move(out);
    tags = std::move(out_tags);
}

/// Bound^p(M), or Bound^p_ess(M) when `essential`.
template <class F>
SubspaceArrangement<F> bound(const F& field, const Matroid& m, int p, bool essential,
                             std::size_t limit = kDefaultCoverLimit) {
    if (p < 0 || p > m.rank()) throw std::out_of_range("degree outside 0..rank");
    const auto candidates = cover_candidates(m, p, essential);
    auto enumeration = minimal_covers(m.size(), candidates, limit);
    SubspaceArrangement<F> out;
    out.ambient = static_cast<std::size_t>(m.size());
    out.truncated = enumeration.truncated;
    out.covers_examined = enumeration.covers.size();
    std::vector<Subspace<F>> spaces(enumeration.covers.size(), Subspace<F>(field, out.ambient));
    parallel_for(spaces.size(),
                 [&](std::size_t i) { spaces[i] = cover_subspace(field, m.size(), enumeration.covers[i]); });
    out.covers = std::move(enumeration.covers);
    keep_maximal(spaces, out.covers);
    out.components = std::move(spaces);
    return out;
}

/// Necessary condition for v ∈ R^p(M): some irreducible flat X of rank at
/// most p + 1 has v(X) = 0.
template <class F>
bool sv_bound_membership(const F& field, const Matroid& m, const std::vector<typename F::value_type>& v, int p) {
    if (v.size() != static_cast<std::size_t>(m.size())) throw std::invalid_argument("point length mismatch");
    if (!in_sum_zero(field, v)) throw HypothesisError("point must have coordinate sum zero");
    for (const Flat& f : m.irreducible_flats(std::min(p + 1, m.rank())))
        if (field.is_zero(flat_sum(field, v, f.elements))) return true;
    return false;
}

template <class F>
struct BoundComparison {
    SubspaceArrangement<F> arrangement;
    std::vector<ContainmentResult<F>> verdicts;

    bool tight() const {
        return !arrangement.truncated && std::all_of(verdicts.begin(), verdicts.end(), [](const auto& r) {
                   return r.verdict == Verdict::contained;
               });
    }
};

/// Tests every maximal component of Bound^p(M) for containment in R^p(M).
template <class F>
BoundComparison<F> compare_bound(const ResonanceEngine<F>& engine, int p, bool essential,
                                 const ContainmentOptions& options = {}, std::size_t limit = kDefaultCoverLimit) {
    BoundComparison<F> out;
    out.arrangement = bound(engine.field(), engine.algebra().matroid(), p, essential, limit);
    for (const auto& s : out.arrangement.components) out.verdicts.push_back(subspace_in_resonance(engine, s, p, 1, options));
    return out;
}

}  // namespace resonator
