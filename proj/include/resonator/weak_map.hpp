#pragma once

// Weak maps of matroids.  A map f : [n1] ∪ {0} -> [n2] ∪ {0} with f(0) = 0,
// where 0 stands for an added loop, is weak when every I ⊆ [n1] on which f
// is injective with f(I) independent in M2 (0 ∉ f(I)) is independent in M1.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resonator/matroid.hpp"

namespace resonator {

class WeakMapError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct WeakMapFlags {
    bool weak = false;
    bool complete = false;
    bool nondegenerate = false;

    friend bool operator==(const WeakMapFlags&, const WeakMapFlags&) = default;
};

namespace detail {

inline void check_table(const std::vector<int>& table, const Matroid& source, const Matroid& target) {
    if (static_cast<int>(table.size()) != source.size() + 1)
        throw WeakMapError("map table must have n1 + 1 entries");
    if (table[0] != 0) throw WeakMapError("a weak map must send 0 to 0");
    for (int v : table)
        if (v < 0 || v > target.size()) throw WeakMapError("map value outside target ground set");
}

}  // namespace detail

/// Flags of the map; `weak` is checked over all subsets of [n1].
inline WeakMapFlags check_weak_map(const std::vector<int>& table, const Matroid& source, const Matroid& target) {
    detail::check_table(table, source, target);
    const int n1 = source.size();
    WeakMapFlags flags;
    flags.weak = true;
    for (Mask s = 1; s <= full_mask(n1) && flags.weak; ++s) {
        Mask image = 0;
        bool injective = true;
        for (int e : elements(s)) {
            int v = table[static_cast<std::size_t>(e)];
            if (v == 0 || (image & bit(v))) {
                injective = false;
                break;
            }
            image |= bit(v);
        }
        if (injective && target.is_independent(image) && !source.is_independent(s)) flags.weak = false;
        if (s == full_mask(n1)) break;
    }
    Mask zero_set = 0;
    for (int e = 1; e <= n1; ++e)
        if (table[static_cast<std::size_t>(e)] == 0) zero_set |= bit(e);
    flags.nondegenerate = zero_set == 0;
    flags.complete = true;
    for (Mask c : source.circuits())
        if (popcount(c & zero_set) == 1) flags.complete = false;
    return flags;
}

class WeakMap {
  public:
    /// Verifies the weak-map condition; throws WeakMapError otherwise.
    WeakMap(Matroid source, Matroid target, std::vector<int> table)
        : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
        flags_ = check_weak_map(table_, source_, target_);
        if (!flags_.weak) throw WeakMapError("map is not a weak map");
    }

    /// Builds the table from 1-based values f(1), ..., f(n1).
    static WeakMap from_values(Matroid source, Matroid target, const std::vector<int>& values) {
        std::vector<int> table{0};
        table.insert(table.end(), values.begin(), values.end());
        return WeakMap(std::move(source), std::move(target), std::move(table));
    }

    static WeakMap identity(const Matroid& m) {
        std::vector<int> table(static_cast<std::size_t>(m.size() + 1));
        for (int i = 0; i <= m.size(); ++i) table[static_cast<std::size_t>(i)] = i;
        return WeakMap(m, m, std::move(table));
    }

    const Matroid& source() const { return source_; }
    const Matroid& target() const { return target_; }
    const std::vector<int>& table() const { return table_; }
    int operator()(int e) const { return table_[static_cast<std::size_t>(e)]; }
    const WeakMapFlags& flags() const { return flags_; }
    bool is_complete() const { return flags_.complete; }
    bool is_nondegenerate() const { return flags_.nondegenerate; }

    /// Image f([n1]) with 0 dropped.
    Mask image() const {
        Mask m = 0;
        for (std::size_t e = 1; e < table_.size(); ++e)
            if (table_[e] != 0) m |= bit(table_[e]);
        return m;
    }

  private:
    Matroid source_;
    Matroid target_;
    std::vector<int> table_;
    WeakMapFlags flags_;
};

/// g ∘ f.  When both are complete (resp. nondegenerate) the composite is
/// checked to be complete (resp. nondegenerate) as well.
inline WeakMap compose_weak(const WeakMap& f, const WeakMap& g) {
    if (!(f.target() == g.source())) throw WeakMapError("composition: target of f differs from source of g");
    std::vector<int> table(f.table().size());
    for (std::size_t e = 0; e < table.size(); ++e) table[e] = g(f(static_cast<int>(e)));
    WeakMap h(f.source(), g.target(), std::move(table));
    if (f.is_complete() && g.is_complete() && !h.is_complete())
        throw std::logic_error("composite of complete weak maps is not complete");
    if (f.is_nondegenerate() && g.is_nondegenerate() && !h.is_nondegenerate())
        throw std::logic_error("composite of nondegenerate weak maps is degenerate");
    return h;
}

/// Necessary condition for an epimorphism of complete weak maps: every
/// element of the target outside f(S1) is a loop or parallel to an element
/// of f(S1).
inline bool satisfies_epimorphism_condition(const WeakMap& f) {
    const Matroid& t = f.target();
    const Mask img = f.image();
    for (int e = 1; e <= t.size(); ++e) {
        if (img & bit(e)) continue;
        if (t.is_loop(e)) continue;
        bool parallel = false;
        for (int x : elements(img))
            if (t.are_parallel(e, x)) parallel = true;
        if (!parallel) return false;
    }
    return true;
}

}  // namespace resonator
