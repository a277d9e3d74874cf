#pragma once

// Subsets of the ground set [n] = {1, ..., n} are stored as bitmasks with
// element i occupying bit i-1.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace resonator {

using Mask = std::uint32_t;

/// Largest ground set we are willing to enumerate subsets of.
inline constexpr int kMaxGroundSet = 20;

inline constexpr Mask bit(int element) { return Mask{1} << (element - 1); }

inline constexpr Mask full_mask(int n) {
    return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline constexpr int popcount(Mask m) { return std::popcount(m); }

inline constexpr bool contains(Mask outer, Mask inner) {
    return (outer & inner) == inner;
}

/// Smallest element of a nonempty subset.
inline constexpr int min_element(Mask m) { return std::countr_zero(m) + 1; }

/// Largest element of a nonempty subset.
inline constexpr int max_element(Mask m) { return 32 - std::countl_zero(m); }

inline std::vector<int> elements(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(m)));
    while (m != 0) {
        out.push_back(min_element(m));
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(const std::vector<int>& elems, int n) {
    Mask m = 0;
    for (int e : elems) {
        if (e < 1 || e > n)
            throw std::out_of_range("element " + std::to_string(e) +
                                    " outside ground set [" + std::to_string(n) + "]");
        m |= bit(e);
    }
    return m;
}

/// Lexicographic order on sorted element lists: {1,2} < {1,3} < {2}.
inline bool lex_less(Mask a, Mask b) {
    while (a != 0 && b != 0) {
        int x = min_element(a), y = min_element(b);
        if (x != y) return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

/// Sign of the permutation sorting the concatenation (a, b) of two disjoint
/// increasing sequences: (-1)^{#{(x, y) : x in a, y in b, x > y}}.
inline int shuffle_sign(Mask a, Mask b) {
    int inversions = 0;
    while (b != 0) {
        int y = min_element(b);
        inversions += popcount(a & ~full_mask(y));
        b &= b - 1;
    }
    return (inversions & 1) ? -1 : 1;
}

inline std::string to_string(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int e : elements(m)) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

/// Calls fn(subset) for every k-subset of the bits in `universe`, in
/// increasing numeric order.
template <class Fn>
void for_each_subset_of_size(Mask universe, int k, Fn&& fn) {
    std::vector<int> pool = elements(universe);
    const int m = static_cast<int>(pool.size());
    if (k < 0 || k > m) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        Mask s = 0;
        for (int i : idx) s |= bit(pool[static_cast<std::size_t>(i)]);
        fn(s);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace resonator
