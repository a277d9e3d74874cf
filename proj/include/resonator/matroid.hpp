#pragma once

// Matroids on [n] = {1, ..., n}, presented by their circuits.
//
// The circuit list is canonical (each circuit sorted, list sorted
// lexicographically), so two labeled matroids are equal iff their circuit
// lists are.  A full rank table over all 2^n subsets is built once at
// construction and shared between copies; matroids are immutable, so
// concurrent rank queries need no locking.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resonator/bits.hpp"
#include "resonator/field.hpp"
#include "resonator/linalg.hpp"

namespace resonator {

class AxiomViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class MatroidError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Flat {
    Mask elements = 0;
    int rank = 0;
    bool irreducible = false;

    friend bool operator==(const Flat&, const Flat&) = default;
};

/// A set partition of [n] into nonempty blocks.
class Partition {
  public:
    Partition() = default;
    Partition(int n, std::vector<Mask> blocks) : n_(n), blocks_(std::move(blocks)) {
        Mask seen = 0;
        for (Mask b : blocks_) {
            if (b == 0) throw std::invalid_argument("partition has an empty block");
            if (b & seen) throw std::invalid_argument("partition blocks overlap");
            if (!contains(full_mask(n), b)) throw std::invalid_argument("partition block outside [n]");
            seen |= b;
        }
        if (seen != full_mask(n)) throw std::invalid_argument("partition does not cover [n]");
    }

    static Partition from_lists(int n, const std::vector<std::vector<int>>& blocks) {
        std::vector<Mask> m;
        for (const auto& b : blocks) m.push_back(mask_of(b, n));
        return Partition(n, std::move(m));
    }

    static Partition singletons(int n) {
        std::vector<Mask> b;
        for (int i = 1; i <= n; ++i) b.push_back(bit(i));
        return Partition(n, std::move(b));
    }

    int ground_size() const { return n_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<Mask>& blocks() const { return blocks_; }
    const Mask& operator[](std::size_t i) const { return blocks_[i]; }

    /// Index of the block containing element e.
    std::size_t block_of(int e) const {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            if (blocks_[i] & bit(e)) return i;
        throw std::out_of_range("element not in partition");
    }

    /// Blocks ordered by their smallest element.
    Partition canonical() const {
        auto b = blocks_;
        std::sort(b.begin(), b.end(), [](Mask x, Mask y) { return min_element(x) < min_element(y); });
        return Partition(n_, std::move(b));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += "|";
            bool first = true;
            for (int e : elements(blocks_[i])) {
                if (!first) s += ",";
                s += std::to_string(e);
                first = false;
            }
        }
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

  private:
    int n_ = 0;
    std::vector<Mask> blocks_;
};

class Matroid;

/// Result of simplification: the simple matroid, the parallel classes of
/// [n] (loops as singleton blocks) and the map s : [n] -> [m] ∪ {0}, with
/// loops sent to 0.  Entry 0 of `map` is 0.
struct Simplification;

class Matroid {
  public:
    Matroid() : Matroid(0, std::vector<Mask>{}, Validate::no) {}

    // ---------------------------------------------------------------- builders

    /// Circuits given as element lists; validated against the circuit axioms.
    static Matroid from_circuits(int n, const std::vector<std::vector<int>>& circuits) {
        check_size(n);
        std::vector<Mask> masks;
        for (const auto& c : circuits) {
            if (c.empty()) throw AxiomViolation("the empty set cannot be a circuit");
            std::vector<int> sorted = c;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw AxiomViolation("circuit with repeated element");
            masks.push_back(mask_of(c, n));
        }
        return Matroid(n, std::move(masks), Validate::yes);
    }

    static Matroid from_circuit_masks(int n, std::vector<Mask> circuits) {
        check_size(n);
        for (Mask c : circuits) {
            if (c == 0) throw AxiomViolation("the empty set cannot be a circuit");
            if (!contains(full_mask(n), c)) throw AxiomViolation("circuit outside ground set");
        }
        return Matroid(n, std::move(circuits), Validate::yes);
    }

    /// Builds the matroid from a rank function on subsets (assumed to be a
    /// matroid rank function).  Circuits are the minimal dependent sets.
    static Matroid from_rank_function(int n, const std::function<int(Mask)>& rank_fn) {
        check_size(n);
        std::vector<std::uint8_t> table(std::size_t{1} << n);
        for (Mask s = 0; s < table.size(); ++s) table[s] = static_cast<std::uint8_t>(rank_fn(s));
        return from_rank_table(n, std::move(table));
    }

    /// Uniform matroid U_{l,n}: every (l+1)-subset is a circuit.
    static Matroid uniform(int l, int n) {
        if (l < 0 || l > n) throw MatroidError("uniform matroid needs 0 <= l <= n");
        check_size(n);
        std::vector<Mask> circuits;
        if (l < n) for_each_subset_of_size(full_mask(n), l + 1, [&](Mask s) { circuits.push_back(s); });
        return Matroid(n, std::move(circuits), Validate::no);
    }

    static Matroid free_matroid(int n) { return uniform(n, n); }

    /// Cycle matroid of a multigraph.  Vertices are 1..vertices; edge i of the
    /// input list becomes element i.  A self-loop becomes a matroid loop when
    /// `allow_self_loops` is set and is rejected otherwise.
    static Matroid from_graph(int vertices, const std::vector<std::pair<int, int>>& edges,
                              bool allow_self_loops = false) {
        const int n = static_cast<int>(edges.size());
        check_size(n);
        for (auto [u, v] : edges) {
            if (u < 1 || v < 1 || u > vertices || v > vertices)
                throw MatroidError("edge endpoint outside vertex range");
            if (u == v && !allow_self_loops) throw MatroidError("self-loop in graph input");
        }
        return from_rank_function(n, [&](Mask s) {
            std::vector<int> parent(static_cast<std::size_t>(vertices + 1));
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> find = [&](int x) {
                while (parent[static_cast<std::size_t>(x)] != x) {
                    parent[static_cast<std::size_t>(x)] =
                        parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                    x = parent[static_cast<std::size_t>(x)];
                }
                return x;
            };
            int r = 0;
            for (int e : elements(s)) {
                auto [u, v] = edges[static_cast<std::size_t>(e - 1)];
                int a = find(u), b = find(v);
                if (a != b) {
                    parent[static_cast<std::size_t>(a)] = b;
                    ++r;
                }
            }
            return r;
        });
    }

    /// Matroid of the columns of a matrix over a field; zero columns are loops.
    template <class F>
    static Matroid from_columns(const F& field, const std::vector<std::vector<typename F::value_type>>& columns) {
        const int n = static_cast<int>(columns.size());
        check_size(n);
        const std::size_t dim = columns.empty() ? 0 : columns.front().size();
        for (const auto& c : columns)
            if (c.size() != dim) throw MatroidError("columns have different lengths");
        return from_rank_function(n, [&](Mask s) {
            if (s == 0 || dim == 0) return 0;
            Matrix<typename F::value_type> m(0, dim);
            for (int e : elements(s)) m.append_row(columns[static_cast<std::size_t>(e - 1)]);
            return static_cast<int>(resonator::rank(field, std::move(m)));
        });
    }

    // ---------------------------------------------------------------- queries

    int size() const { return n_; }
    int rank() const { return rank(full_mask(n_)); }
    const std::vector<Mask>& circuits() const { return circuits_; }

    int rank(Mask s) const {
        if (!contains(full_mask(n_), s)) throw std::out_of_range("subset outside ground set");
        return (*rank_)[s];
    }

    int rank(const std::vector<int>& s) const { return rank(mask_of(s, n_)); }

    bool is_independent(Mask s) const { return rank(s) == popcount(s); }

    Mask closure(Mask s) const {
        const int r = rank(s);
        Mask out = s;
        for (int e = 1; e <= n_; ++e)
            if (!(s & bit(e)) && rank(s | bit(e)) == r) out |= bit(e);
        return out;
    }

    bool is_loop(int e) const { return rank(bit(e)) == 0; }

    Mask loops() const { return closure(0); }

    bool are_parallel(int a, int b) const {
        return a != b && !is_loop(a) && !is_loop(b) && rank(bit(a) | bit(b)) == 1;
    }

    bool is_simple() const {
        for (Mask c : circuits_)
            if (popcount(c) <= 2) return false;
        return true;
    }

    /// Connected components of the restriction to X (nonempty blocks).
    std::vector<Mask> components(Mask x) const {
        std::vector<Mask> comps;
        for (int e : elements(x)) comps.push_back(bit(e));
        for (Mask c : circuits_) {
            if (!contains(x, c)) continue;
            Mask merged = c;
            std::vector<Mask> rest;
            for (Mask m : comps) {
                if (m & c) merged |= m;
                else rest.push_back(m);
            }
            rest.push_back(merged);
            comps = std::move(rest);
        }
        std::sort(comps.begin(), comps.end(), [](Mask a, Mask b) { return min_element(a) < min_element(b); });
        return comps;
    }

    /// Whether the restriction M_X is connected.  A single loop is not
    /// connected (beta = 0); a single non-loop element is.
    bool is_connected(Mask x) const {
        if (x == 0) return false;
        if (rank(x) == 0) return false;
        return components(x).size() == 1;
    }

    bool is_connected() const { return is_connected(full_mask(n_)); }

    /// Coefficients of the characteristic polynomial, index = power of t.
    std::vector<long long> characteristic_polynomial() const {
        const int r = rank();
        std::vector<long long> coeffs(static_cast<std::size_t>(r + 1), 0);
        for (Mask s = 0; s <= full_mask(n_); ++s) {
            coeffs[static_cast<std::size_t>(r - rank(s))] += (popcount(s) & 1) ? -1 : 1;
            if (s == full_mask(n_)) break;
        }
        return coeffs;
    }

    /// Crapo's beta invariant, (-1)^{r-1} chi'(1).
    long long beta() const {
        const int r = rank();
        if (n_ == 0) return 0;
        auto chi = characteristic_polynomial();
        long long derivative = 0;
        for (std::size_t k = 1; k < chi.size(); ++k) derivative += static_cast<long long>(k) * chi[k];
        return ((r - 1) % 2 == 0) ? derivative : -derivative;
    }

    /// All flats of rank <= max_rank, ordered by rank then lexicographically.
    std::vector<Flat> flats(int max_rank) const {
        if (max_rank < 0) return {};
        std::vector<Flat> out;
        for (Mask s = 0;; ++s) {
            const int r = rank(s);
            if (r <= max_rank && closure(s) == s) out.push_back({s, r, is_connected(s)});
            if (s == full_mask(n_)) break;
        }
        std::sort(out.begin(), out.end(), [](const Flat& a, const Flat& b) {
            if (a.rank != b.rank) return a.rank < b.rank;
            return lex_less(a.elements, b.elements);
        });
        return out;
    }

    std::vector<Flat> irreducible_flats(int max_rank) const {
        std::vector<Flat> out;
        for (const Flat& f : flats(max_rank))
            if (f.irreducible) out.push_back(f);
        return out;
    }

    /// Irreducible flats of rank exactly r.
    std::vector<Flat> irreducible_flats_of_rank(int r) const {
        std::vector<Flat> out;
        for (const Flat& f : irreducible_flats(r))
            if (f.rank == r) out.push_back(f);
        return out;
    }

    /// Largest k with no circuit of size <= k.
    int genericity() const {
        int smallest = n_ + 1;
        for (Mask c : circuits_) smallest = std::min(smallest, popcount(c));
        return smallest - 1;
    }

    // ------------------------------------------------------------- operations

    Matroid dual() const {
        const int r = rank();
        const Mask all = full_mask(n_);
        return from_rank_function(n_, [&](Mask s) { return popcount(s) + rank(all & ~s) - r; });
    }

    /// Restriction to X, relabeled by the order of X's elements.
    Matroid restrict_to(Mask x) const {
        auto keep = elements(x);
        const int m = static_cast<int>(keep.size());
        return from_rank_function(m, [&](Mask s) { return rank(embed(s, keep)); });
    }

    Matroid delete_elements(Mask s) const {
        if (s == 0) throw MatroidError("delete needs a nonempty set");
        return restrict_to(full_mask(n_) & ~s);
    }

    Matroid contract(Mask s) const {
        if (s == 0) throw MatroidError("contract needs a nonempty set");
        for (int e : elements(s))
            if (is_loop(e)) throw MatroidError("cannot contract loop " + std::to_string(e));
        auto keep = elements(full_mask(n_) & ~s);
        const int m = static_cast<int>(keep.size());
        const int rs = rank(s);
        return from_rank_function(m, [&](Mask t) { return rank(embed(t, keep) | s) - rs; });
    }

    Matroid delete_element(int e) const { return delete_elements(bit(e)); }
    Matroid contract_element(int e) const { return contract(bit(e)); }

    /// M1 ⊕ M2 with M2's elements shifted by n1.
    static Matroid direct_sum(const Matroid& a, const Matroid& b) {
        std::vector<Mask> circuits = a.circuits_;
        for (Mask c : b.circuits_) circuits.push_back(c << a.n_);
        check_size(a.n_ + b.n_);
        return Matroid(a.n_ + b.n_, std::move(circuits), Validate::no);
    }

    /// Truncation to rank k: rank becomes min(r(S), k).
    Matroid truncate(int k) const {
        if (k < 1 || k > rank()) throw MatroidError("truncation rank out of range");
        return from_rank_function(n_, [&](Mask s) { return std::min(rank(s), k); });
    }

    /// Relabels so that element i becomes perm[i-1].
    Matroid relabel(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != n_) throw MatroidError("permutation has wrong length");
        Mask seen = 0;
        for (int p : perm) seen |= bit(p);
        if (seen != full_mask(n_)) throw MatroidError("not a permutation of [n]");
        std::vector<Mask> circuits;
        for (Mask c : circuits_) {
            Mask d = 0;
            for (int e : elements(c)) d |= bit(perm[static_cast<std::size_t>(e - 1)]);
            circuits.push_back(d);
        }
        return Matroid(n_, std::move(circuits), Validate::no);
    }

    /// Parallel connection along basepoints b1 of *this and b2 of other.
    /// Elements of *this keep their labels; the elements of `other` other than
    /// b2 follow in order as n1+1, n1+2, ...; b2 is identified with b1.
    Matroid parallel_connection(const Matroid& other, int b1, int b2) const {
        if (b1 < 1 || b1 > n_ || b2 < 1 || b2 > other.n_) throw MatroidError("basepoint out of range");
        if (is_loop(b1) || other.is_loop(b2)) throw MatroidError("basepoint is a loop");
        const int n = n_ + other.n_ - 1;
        check_size(n);
        std::vector<int> label(static_cast<std::size_t>(other.n_ + 1), 0);
        int next = n_ + 1;
        for (int e = 1; e <= other.n_; ++e) label[static_cast<std::size_t>(e)] = (e == b2) ? b1 : next++;
        auto move = [&](Mask c) {
            Mask d = 0;
            for (int e : elements(c)) d |= bit(label[static_cast<std::size_t>(e)]);
            return d;
        };
        std::vector<Mask> candidates = circuits_;
        std::vector<Mask> second;
        for (Mask c : other.circuits_) second.push_back(move(c));
        candidates.insert(candidates.end(), second.begin(), second.end());
        for (Mask c1 : circuits_) {
            if (!(c1 & bit(b1))) continue;
            for (Mask c2 : second)
                if (c2 & bit(b1)) candidates.push_back((c1 | c2) & ~bit(b1));
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        std::vector<Mask> minimal;
        for (Mask c : candidates) {
            bool keep = true;
            for (Mask d : candidates)
                if (d != c && contains(c, d)) {
                    keep = false;
                    break;
                }
            if (keep) minimal.push_back(c);
        }
        return Matroid(n, std::move(minimal), Validate::yes);
    }

    Simplification simplify() const;

    std::string to_string() const {
        std::string s = "Matroid(n=" + std::to_string(n_) + ", circuits=[";
        for (std::size_t i = 0; i < circuits_.size(); ++i) {
            if (i) s += ",";
            s += resonator::to_string(circuits_[i]);
        }
        return s + "])";
    }

    friend bool operator==(const Matroid& a, const Matroid& b) {
        return a.n_ == b.n_ && a.circuits_ == b.circuits_;
    }

  private:
    enum class Validate { no, yes };

    static void check_size(int n) {
        if (n < 0 || n > kMaxGroundSet)
            throw MatroidError("ground set size " + std::to_string(n) + " outside [0, " +
                               std::to_string(kMaxGroundSet) + "]");
    }

    static Mask embed(Mask s, const std::vector<int>& keep) {
        Mask out = 0;
        for (int e : elements(s)) out |= bit(keep[static_cast<std::size_t>(e - 1)]);
        return out;
    }

    static Matroid from_rank_table(int n, std::vector<std::uint8_t> table) {
        std::vector<Mask> circuits;
        for (Mask s = 1; s < table.size(); ++s) {
            if (table[s] == popcount(s)) continue;
            bool minimal = true;
            for (Mask rest = s; rest != 0; rest &= rest - 1) {
                Mask sub = s & ~(rest & (~rest + 1));
                if (table[sub] != popcount(sub)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) circuits.push_back(s);
        }
        Matroid m;
        m.n_ = n;
        m.circuits_ = std::move(circuits);
        m.canonicalize();
        m.rank_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
        return m;
    }

    Matroid(int n, std::vector<Mask> circuits, Validate validate) : n_(n), circuits_(std::move(circuits)) {
        canonicalize();
        if (validate == Validate::yes) validate_axioms();
        build_rank_table();
    }

    void canonicalize() {
        std::sort(circuits_.begin(), circuits_.end(), lex_less);
        circuits_.erase(std::unique(circuits_.begin(), circuits_.end()), circuits_.end());
    }

    void validate_axioms() const {
        for (std::size_t i = 0; i < circuits_.size(); ++i)
            for (std::size_t j = 0; j < circuits_.size(); ++j)
                if (i != j && contains(circuits_[j], circuits_[i]))
                    throw AxiomViolation("circuit " + resonator::to_string(circuits_[i]) + " is contained in " +
                                         resonator::to_string(circuits_[j]));
        for (std::size_t i = 0; i < circuits_.size(); ++i)
            for (std::size_t j = i + 1; j < circuits_.size(); ++j) {
                Mask common = circuits_[i] & circuits_[j];
                Mask both = circuits_[i] | circuits_[j];
                for (int e : elements(common)) {
                    Mask target = both & ~bit(e);
                    bool found = false;
                    for (Mask c : circuits_)
                        if (contains(target, c)) {
                            found = true;
                            break;
                        }
                    if (!found)
                        throw AxiomViolation("circuit elimination fails for " + resonator::to_string(circuits_[i]) +
                                             ", " + resonator::to_string(circuits_[j]) + " at " + std::to_string(e));
                }
            }
    }

    void build_rank_table() {
        const std::size_t size = std::size_t{1} << n_;
        // Circuits grouped by their largest element.
        std::vector<std::vector<Mask>> by_max(static_cast<std::size_t>(n_ + 1));
        for (Mask c : circuits_) by_max[static_cast<std::size_t>(max_element(c))].push_back(c);
        std::vector<std::uint8_t> indep(size, 0);
        std::vector<std::uint8_t> table(size, 0);
        indep[0] = 1;
        for (Mask s = 1; s < size; ++s) {
            const int top = max_element(s);
            bool ok = indep[s & ~bit(top)] != 0;
            if (ok)
                for (Mask c : by_max[static_cast<std::size_t>(top)])
                    if (contains(s, c)) {
                        ok = false;
                        break;
                    }
            indep[s] = ok ? 1 : 0;
            if (ok) {
                table[s] = static_cast<std::uint8_t>(popcount(s));
            } else {
                std::uint8_t best = 0;
                for (Mask rest = s; rest != 0; rest &= rest - 1) {
                    Mask sub = s & ~(rest & (~rest + 1));
                    best = std::max(best, table[sub]);
                }
                table[s] = best;
            }
        }
        rank_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
    }

    int n_ = 0;
    std::vector<Mask> circuits_;
    std::shared_ptr<const std::vector<std::uint8_t>> rank_;
};

struct Simplification {
    Matroid simple;
    Partition classes;
    std::vector<int> map;
};

inline Simplification Matroid::simplify() const {
    std::vector<Mask> classes;
    Mask assigned = 0;
    std::vector<int> map(static_cast<std::size_t>(n_ + 1), 0);
    for (int e = 1; e <= n_; ++e) {
        if (assigned & bit(e)) continue;
        if (is_loop(e)) {
            assigned |= bit(e);
            continue;
        }
        Mask cls = bit(e);
        for (int f = e + 1; f <= n_; ++f)
            if (are_parallel(e, f)) cls |= bit(f);
        assigned |= cls;
        classes.push_back(cls);
    }
    std::vector<int> reps;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        reps.push_back(min_element(classes[i]));
        for (int e : elements(classes[i])) map[static_cast<std::size_t>(e)] = static_cast<int>(i + 1);
    }
    const int m = static_cast<int>(classes.size());
    Matroid simple = from_rank_function(m, [&](Mask s) {
        Mask t = 0;
        for (int e : elements(s)) t |= bit(reps[static_cast<std::size_t>(e - 1)]);
        return rank(t);
    });
    std::vector<Mask> blocks = classes;
    for (int e = 1; e <= n_; ++e)
        if (is_loop(e)) blocks.push_back(bit(e));
    Partition part = Partition(n_, std::move(blocks)).canonical();
    return {std::move(simple), std::move(part), std::move(map)};
}

}  // namespace resonator
