#pragma once

// The Orlik-Solomon algebra A(M) = E / I(M), where E is the exterior algebra
// on e_1, ..., e_n and I(M) is generated by the boundaries ∂(e_C) of the
// circuits C of M.
//
// The algebra is presented in its no-broken-circuit (NBC) basis with respect
// to the natural order 1 < 2 < ... < n.  All structure constants are
// integers, so one OsAlgebra serves every coefficient field: normal forms
// and multiplication tables are computed once over Z and mapped into a field
// on use.  An OsAlgebra is immutable after construction.

#include <cstdint>
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
#include "resonator/weak_map.hpp"

namespace resonator {

/// Sparse integer vector: (basis index, coefficient), sorted by index.
using IntVector = std::vector<std::pair<std::uint32_t, std::int64_t>>;

class IncompleteMap : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("OS structure constant overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("OS structure constant overflow");
    return r;
}

/// acc += scale * v, both sparse and sorted.
inline void axpy(IntVector& acc, std::int64_t scale, const IntVector& v) {
    if (scale == 0 || v.empty()) return;
    IntVector out;
    out.reserve(acc.size() + v.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < v.size()) {
        if (j == v.size() || (i < acc.size() && acc[i].first < v[j].first)) {
            out.push_back(acc[i++]);
        } else if (i == acc.size() || v[j].first < acc[i].first) {
            out.emplace_back(v[j].first, checked_mul(scale, v[j].second));
            ++j;
        } else {
            std::int64_t c = checked_add(acc[i].second, checked_mul(scale, v[j].second));
            if (c != 0) out.emplace_back(acc[i].first, c);
            ++i;
            ++j;
        }
    }
    acc = std::move(out);
}

}  // namespace detail

class OsAlgebra {
  public:
    /// One nonzero entry of right multiplication by a generator:
    /// e_{basis(p)[row]} · e_element has coefficient `coeff` on basis(p+1)[col].
    struct MultEntry {
        std::uint32_t row;
        std::uint32_t col;
        int element;
        std::int64_t coeff;
    };

    explicit OsAlgebra(Matroid m) : m_(std::move(m)) {
        const int n = m_.size();
        zero_ = m_.loops() != 0;
        rank_ = m_.rank();
        bases_.assign(static_cast<std::size_t>(rank_ + 1), {});
        if (zero_) return;

        for (Mask c : m_.circuits()) broken_.push_back({c & ~bit(min_element(c)), c});

        const std::size_t size = std::size_t{1} << n;
        index_.assign(size, kNone);
        for (Mask s = 0; s < size; ++s) {
            if (!m_.is_independent(s) || contains_broken_circuit(s)) continue;
            bases_[static_cast<std::size_t>(popcount(s))].push_back(s);
        }
        for (auto& b : bases_) std::sort(b.begin(), b.end(), lex_less);
        for (const auto& b : bases_)
            for (std::size_t i = 0; i < b.size(); ++i) index_[b[i]] = static_cast<std::uint32_t>(i);

        nf_.assign(size, {});
        done_.assign(size, 0);
        for (Mask s = 0; s < size; ++s)
            if (m_.is_independent(s)) compute_normal_form(s);
        done_.clear();
        done_.shrink_to_fit();

        mult_.assign(static_cast<std::size_t>(rank_ + 1), {});
        for (int p = 0; p < rank_; ++p) {
            const auto& src = bases_[static_cast<std::size_t>(p)];
            for (std::size_t r = 0; r < src.size(); ++r)
                for (int e = 1; e <= n; ++e) {
                    if (src[r] & bit(e)) continue;
                    const int sign = shuffle_sign(src[r], bit(e));
                    for (auto [col, c] : nf_[src[r] | bit(e)])
                        mult_[static_cast<std::size_t>(p)].push_back(
                            {static_cast<std::uint32_t>(r), col, e, sign * c});
                }
        }
    }

    const Matroid& matroid() const { return m_; }
    int ground_size() const { return m_.size(); }

    /// True when M has a loop, in which case A(M) = 0 in every degree.
    bool is_zero() const { return zero_; }

    /// Rank of M: the top degree in which A(M) can be nonzero.
    int top_degree() const { return rank_; }

    std::size_t dim(int p) const {
        if (p < 0 || p > rank_) return 0;
        return bases_[static_cast<std::size_t>(p)].size();
    }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (int p = 0; p <= rank_; ++p) d.push_back(dim(p));
        return d;
    }

    /// NBC monomials of degree p, lexicographically sorted.
    const std::vector<Mask>& basis(int p) const {
        static const std::vector<Mask> empty;
        if (p < 0 || p > rank_) return empty;
        return bases_[static_cast<std::size_t>(p)];
    }

    std::optional<std::size_t> index_of(Mask s) const {
        if (zero_ || s >= index_.size() || index_[s] == kNone) return std::nullopt;
        return index_[s];
    }

    /// NBC expansion of the monomial e_S (indices increasing).  Dependent S,
    /// or any S when A(M) = 0, gives the zero vector.
    const IntVector& normal_form(Mask s) const {
        static const IntVector zero;
        if (zero_ || s >= nf_.size()) return zero;
        return nf_[s];
    }

    /// NBC expansion of e_{i1} e_{i2} ... e_{ik} for distinct indices in any
    /// order; the sign of the sorting permutation is applied.
    IntVector normal_form(const std::vector<int>& sequence) const {
        Mask s = 0;
        int sign = 1;
        for (int e : sequence) {
            if (e < 1 || e > m_.size()) throw std::out_of_range("monomial index outside [n]");
            if (s & bit(e)) return {};
            sign *= shuffle_sign(s, bit(e));
            s |= bit(e);
        }
        IntVector out = normal_form(s);
        if (sign < 0)
            for (auto& [i, c] : out) c = -c;
        return out;
    }

    /// Entries of right multiplication by generators, A^p -> A^{p+1}.
    const std::vector<MultEntry>& multiplication_entries(int p) const {
        static const std::vector<MultEntry> empty;
        if (zero_ || p < 0 || p >= rank_) return empty;
        return mult_[static_cast<std::size_t>(p)];
    }

    /// Right multiplication by v = Σ v_i e_i as a dim(p) x dim(p+1) matrix.
    template <class F>
    Matrix<typename F::value_type> multiplication_matrix(const F& field, const std::vector<typename F::value_type>& v,
                                                         int p) const {
        check_vector_length(v.size());
        Matrix<typename F::value_type> out(dim(p), dim(p + 1), field.zero());
        for (const auto& e : multiplication_entries(p)) {
            const auto& x = v[static_cast<std::size_t>(e.element - 1)];
            if (field.is_zero(x)) continue;
            out(e.row, e.col) = field.add(out(e.row, e.col), field.mul(field.from_int(e.coeff), x));
        }
        return out;
    }

    /// Integer version, used for the rational fast path.
    Matrix<mpz_class> multiplication_matrix_z(const std::vector<mpz_class>& v, int p) const {
        check_vector_length(v.size());
        Matrix<mpz_class> out(dim(p), dim(p + 1), mpz_class(0));
        for (const auto& e : multiplication_entries(p)) {
            const auto& x = v[static_cast<std::size_t>(e.element - 1)];
            if (x == 0) continue;
            out(e.row, e.col) += x * static_cast<long>(e.coeff);
        }
        return out;
    }

    /// The derivation ∂ : A^p -> A^{p-1}, ∂(e_i) = 1, as an integer matrix.
    Matrix<std::int64_t> boundary_matrix(int p) const {
        Matrix<std::int64_t> out(dim(p), dim(p - 1), 0);
        if (p <= 0) return out;
        const auto& src = basis(p);
        for (std::size_t r = 0; r < src.size(); ++r) {
            int k = 0;
            for (int e : elements(src[r])) {
                const Mask face = src[r] & ~bit(e);
                out(r, *index_of(face)) += (k % 2 == 0) ? 1 : -1;
                ++k;
            }
        }
        return out;
    }

    /// Hilbert series coefficients dim A^p.
    std::vector<long long> hilbert_series() const {
        std::vector<long long> h;
        for (int p = 0; p <= rank_; ++p) h.push_back(static_cast<long long>(dim(p)));
        while (!h.empty() && h.back() == 0) h.pop_back();
        return h;
    }

  private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    struct BrokenCircuit {
        Mask broken;
        Mask circuit;
    };

    void check_vector_length(std::size_t len) const {
        if (len != static_cast<std::size_t>(m_.size()))
            throw std::invalid_argument("vector length " + std::to_string(len) + " does not match n = " +
                                        std::to_string(m_.size()));
    }

    bool contains_broken_circuit(Mask s) const {
        for (const auto& b : broken_)
            if (contains(s, b.broken)) return true;
        return false;
    }

    void compute_normal_form(Mask s) {
        if (done_[s]) return;
        done_[s] = 1;
        IntVector& out = nf_[s];
        if (index_[s] != kNone) {
            out = {{index_[s], 1}};
            return;
        }
        const BrokenCircuit* found = nullptr;
        for (const auto& b : broken_)
            if (contains(s, b.broken)) {
                found = &b;
                break;
            }
        // s is independent and not NBC, so some broken circuit lies in s.
        const Mask rest = s & ~found->broken;
        const int base_sign = shuffle_sign(found->broken, rest);
        // e_{C - c1} = Σ_{k >= 2} (-1)^k e_{C - c_k}, C = {c1 < c2 < ... }.
        IntVector acc;
        int k = 0;
        for (int c : elements(found->circuit)) {
            ++k;
            if (k == 1) continue;
            const Mask face = found->circuit & ~bit(c);
            const Mask t = face | rest;
            if (!m_.is_independent(t)) continue;
            compute_normal_form(t);
            const int sign = ((k % 2 == 0) ? 1 : -1) * base_sign * shuffle_sign(face, rest);
            detail::axpy(acc, sign, nf_[t]);
        }
        nf_[s] = std::move(acc);
    }

    Matroid m_;
    bool zero_ = false;
    int rank_ = 0;
    std::vector<BrokenCircuit> broken_;
    std::vector<std::vector<Mask>> bases_;
    std::vector<std::uint32_t> index_;
    std::vector<IntVector> nf_;
    std::vector<std::uint8_t> done_;
    std::vector<std::vector<MultEntry>> mult_;
};

/// A homogeneous element of A(M) over a field, stored sparsely in NBC
/// coordinates with no zero coefficients.
template <class F>
class OsElement {
  public:
    using value_type = typename F::value_type;

    OsElement(const OsAlgebra& algebra, F field, int degree)
        : algebra_(&algebra), field_(std::move(field)), degree_(degree) {}

    /// e_{i1} ... e_{ik} in normal form.
    static OsElement monomial(const OsAlgebra& algebra, const F& field, const std::vector<int>& sequence) {
        OsElement out(algebra, field, static_cast<int>(sequence.size()));
        for (auto [i, c] : algebra.normal_form(sequence)) out.coeffs_[i] = field.from_int(c);
        return out;
    }

    static OsElement one(const OsAlgebra& algebra, const F& field) { return monomial(algebra, field, {}); }

    /// The degree-one element Σ v_i e_i.
    static OsElement from_vector(const OsAlgebra& algebra, const F& field, const std::vector<value_type>& v) {
        if (v.size() != static_cast<std::size_t>(algebra.ground_size()))
            throw std::invalid_argument("vector length does not match ground set");
        OsElement out(algebra, field, 1);
        for (int e = 1; e <= algebra.ground_size(); ++e) {
            const auto& x = v[static_cast<std::size_t>(e - 1)];
            if (field.is_zero(x)) continue;
            for (auto [i, c] : algebra.normal_form(bit(e))) out.add_to(i, field.mul(field.from_int(c), x));
        }
        return out;
    }

    /// Element with the given dense NBC coordinates.
    static OsElement from_coordinates(const OsAlgebra& algebra, const F& field, int degree,
                                      const std::vector<value_type>& coords) {
        if (coords.size() != algebra.dim(degree)) throw std::invalid_argument("coordinate vector has wrong length");
        OsElement out(algebra, field, degree);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (!field.is_zero(coords[i])) out.coeffs_[static_cast<std::uint32_t>(i)] = coords[i];
        return out;
    }

    const OsAlgebra& algebra() const { return *algebra_; }
    const F& field() const { return field_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<std::uint32_t, value_type>& terms() const { return coeffs_; }

    std::vector<value_type> coordinates() const {
        std::vector<value_type> out(algebra_->dim(degree_), field_.zero());
        for (const auto& [i, c] : coeffs_) out[i] = c;
        return out;
    }

    OsElement operator+(const OsElement& other) const {
        check_compatible(other);
        if (other.degree_ != degree_) throw std::invalid_argument("sum of elements of different degree");
        OsElement out = *this;
        for (const auto& [i, c] : other.coeffs_) out.add_to(i, c);
        return out;
    }

    OsElement operator-() const {
        OsElement out = *this;
        for (auto& [i, c] : out.coeffs_) c = field_.neg(c);
        return out;
    }

    OsElement operator-(const OsElement& other) const { return *this + (-other); }

    OsElement scaled(const value_type& s) const {
        OsElement out(*algebra_, field_, degree_);
        if (field_.is_zero(s)) return out;
        for (const auto& [i, c] : coeffs_) out.coeffs_[i] = field_.mul(c, s);
        return out;
    }

    /// Graded-commutative product in normal form.
    OsElement operator*(const OsElement& other) const {
        check_compatible(other);
        OsElement out(*algebra_, field_, degree_ + other.degree_);
        const auto& left = algebra_->basis(degree_);
        const auto& right = algebra_->basis(other.degree_);
        for (const auto& [i, x] : coeffs_)
            for (const auto& [j, y] : other.coeffs_) {
                const Mask s = left[i], t = right[j];
                if (s & t) continue;
                const auto& nf = algebra_->normal_form(s | t);
                if (nf.empty()) continue;
                value_type xy = field_.mul(x, y);
                if (shuffle_sign(s, t) < 0) xy = field_.neg(xy);
                for (auto [k, c] : nf) out.add_to(k, field_.mul(field_.from_int(c), xy));
            }
        return out;
    }

    /// The derivation ∂ with ∂(e_i) = 1.
    OsElement boundary() const {
        OsElement out(*algebra_, field_, degree_ - 1);
        if (degree_ <= 0) return out;
        const auto& src = algebra_->basis(degree_);
        for (const auto& [i, x] : coeffs_) {
            int k = 0;
            for (int e : elements(src[i])) {
                const auto idx = *algebra_->index_of(src[i] & ~bit(e));
                out.add_to(static_cast<std::uint32_t>(idx), (k % 2 == 0) ? x : field_.neg(x));
                ++k;
            }
        }
        return out;
    }

    friend bool operator==(const OsElement& a, const OsElement& b) {
        if (a.algebra_ != b.algebra_ || a.degree_ != b.degree_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        auto it = b.coeffs_.begin();
        for (const auto& [i, c] : a.coeffs_) {
            if (it->first != i || !a.field_.equal(it->second, c)) return false;
            ++it;
        }
        return true;
    }

  private:
    void check_compatible(const OsElement& other) const {
        if (algebra_ != other.algebra_) throw std::invalid_argument("elements belong to different algebras");
    }

    void add_to(std::uint32_t i, const value_type& c) {
        if (field_.is_zero(c)) return;
        auto it = coeffs_.find(i);
        if (it == coeffs_.end()) {
            coeffs_.emplace(i, c);
            return;
        }
        it->second = field_.add(it->second, c);
        if (field_.is_zero(it->second)) coeffs_.erase(it);
    }

    const OsAlgebra* algebra_;
    F field_;
    int degree_;
    std::map<std::uint32_t, value_type> coeffs_;
};

/// Bases of the projective subalgebra Ā(M) = ker ∂ in each degree, as rows in
/// NBC coordinates.
template <class F>
struct ProjectiveBasis {
    std::vector<Matrix<typename F::value_type>> degrees;

    std::size_t dim(int p) const {
        if (p < 0 || static_cast<std::size_t>(p) >= degrees.size()) return 0;
        return degrees[static_cast<std::size_t>(p)].rows();
    }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& m : degrees) d.push_back(m.rows());
        while (!d.empty() && d.back() == 0) d.pop_back();
        return d;
    }
};

template <class F>
ProjectiveBasis<F> projective_basis(const OsAlgebra& algebra, const F& field) {
    ProjectiveBasis<F> out;
    for (int p = 0; p <= algebra.top_degree(); ++p) {
        if (p == 0 || algebra.dim(p) == 0) {
            out.degrees.push_back(identity(field, algebra.dim(p)));
            continue;
        }
        out.degrees.push_back(left_kernel(field, to_field(field, algebra.boundary_matrix(p))));
    }
    for (int p = 0; p <= algebra.top_degree(); ++p)
        if (algebra.dim(p) != out.dim(p) + out.dim(p - 1))
            throw std::logic_error("projective basis violates dim A^p = dim Ā^p + dim Ā^{p-1}");
    return out;
}

/// Per-degree matrices of the algebra map A(M1) -> A(M2) induced by a
/// complete weak map, e_i ↦ e_{f(i)} and e_i ↦ 0 when f(i) = 0.
inline std::vector<Matrix<std::int64_t>> induced_map(const WeakMap& f, const OsAlgebra& source,
                                                     const OsAlgebra& target) {
    if (!(source.matroid() == f.source()) || !(target.matroid() == f.target()))
        throw std::invalid_argument("algebras do not match the weak map");
    if (!f.is_complete()) throw IncompleteMap("weak map is not complete; it induces no algebra map");
    std::vector<Matrix<std::int64_t>> out;
    const int top = std::max(source.top_degree(), 0);
    for (int p = 0; p <= top; ++p) {
        Matrix<std::int64_t> m(source.dim(p), target.dim(p), 0);
        const auto& src = source.basis(p);
        for (std::size_t r = 0; r < src.size(); ++r) {
            std::vector<int> image;
            bool vanishes = false;
            for (int e : elements(src[r])) {
                const int v = f(e);
                if (v == 0) {
                    vanishes = true;
                    break;
                }
                image.push_back(v);
            }
            if (vanishes) continue;
            for (auto [col, c] : target.normal_form(image)) m(r, col) = c;
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace resonator
