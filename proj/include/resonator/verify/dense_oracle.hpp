#pragma once

// Reference computation of A(M) = E / I(M) and of the cohomology of
// (A, ·v) by dense linear algebra on the full exterior algebra.  It shares
// nothing with the no-broken-circuit machinery: the ideal is spanned
// explicitly by the products ∂(e_C) e_T and reduced to echelon form, and
// quotient coordinates are read off its non-pivot columns.  Intended for
// small ground sets (n <= 10).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "resonator/matroid.hpp"

namespace resonator::verify {

namespace oracle_detail {

inline int sorted_insert_sign(std::uint32_t set, int e) {
    // (-1)^{#elements of set larger than e}, for e_set ∧ e_e.
    int larger = 0;
    for (int x = e + 1; x <= 32; ++x)
        if (set & (std::uint32_t{1} << (x - 1))) ++larger;
    return (larger % 2) ? -1 : 1;
}

/// Sign of e_a ∧ e_b relative to e_{a ∪ b}, or 0 when they overlap.
inline int wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int sign = 1;
    std::uint32_t acc = a;
    for (int e = 1; e <= 32; ++e)
        if (b & (std::uint32_t{1} << (e - 1))) {
            sign *= sorted_insert_sign(acc, e);
            acc |= std::uint32_t{1} << (e - 1);
        }
    return sign;
}

inline int size_of(std::uint32_t s) {
    int c = 0;
    for (; s; s &= s - 1) ++c;
    return c;
}

}  // namespace oracle_detail

/// Row space kept in reduced echelon form, with rows inserted one at a time.
template <class F>
class EchelonSpace {
  public:
    using value_type = typename F::value_type;

    EchelonSpace(F field, std::size_t cols) : field_(std::move(field)), cols_(cols) {}

    /// Inserts a row; returns true when it enlarged the space.
    bool insert(std::vector<value_type> row) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& c = row[pivots_[i]];
            if (field_.is_zero(c)) continue;
            const value_type factor = c;
            for (std::size_t k = 0; k < cols_; ++k)
                if (!field_.is_zero(rows_[i][k])) row[k] = field_.sub(row[k], field_.mul(factor, rows_[i][k]));
        }
        std::size_t pivot = 0;
        while (pivot < cols_ && field_.is_zero(row[pivot])) ++pivot;
        if (pivot == cols_) return false;
        const auto inv = field_.inv(row[pivot]);
        for (auto& x : row) x = field_.mul(x, inv);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const value_type factor = rows_[i][pivot];
            if (field_.is_zero(factor)) continue;
            for (std::size_t k = 0; k < cols_; ++k)
                if (!field_.is_zero(row[k])) rows_[i][k] = field_.sub(rows_[i][k], field_.mul(factor, row[k]));
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(pivot);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<value_type>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

  private:
    F field_;
    std::size_t cols_;
    std::vector<std::vector<value_type>> rows_;
    std::vector<std::size_t> pivots_;
};

/// E / I(M) by brute force.
template <class F>
class DenseOsOracle {
  public:
    using value_type = typename F::value_type;

    DenseOsOracle(const Matroid& m, F field) : field_(std::move(field)), n_(m.size()) {
        if (n_ > 12) throw std::invalid_argument("dense oracle limited to n <= 12");
        monomials_.assign(static_cast<std::size_t>(n_ + 1), {});
        for (std::uint32_t s = 0; s < (std::uint32_t{1} << n_); ++s)
            monomials_[static_cast<std::size_t>(oracle_detail::size_of(s))].push_back(s);
        for (auto& list : monomials_)
            for (std::size_t i = 0; i < list.size(); ++i) position_[list[i]] = i;

        // Ideal generators ∂(e_C) e_T, degree by degree.
        std::vector<EchelonSpace<F>> ideal;
        for (int p = 0; p <= n_; ++p) ideal.emplace_back(field_, monomials_[static_cast<std::size_t>(p)].size());
        for (std::uint32_t c : m.circuits()) {
            const int size = oracle_detail::size_of(c);
            // ∂(e_C) as a map subset -> coefficient.
            std::map<std::uint32_t, int> boundary;
            int k = 0;
            for (int e = 1; e <= n_; ++e)
                if (c & (std::uint32_t{1} << (e - 1))) {
                    boundary[c & ~(std::uint32_t{1} << (e - 1))] = (k % 2 == 0) ? 1 : -1;
                    ++k;
                }
            for (std::uint32_t t = 0; t < (std::uint32_t{1} << n_); ++t) {
                const int degree = size - 1 + oracle_detail::size_of(t);
                if (degree > n_) continue;
                std::vector<value_type> row(monomials_[static_cast<std::size_t>(degree)].size(), field_.zero());
                for (const auto& [face, coeff] : boundary) {
                    const int sign = oracle_detail::wedge_sign(face, t);
                    if (sign == 0) continue;
                    const auto col = position_.at(face | t);
                    row[col] = field_.add(row[col], field_.from_int(coeff * sign));
                }
                ideal[static_cast<std::size_t>(degree)].insert(std::move(row));
            }
        }

        // Quotient coordinates: non-pivot columns of each echelon form.
        for (int p = 0; p <= n_; ++p) {
            const auto& space = ideal[static_cast<std::size_t>(p)];
            const std::size_t cols = monomials_[static_cast<std::size_t>(p)].size();
            std::vector<char> is_pivot(cols, 0);
            for (auto c : space.pivots()) is_pivot[c] = 1;
            std::vector<std::size_t> free_index(cols, 0);
            std::size_t free = 0;
            for (std::size_t c = 0; c < cols; ++c)
                if (!is_pivot[c]) free_index[c] = free++;
            dims_.push_back(free);
            // Normal form of each monomial in the quotient coordinates.
            std::vector<std::vector<value_type>> nf(cols, std::vector<value_type>(free, field_.zero()));
            for (std::size_t c = 0; c < cols; ++c)
                if (!is_pivot[c]) nf[c][free_index[c]] = field_.one();
            for (std::size_t r = 0; r < space.rank(); ++r) {
                const auto& row = space.rows()[r];
                auto& target = nf[space.pivots()[r]];
                for (std::size_t c = 0; c < cols; ++c)
                    if (!is_pivot[c] && !field_.is_zero(row[c])) target[free_index[c]] = field_.neg(row[c]);
            }
            normal_forms_.push_back(std::move(nf));
        }
        while (!dims_.empty() && dims_.back() == 0) dims_.pop_back();
    }

    /// dim A^p for p = 0..top nonzero degree.
    const std::vector<std::size_t>& dims() const { return dims_; }

    std::size_t dim(int p) const {
        return (p < 0 || static_cast<std::size_t>(p) >= dims_.size()) ? 0 : dims_[static_cast<std::size_t>(p)];
    }

    /// Rank of ·v : A^p -> A^{p+1}.
    std::size_t multiplication_rank(const std::vector<value_type>& v, int p) const {
        if (p < 0 || dim(p) == 0 || dim(p + 1) == 0) return 0;
        EchelonSpace<F> image(field_, dim(p + 1));
        const auto& nf_next = normal_forms_[static_cast<std::size_t>(p + 1)];
        // A^p is spanned by the images of all degree-p monomials.
        for (std::uint32_t s : monomials_[static_cast<std::size_t>(p)]) {
            std::vector<value_type> row(dim(p + 1), field_.zero());
            for (int e = 1; e <= n_; ++e) {
                const auto& x = v[static_cast<std::size_t>(e - 1)];
                const std::uint32_t b = std::uint32_t{1} << (e - 1);
                if (field_.is_zero(x) || (s & b)) continue;
                const int sign = oracle_detail::wedge_sign(s, b);
                const auto scaled = sign > 0 ? x : field_.neg(x);
                const auto& nf = nf_next[position_.at(s | b)];
                for (std::size_t c = 0; c < row.size(); ++c)
                    if (!field_.is_zero(nf[c])) row[c] = field_.add(row[c], field_.mul(scaled, nf[c]));
            }
            image.insert(std::move(row));
        }
        return image.rank();
    }

    std::vector<std::size_t> cohomology(const std::vector<value_type>& v) const {
        if (v.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("point length mismatch");
        std::vector<std::size_t> ranks;
        for (std::size_t p = 0; p < dims_.size(); ++p) ranks.push_back(multiplication_rank(v, static_cast<int>(p)));
        std::vector<std::size_t> out;
        for (std::size_t p = 0; p < dims_.size(); ++p) out.push_back(dims_[p] - ranks[p] - (p ? ranks[p - 1] : 0));
        return out;
    }

  private:
    F field_;
    int n_;
    std::vector<std::vector<std::uint32_t>> monomials_;
    std::map<std::uint32_t, std::size_t> position_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<std::vector<value_type>>> normal_forms_;
};

}  // namespace resonator::verify
