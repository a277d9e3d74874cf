#pragma once

// Dense exact linear algebra.
//
// Linear maps are stored in the row convention used everywhere in this
// library: a map U -> V is a dim(U) x dim(V) matrix whose j-th row is the
// image of the j-th basis vector of U.  Composition "g after f" is therefore
// the product F * G, and the image of a subspace with basis rows K is K * F.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "resonator/field.hpp"

namespace resonator {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    void append_row(const std::vector<T>& values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        if (values.size() != cols_) throw std::invalid_argument("row length mismatch");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    /// Keeps the first `rows` rows.
    void truncate_rows(std::size_t rows) {
        rows_ = std::min(rows_, rows);
        data_.resize(rows_ * cols_);
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(0, cols);
        m.cols_ = cols;
        for (const auto& r : rows) m.append_row(r);
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t rank_bareiss(Matrix<mpz_class> a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    mpz_class prev = 1;
    std::size_t rank = 0;
    mpz_class t;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        a.swap_rows(pivot, rank);
        const mpz_class& p = a(rank, c);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                // a(r,k) = (p * a(r,k) - a(r,c) * a(rank,k)) / prev, exact.
                t = p * a(r, k);
                t -= a(r, c) * a(rank, k);
                mpz_divexact(a(r, k).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(r, c) = 0;
        }
        prev = a(rank, c);
        ++rank;
    }
    return rank;
}

/// Scales every row of a rational matrix to a primitive integer row.
inline Matrix<mpz_class> clear_denominators(const Matrix<mpq_class>& a) {
    Matrix<mpz_class> out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < a.cols(); ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c).get_num() * (l / a(r, c).get_den());
    }
    return out;
}

namespace detail {

template <class F>
std::size_t rank_by_elimination(const F& field, Matrix<typename F::value_type> a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && field.is_zero(a(pivot, c))) ++pivot;
        if (pivot == rows) continue;
        a.swap_rows(pivot, rank);
        auto inv = field.inv(a(rank, c));
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (field.is_zero(a(r, c))) continue;
            auto factor = field.mul(a(r, c), inv);
            for (std::size_t k = c; k < cols; ++k)
                a(r, k) = field.sub(a(r, k), field.mul(factor, a(rank, k)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Exact rank over the field.  Rational input is cleared of denominators and
/// handed to Bareiss elimination; prime fields use ordinary elimination.
template <class F>
std::size_t rank(const F& field, Matrix<typename F::value_type> a) {
    if constexpr (std::is_same_v<F, Rationals>) {
        return rank_bareiss(clear_denominators(a));
    } else {
        return detail::rank_by_elimination(field, std::move(a));
    }
}

/// Reduced row echelon form.  Zero rows are dropped; `pivots` receives the
/// pivot column of each remaining row.
template <class F>
Matrix<typename F::value_type> rref(const F& field, Matrix<typename F::value_type> a,
                                    std::vector<std::size_t>* pivots = nullptr) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> piv;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && field.is_zero(a(pivot, c))) ++pivot;
        if (pivot == rows) continue;
        a.swap_rows(pivot, rank);
        auto inv = field.inv(a(rank, c));
        for (std::size_t k = c; k < cols; ++k) a(rank, k) = field.mul(a(rank, k), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || field.is_zero(a(r, c))) continue;
            auto factor = a(r, c);
            for (std::size_t k = c; k < cols; ++k)
                a(r, k) = field.sub(a(r, k), field.mul(factor, a(rank, k)));
        }
        piv.push_back(c);
        ++rank;
    }
    a.truncate_rows(rank);
    if (pivots) *pivots = std::move(piv);
    return a;
}

/// Basis (as rows) of the right kernel {x : A x^T = 0}, i.e. vectors
/// orthogonal to every row of A.
template <class F>
Matrix<typename F::value_type> right_kernel(const F& field, const Matrix<typename F::value_type>& a) {
    std::vector<std::size_t> pivots;
    auto r = rref(field, a, &pivots);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix<typename F::value_type> basis(0, cols);
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::value_type> v(cols, field.zero());
        v[free] = field.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(r(i, free));
        basis.append_row(v);
    }
    return basis;
}

/// Basis (as rows) of the left kernel {x : x A = 0}.
template <class F>
Matrix<typename F::value_type> left_kernel(const F& field, const Matrix<typename F::value_type>& a) {
    return right_kernel(field, a.transpose());
}

template <class F>
Matrix<typename F::value_type> multiply(const F& field, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix<typename F::value_type> out(a.rows(), b.cols(), field.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (field.is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
        }
    return out;
}

template <class F>
Matrix<typename F::value_type> identity(const F& field, std::size_t n) {
    Matrix<typename F::value_type> m(n, n, field.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

template <class F>
Matrix<typename F::value_type> to_field(const F& field, const Matrix<std::int64_t>& a) {
    Matrix<typename F::value_type> out(a.rows(), a.cols(), field.zero());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = field.from_int(a(r, c));
    return out;
}

template <class F>
bool matrices_equal(const F& field, const Matrix<typename F::value_type>& a,
                    const Matrix<typename F::value_type>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!field.equal(a(r, c), b(r, c))) return false;
    return true;
}

inline Matrix<std::int64_t> multiply_int(const Matrix<std::int64_t>& a, const Matrix<std::int64_t>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix<std::int64_t> out(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::int64_t prod, sum;
                if (__builtin_mul_overflow(a(i, k), b(k, j), &prod) ||
                    __builtin_add_overflow(out(i, j), prod, &sum))
                    throw std::overflow_error("integer matrix product overflow");
                out(i, j) = sum;
            }
        }
    return out;
}

}  // namespace resonator
