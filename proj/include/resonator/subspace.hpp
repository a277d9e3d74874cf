#pragma once

// Linear subspaces of k^n in canonical reduced row echelon form.  Two
// subspaces are equal exactly when their representations are equal.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resonator/field.hpp"
#include "resonator/linalg.hpp"
#include "resonator/matroid.hpp"

namespace resonator {

template <class F>
class Subspace {
  public:
    using value_type = typename F::value_type;
    using Vector = std::vector<value_type>;

    Subspace(F field, std::size_t ambient) : field_(std::move(field)), basis_(0, ambient), ambient_(ambient) {}

    /// The span of the given rows.
    static Subspace span(const F& field, std::size_t ambient, const std::vector<Vector>& rows) {
        return span(field, Matrix<value_type>::from_rows(rows, ambient));
    }

    static Subspace span(const F& field, const Matrix<value_type>& rows) {
        Subspace s(field, rows.cols());
        s.basis_ = rref(field, rows);
        return s;
    }

    /// The common zero set of the linear forms given as rows.
    static Subspace solutions(const F& field, std::size_t ambient, const std::vector<Vector>& equations) {
        if (equations.empty()) return whole(field, ambient);
        return span(field, right_kernel(field, Matrix<value_type>::from_rows(equations, ambient)));
    }

    static Subspace zero(const F& field, std::size_t ambient) { return Subspace(field, ambient); }

    static Subspace whole(const F& field, std::size_t ambient) {
        return span(field, identity(field, ambient));
    }

    /// V̄ = {v : Σ v_i = 0}.
    static Subspace sum_zero(const F& field, std::size_t ambient) {
        return solutions(field, ambient, {Vector(ambient, field.one())});
    }

    const F& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<value_type>& basis() const { return basis_; }
    Vector basis_vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vector& v) const {
        check_length(v.size());
        Matrix<value_type> m = basis_;
        m.append_row(v);
        return rank(field_, m) == dim();
    }

    bool contains(const Subspace& other) const {
        check_ambient(other);
        return sum(other).dim() == dim();
    }

    Subspace sum(const Subspace& other) const {
        check_ambient(other);
        Matrix<value_type> m = basis_;
        for (std::size_t r = 0; r < other.dim(); ++r) m.append_row(other.basis_.row(r));
        return span(field_, m);
    }

    Subspace intersect(const Subspace& other) const {
        check_ambient(other);
        // Intersection = solutions of both sets of defining equations.
        auto eqs = equations();
        auto more = other.equations();
        eqs.insert(eqs.end(), more.begin(), more.end());
        return solutions(field_, ambient_, eqs);
    }

    /// Linear forms whose common zero set is this subspace.
    std::vector<Vector> equations() const {
        auto k = right_kernel(field_, basis_);
        std::vector<Vector> out;
        for (std::size_t r = 0; r < k.rows(); ++r) out.push_back(k.row(r));
        return out;
    }

    /// Σ c_j b_j for the canonical basis b_j.
    Vector point(const std::vector<value_type>& params) const {
        if (params.size() != dim()) throw std::invalid_argument("parameter count does not match dimension");
        Vector v(ambient_, field_.zero());
        for (std::size_t j = 0; j < dim(); ++j) {
            if (field_.is_zero(params[j])) continue;
            for (std::size_t c = 0; c < ambient_; ++c)
                v[c] = field_.add(v[c], field_.mul(params[j], basis_(j, c)));
        }
        return v;
    }

    /// A point with parameters drawn uniformly from {-box..box} (rationals)
    /// or from the whole prime field.
    template <class Rng>
    Vector sample(Rng& rng, std::int64_t box) const {
        return point(sample_parameters(field_, dim(), rng, box));
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t r = 0; r < dim(); ++r) {
            if (r) s += ",";
            s += "(";
            for (std::size_t c = 0; c < ambient_; ++c) {
                if (c) s += ",";
                s += field_.to_string(basis_(r, c));
            }
            s += ")";
        }
        return s + "]";
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && matrices_equal(a.field_, a.basis_, b.basis_);
    }

    /// Deterministic total order: by dimension, then entrywise.
    friend bool operator<(const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (std::size_t r = 0; r < a.dim(); ++r)
            for (std::size_t c = 0; c < a.ambient_; ++c) {
                const auto &x = a.basis_(r, c), &y = b.basis_(r, c);
                if (!a.field_.equal(x, y)) return a.field_.less(x, y);
            }
        return false;
    }

    template <class Rng>
    static std::vector<value_type> sample_parameters(const F& field, std::size_t count, Rng& rng, std::int64_t box) {
        std::vector<value_type> out;
        out.reserve(count);
        if constexpr (std::is_same_v<F, Rationals>) {
            std::uniform_int_distribution<std::int64_t> dist(-box, box);
            for (std::size_t i = 0; i < count; ++i) out.push_back(field.from_int(dist(rng)));
        } else {
            std::uniform_int_distribution<std::uint64_t> dist(0, field.modulus() - 1);
            for (std::size_t i = 0; i < count; ++i) out.push_back(dist(rng));
        }
        return out;
    }

  private:
    void check_length(std::size_t len) const {
        if (len != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
    }
    void check_ambient(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw std::invalid_argument("subspaces live in different ambient spaces");
    }

    F field_;
    Matrix<value_type> basis_;
    std::size_t ambient_;
};

/// P_π: Σ_{j ∈ block} x_j = 0 for every block.
template <class F>
Subspace<F> p_subspace(const F& field, const Partition& pi) {
    const auto n = static_cast<std::size_t>(pi.ground_size());
    std::vector<typename F::value_type> row;
    std::vector<std::vector<typename F::value_type>> eqs;
    for (Mask block : pi.blocks()) {
        row.assign(n, field.zero());
        for (int e : elements(block)) row[static_cast<std::size_t>(e - 1)] = field.one();
        eqs.push_back(row);
    }
    return Subspace<F>::solutions(field, n, eqs);
}

/// Q_π: spanned by the block indicator vectors.
template <class F>
Subspace<F> q_subspace(const F& field, const Partition& pi) {
    const auto n = static_cast<std::size_t>(pi.ground_size());
    std::vector<std::vector<typename F::value_type>> rows;
    for (Mask block : pi.blocks()) {
        std::vector<typename F::value_type> row(n, field.zero());
        for (int e : elements(block)) row[static_cast<std::size_t>(e - 1)] = field.one();
        rows.push_back(row);
    }
    return Subspace<F>::span(field, n, rows);
}

/// True when P_π ∩ Q_π = 0 and dim P_π + dim Q_π = n.
template <class F>
bool complementary(const Subspace<F>& a, const Subspace<F>& b) {
    return a.dim() + b.dim() == a.ambient() && a.sum(b).dim() == a.ambient();
}

/// v(X) = Σ_{i ∈ X} v_i.
template <class F>
typename F::value_type flat_sum(const F& field, const std::vector<typename F::value_type>& v, Mask x) {
    auto s = field.zero();
    for (int e : elements(x)) s = field.add(s, v[static_cast<std::size_t>(e - 1)]);
    return s;
}

template <class F>
bool in_sum_zero(const F& field, const std::vector<typename F::value_type>& v) {
    auto s = field.zero();
    for (const auto& x : v) s = field.add(s, x);
    return field.is_zero(s);
}

}  // namespace resonator
