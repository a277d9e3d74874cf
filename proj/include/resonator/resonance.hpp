#pragma once

// Cohomology of the Aomoto complexes (A, ·v) and (Ā, ·v), membership in the
// resonance varieties R^p_d, and certified containment of linear subspaces.
//
// dim H^p(A, ·v) = dim A^p - rank D_p - rank D_{p-1}, where D_p : A^p ->
// A^{p+1} is right multiplication by v.  The Ā complex uses the restriction
// of D_p to a basis K_p of Ā^p; it is a complex only for v in V̄.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "resonator/field.hpp"
#include "resonator/linalg.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/parallel.hpp"
#include "resonator/subspace.hpp"

namespace resonator {

/// A mathematical hypothesis of an operation does not hold for the input.
class HypothesisError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr std::int64_t kDefaultBox = 10000;
inline constexpr int kDefaultTrials = 8;
/// 2^61 - 1, used for modular rank bounds over Q.
inline constexpr std::uint64_t kCertificatePrime = 2305843009213693951ULL;

template <class F>
struct CohomologyProfile {
    std::vector<std::size_t> dims;
    std::optional<std::vector<std::size_t>> projective;
    std::vector<typename F::value_type> point;
};

namespace detail {

/// Scales a rational vector to an integer vector on the same line.
inline std::vector<mpz_class> integer_direction(const std::vector<mpq_class>& v) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_num() * (l / x.get_den()));
    return out;
}

inline Matrix<mpz_class> multiply_z(const Matrix<mpz_class>& a, const Matrix<mpz_class>& b) {
    Matrix<mpz_class> out(a.rows(), b.cols(), mpz_class(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

inline double binomial(std::size_t n, std::size_t k) {
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace detail

/// Evaluates the Aomoto complexes of one algebra over one field.  Immutable
/// after construction and safe to share between threads.
template <class F>
class ResonanceEngine {
  public:
    using value_type = typename F::value_type;
    using Vector = std::vector<value_type>;

    ResonanceEngine(const OsAlgebra& algebra, F field)
        : algebra_(&algebra), field_(std::move(field)), projective_(projective_basis(algebra, field_)) {
        if constexpr (std::is_same_v<F, Rationals>) {
            for (const auto& k : projective_.degrees) projective_z_.push_back(clear_denominators(k));
        }
    }

    const OsAlgebra& algebra() const { return *algebra_; }
    const F& field() const { return field_; }
    const ProjectiveBasis<F>& projective() const { return projective_; }
    int top_degree() const { return algebra_->top_degree(); }

    std::size_t complex_dim(int p, bool projective) const {
        return projective ? projective_.dim(p) : algebra_->dim(p);
    }

    /// Rows and columns of the differential out of degree p.
    std::pair<std::size_t, std::size_t> differential_shape(int p, bool projective) const {
        return {complex_dim(p, projective), algebra_->dim(p + 1)};
    }

    /// Rank of ·v : A^p -> A^{p+1} (or its restriction to Ā^p).
    std::size_t differential_rank(const Vector& v, int p, bool projective) const {
        check_point(v);
        if constexpr (std::is_same_v<F, Rationals>) {
            return rational_ranks(v, p, p, projective)[0];
        } else {
            return direct_rank(v, p, projective);
        }
    }

    /// The same rank by elimination on the single matrix, with no modular
    /// shortcut (Bareiss over Q).
    std::size_t direct_rank(const Vector& v, int p, bool projective) const {
        check_point(v);
        if (!has_differential(p, projective)) return 0;
        if constexpr (std::is_same_v<F, Rationals>) {
            return rank_bareiss(integer_differential(v, p, projective));
        } else {
            auto d = algebra_->multiplication_matrix(field_, v, p);
            if (projective) d = multiply(field_, projective_.degrees[static_cast<std::size_t>(p)], d);
            return rank(field_, std::move(d));
        }
    }

    /// dim H^p of the complex at v.
    std::size_t cohomology_dim(const Vector& v, int p, bool projective = false) const {
        if (p < 0 || p > top_degree()) return 0;
        check_projective_point(v, projective);
        std::size_t below = 0, here = 0;
        if constexpr (std::is_same_v<F, Rationals>) {
            const auto r = rational_ranks(v, p - 1, p, projective);
            below = r[0];
            here = r[1];
        } else {
            below = direct_rank(v, p - 1, projective);
            here = direct_rank(v, p, projective);
        }
        return complex_dim(p, projective) - here - below;
    }

    /// dim H^p for p = 0..rank.
    std::vector<std::size_t> cohomology_dims(const Vector& v, bool projective = false) const {
        check_projective_point(v, projective);
        const int top = std::max(top_degree(), 0);
        std::vector<std::size_t> ranks;
        if constexpr (std::is_same_v<F, Rationals>) {
            ranks = rational_ranks(v, 0, top, projective);
        } else {
            for (int p = 0; p <= top; ++p) ranks.push_back(direct_rank(v, p, projective));
        }
        std::vector<std::size_t> out;
        for (int p = 0; p <= top; ++p) {
            std::size_t r = ranks[static_cast<std::size_t>(p)];
            if (p > 0) r += ranks[static_cast<std::size_t>(p - 1)];
            out.push_back(complex_dim(p, projective) - r);
        }
        return out;
    }

    CohomologyProfile<F> profile(const Vector& v, bool with_projective = false) const {
        CohomologyProfile<F> out;
        out.point = v;
        out.dims = cohomology_dims(v, false);
        if (with_projective) out.projective = cohomology_dims(v, true);
        return out;
    }

    void check_point(const Vector& v) const {
        if (v.size() != static_cast<std::size_t>(algebra_->ground_size()))
            throw std::invalid_argument("point has length " + std::to_string(v.size()) + ", expected " +
                                        std::to_string(algebra_->ground_size()));
    }

  private:
    bool has_differential(int p, bool projective) const {
        return p >= 0 && p < top_degree() && !algebra_->is_zero() && complex_dim(p, projective) != 0;
    }

    Matrix<mpz_class> integer_differential(const Vector& v, int p, bool projective) const {
        auto d = algebra_->multiplication_matrix_z(detail::integer_direction(v), p);
        if (projective) d = detail::multiply_z(projective_z_[static_cast<std::size_t>(p)], d);
        return d;
    }

    /// Exact ranks of d_lo..d_hi over Q.  Each rank mod a large prime is a
    /// lower bound; since d_p d_{p-1} = 0, rank d_p is at most
    /// dim C^p - rank d_{p-1} and dim C^{p+1} - rank d_{p+1}.  A rank whose
    /// modular value meets one of these upper bounds is exact; the others
    /// go through Bareiss elimination.
    std::vector<std::size_t> rational_ranks(const Vector& v, int lo, int hi, bool projective) const {
        const PrimeField modulus(kCertificatePrime);
        const int first = lo - 1, last = hi + 1;
        const auto slot = [&](int k) { return static_cast<std::size_t>(k - first); };
        std::vector<std::size_t> bound(static_cast<std::size_t>(last - first + 1), 0);
        std::vector<Matrix<mpz_class>> mats(bound.size());
        for (int k = first; k <= last; ++k) {
            if (!has_differential(k, projective)) continue;
            auto& d = mats[slot(k)];
            d = integer_differential(v, k, projective);
            Matrix<std::uint64_t> reduced(d.rows(), d.cols());
            for (std::size_t r = 0; r < d.rows(); ++r)
                for (std::size_t c = 0; c < d.cols(); ++c) reduced(r, c) = modulus.from_mpz(d(r, c));
            bound[slot(k)] = rank(modulus, std::move(reduced));
        }
        // Off the hyperplane the restricted maps need not compose to zero.
        const bool is_complex = !projective || in_sum_zero(field_, v);
        std::vector<std::size_t> out;
        for (int k = lo; k <= hi; ++k) {
            if (!has_differential(k, projective)) {
                out.push_back(0);
                continue;
            }
            const auto& d = mats[slot(k)];
            std::size_t upper = std::min(d.rows(), d.cols());
            if (is_complex) {
                upper = std::min(upper, complex_dim(k, projective) - bound[slot(k - 1)]);
                upper = std::min(upper, complex_dim(k + 1, projective) - bound[slot(k + 1)]);
            }
            if (bound[slot(k)] != upper) bound[slot(k)] = rank_bareiss(d);
            out.push_back(bound[slot(k)]);
        }
        return out;
    }

    void check_projective_point(const Vector& v, bool projective) const {
        check_point(v);
        if (projective && !in_sum_zero(field_, v))
            throw HypothesisError("the projective complex requires a point with coordinate sum zero");
    }

    const OsAlgebra* algebra_;
    F field_;
    ProjectiveBasis<F> projective_;
    std::vector<Matrix<mpz_class>> projective_z_;
};

template <class F>
CohomologyProfile<F> cohomology_profile(const OsAlgebra& algebra, const F& field,
                                        const std::vector<typename F::value_type>& v, bool with_projective = false) {
    return ResonanceEngine<F>(algebra, field).profile(v, with_projective);
}

/// v ∈ R^p_d: dim H^p(A, ·v) >= d.
template <class F>
bool in_resonance(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v, int p, std::size_t d,
                  bool projective = false) {
    if (p < 0 || p > engine.top_degree()) throw std::out_of_range("degree outside 0..rank");
    return engine.cohomology_dim(v, p, projective) >= d;
}

/// Profiles of v and λv agree.
template <class F>
bool scaling_invariance_check(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v,
                              const typename F::value_type& lambda) {
    const F& field = engine.field();
    if (field.is_zero(lambda)) throw std::invalid_argument("scaling factor must be nonzero");
    std::vector<typename F::value_type> w;
    for (const auto& x : v) w.push_back(field.mul(lambda, x));
    return engine.cohomology_dims(v) == engine.cohomology_dims(w);
}

// ---------------------------------------------------------------- containment

enum class Verdict { contained, not_contained, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::contained: return "contained";
        case Verdict::not_contained: return "not_contained";
        default: return "inconclusive";
    }
}

enum class ContainmentMode { probabilistic, symbolic };

inline const char* to_string(ContainmentMode m) {
    return m == ContainmentMode::symbolic ? "symbolic" : "probabilistic";
}

struct ContainmentOptions {
    ContainmentMode mode = ContainmentMode::probabilistic;
    int trials = kDefaultTrials;
    std::int64_t box = kDefaultBox;
    std::uint64_t seed = kDefaultSeed;
    bool projective = false;
    /// Largest interpolation lattice the symbolic mode will evaluate.
    std::size_t lattice_limit = 200000;
};

template <class F>
struct ContainmentResult {
    Verdict verdict = Verdict::inconclusive;
    bool exact = false;
    /// dim H^p at a generic point of W (symbolic) or the least value seen.
    std::size_t generic_dim = 0;
    std::optional<std::vector<typename F::value_type>> witness;
    std::size_t witness_dim = 0;
    /// Upper bound on the chance that a probabilistic "contained" is wrong.
    double failure_bound = 0;
    std::string note;
};

namespace detail {

/// Enumerates α ∈ N^vars with |α| <= degree in graded lexicographic order.
template <class Fn>
bool for_each_lattice_point(std::size_t vars, std::size_t degree, Fn&& fn) {
    std::vector<std::size_t> alpha(vars, 0);
    for (;;) {
        if (!fn(alpha)) return false;
        // Next composition with total <= degree.
        std::size_t total = 0;
        for (auto a : alpha) total += a;
        std::size_t i = 0;
        for (; i < vars; ++i) {
            if (total < degree) {
                ++alpha[i];
                break;
            }
            total -= alpha[i];
            alpha[i] = 0;
        }
        if (i == vars) return true;
    }
}

template <class F>
std::vector<typename F::value_type> lattice_parameters(const F& field, const std::vector<std::size_t>& alpha) {
    std::vector<typename F::value_type> params{field.one()};
    for (auto a : alpha) params.push_back(field.from_int(static_cast<long long>(a)));
    return params;
}

}  // namespace detail

/// Exact generic rank of the differential out of degree p over the points of
/// W.  Entries are linear forms in the parameters of W, so every minor of
/// size r + 1 is a form of degree r + 1; it vanishes identically once it
/// vanishes on the principal lattice of that degree (after setting the first
/// parameter to 1).  Returns nullopt when the lattice is too large or the
/// field too small for the lattice to be unisolvent.
template <class F>
std::optional<std::size_t> generic_differential_rank(const ResonanceEngine<F>& engine, const Subspace<F>& w, int p,
                                                     bool projective, std::size_t lattice_limit) {
    const F& field = engine.field();
    const auto [rows, cols] = engine.differential_shape(p, projective);
    const std::size_t cap = std::min(rows, cols);
    if (p < 0 || p >= engine.top_degree() || cap == 0 || w.dim() == 0) return 0;
    const std::size_t vars = w.dim() - 1;

    std::size_t best = 0;
    // Cheap lower bound from a few pseudo-random points first.
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 3 && best < cap; ++i) {
        auto params = Subspace<F>::sample_parameters(field, w.dim(), rng, 1000);
        best = std::max(best, engine.differential_rank(w.point(params), p, projective));
    }
    for (;;) {
        if (best == cap) return best;
        const std::size_t degree = best + 1;
        if (field.characteristic() != 0 && field.characteristic() <= degree) return std::nullopt;
        if (detail::binomial(degree + vars, vars) > static_cast<double>(lattice_limit)) return std::nullopt;
        std::size_t found = best;
        detail::for_each_lattice_point(vars, degree, [&](const std::vector<std::size_t>& alpha) {
            const auto r = engine.differential_rank(w.point(detail::lattice_parameters(field, alpha)), p, projective);
            if (r > found) {
                found = r;
                return false;
            }
            return true;
        });
        if (found == best) return best;
        best = found;
    }
}

/// Decides whether every point of W lies in R^p_d.
template <class F>
ContainmentResult<F> subspace_in_resonance(const ResonanceEngine<F>& engine, const Subspace<F>& w, int p,
                                           std::size_t d, const ContainmentOptions& options = {}) {
    using Vector = std::vector<typename F::value_type>;
    const F& field = engine.field();
    if (w.ambient() != static_cast<std::size_t>(engine.algebra().ground_size()))
        throw std::invalid_argument("subspace ambient dimension does not match the matroid");
    if (p < 0 || p > engine.top_degree()) throw std::out_of_range("degree outside 0..rank");
    const bool proj = options.projective;
    if (proj) {
        const auto vbar = Subspace<F>::sum_zero(field, w.ambient());
        if (!vbar.contains(w)) throw HypothesisError("the projective complex requires W inside the sum-zero hyperplane");
    }
    ContainmentResult<F> out;

    auto set_witness = [&](Vector v, std::size_t dim) {
        out.verdict = Verdict::not_contained;
        out.exact = true;
        out.witness = std::move(v);
        out.witness_dim = dim;
    };

    if (w.dim() == 0) {
        Vector zero(w.ambient(), field.zero());
        const auto dim = engine.cohomology_dim(zero, p, proj);
        out.generic_dim = dim;
        out.exact = true;
        if (dim >= d) out.verdict = Verdict::contained;
        else set_witness(zero, dim);
        return out;
    }

    if (options.mode == ContainmentMode::symbolic) {
        const auto upper = generic_differential_rank(engine, w, p, proj, options.lattice_limit);
        const auto lower = generic_differential_rank(engine, w, p - 1, proj, options.lattice_limit);
        if (!upper || !lower) {
            out.note = "interpolation lattice unavailable (too large, or field too small)";
            return out;
        }
        const std::size_t generic = engine.complex_dim(p, proj) - *upper - *lower;
        out.generic_dim = generic;
        out.exact = true;
        if (generic >= d) {
            out.verdict = Verdict::contained;
            return out;
        }
        // Both maximal minors are nonzero forms; their product is nonzero on
        // the principal lattice of degree upper + lower.
        const std::size_t vars = w.dim() - 1;
        const std::size_t degree = *upper + *lower;
        if (field.characteristic() != 0 && field.characteristic() <= degree) {
            out.exact = false;
            out.note = "generic rank drop certified but the field is too small to exhibit a witness";
            return out;
        }
        std::optional<Vector> witness;
        std::size_t witness_dim = 0;
        detail::for_each_lattice_point(vars, degree, [&](const std::vector<std::size_t>& alpha) {
            Vector v = w.point(detail::lattice_parameters(field, alpha));
            const auto dim = engine.cohomology_dim(v, p, proj);
            if (dim < d) {
                witness = std::move(v);
                witness_dim = dim;
                return false;
            }
            return true;
        });
        if (!witness) throw std::logic_error("symbolic containment: no witness found for a proper rank drop");
        set_witness(std::move(*witness), witness_dim);
        return out;
    }

    // Probabilistic: one sample per trial, each from its own seeded stream.
    const std::size_t trials = static_cast<std::size_t>(std::max(options.trials, 1));
    std::vector<Vector> points(trials);
    std::vector<std::size_t> dims(trials);
    parallel_for(trials, [&](std::size_t t) {
        std::mt19937_64 rng(options.seed + t);
        points[t] = w.sample(rng, options.box);
        dims[t] = engine.cohomology_dim(points[t], p, proj);
    });
    out.generic_dim = *std::min_element(dims.begin(), dims.end());
    for (std::size_t t = 0; t < trials; ++t)
        if (dims[t] < d) {
            set_witness(points[t], dims[t]);
            out.generic_dim = dims[t];
            return out;
        }
    auto [r1, c1] = engine.differential_shape(p, proj);
    auto [r0, c0] = engine.differential_shape(p - 1, proj);
    double degree = static_cast<double>(std::min(r1, c1) + (p > 0 ? std::min(r0, c0) : 0));
    double sample_size = field.characteristic() == 0 ? static_cast<double>(2 * options.box + 1)
                                                     : static_cast<double>(field.characteristic());
    double per_trial = std::min(1.0, degree / sample_size);
    out.failure_bound = 1;
    for (std::size_t t = 0; t < trials; ++t) out.failure_bound *= per_trial;
    if (out.failure_bound >= 1) {
        out.note = "sample space too small for a meaningful bound";
        return out;
    }
    out.verdict = Verdict::contained;
    return out;
}

}  // namespace resonator
