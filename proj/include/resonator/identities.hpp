#pragma once

// Pointwise structural identities relating the cohomology of (A, ·v) across
// matroid constructions.  Each check evaluates both sides at a given point
// and reports whether the identity holds there.

#include <algorithm>
#include <string>
#include <vector>

#include "resonator/matroid.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"

namespace resonator {

enum class CheckStatus { holds, violated, skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::holds: return "holds";
        case CheckStatus::violated: return "violated";
        default: return "skipped";
    }
}

struct CheckResult {
    CheckStatus status = CheckStatus::holds;
    std::string detail;

    bool ok() const { return status != CheckStatus::violated; }

    static CheckResult skipped(std::string why) { return {CheckStatus::skipped, std::move(why)}; }
    static CheckResult verdict(bool holds, std::string detail = {}) {
        return {holds ? CheckStatus::holds : CheckStatus::violated, std::move(detail)};
    }
};

namespace detail {

inline std::string dims_string(const std::vector<std::size_t>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

inline std::size_t at(const std::vector<std::size_t>& d, long p) {
    if (p < 0 || static_cast<std::size_t>(p) >= d.size()) return 0;
    return d[static_cast<std::size_t>(p)];
}

template <class F>
void require_sum_zero(const F& field, const std::vector<typename F::value_type>& v) {
    if (!in_sum_zero(field, v)) throw HypothesisError("point must have coordinate sum zero");
}

}  // namespace detail

/// If dim H^p >= 1 then dim H^{p+1} >= 1, for 0 <= p < rank.
template <class F>
CheckResult propagation_check(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v) {
    detail::require_sum_zero(engine.field(), v);
    const auto dims = engine.cohomology_dims(v);
    for (int p = 0; p < engine.top_degree(); ++p)
        if (detail::at(dims, p) >= 1 && detail::at(dims, p + 1) == 0)
            return CheckResult::verdict(false, "H^" + std::to_string(p) + " nonzero but H^" + std::to_string(p + 1) +
                                                   " zero in " + detail::dims_string(dims));
    return CheckResult::verdict(true, detail::dims_string(dims));
}

/// Σ (-1)^p dim H^p(Ā, ·v) = (-1)^{rank-1} β(M) for v in V̄.
template <class F>
CheckResult euler_check(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v) {
    detail::require_sum_zero(engine.field(), v);
    const auto dims = engine.cohomology_dims(v, true);
    long long chi = 0;
    for (std::size_t p = 0; p < dims.size(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(dims[p]);
    const Matroid& m = engine.algebra().matroid();
    const long long beta = m.beta();
    const long long expected = ((m.rank() - 1) % 2 == 0) ? beta : -beta;
    return CheckResult::verdict(chi == expected, "euler " + std::to_string(chi) + " vs " + std::to_string(expected));
}

/// dim H^p(A) = dim H^p(Ā) + dim H^{p-1}(Ā) at v ∈ V̄, provided char ∤ n.
template <class F>
CheckResult decone_check(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v, int p) {
    const int n = engine.algebra().ground_size();
    if (divides_characteristic(engine.field(), n))
        return CheckResult::skipped("characteristic divides n = " + std::to_string(n));
    detail::require_sum_zero(engine.field(), v);
    const auto full = engine.cohomology_dims(v, false);
    const auto proj = engine.cohomology_dims(v, true);
    const bool holds = detail::at(full, p) == detail::at(proj, p) + detail::at(proj, p - 1);
    return CheckResult::verdict(holds, "A " + detail::dims_string(full) + ", Ā " + detail::dims_string(proj));
}

/// On the torus: v ∈ R^{ℓ-p}(M) iff v ∈ R^{n-ℓ-p}(M^⊥).
template <class F>
CheckResult duality_torus_check(const ResonanceEngine<F>& primal, const ResonanceEngine<F>& dual,
                                const std::vector<typename F::value_type>& v, int p) {
    const F& field = primal.field();
    for (const auto& x : v)
        if (field.is_zero(x)) throw HypothesisError("duality check needs a point with all coordinates nonzero");
    const int n = primal.algebra().ground_size();
    const int l = primal.algebra().matroid().rank();
    if (dual.algebra().ground_size() != n || dual.algebra().matroid().rank() != n - l)
        throw std::invalid_argument("second engine is not for the dual matroid");
    auto resonant = [&](const ResonanceEngine<F>& e, int degree) {
        if (degree < 0 || degree > e.top_degree()) return false;
        return e.cohomology_dim(v, degree) >= 1;
    };
    const bool left = resonant(primal, l - p);
    const bool right = resonant(dual, n - l - p);
    return CheckResult::verdict(left == right, std::string("primal ") + (left ? "resonant" : "not resonant") +
                                                   ", dual " + (right ? "resonant" : "not resonant"));
}

/// Deletion-contraction at an element i0 with v_{i0} = 0.  The long exact
/// sequence ... -> H^p(M') -> H^p(M) -> H^{p-1}(M'') -> H^{p+1}(M') -> ...
/// gives, for every p,
///   h^p(M)      <= h^p(M') + h^{p-1}(M''),
///   h^p(M')     <= h^p(M)  + h^{p-2}(M''),
///   h^{p-1}(M'') <= h^p(M) + h^{p+1}(M').
template <class F>
CheckResult minor_inclusion_check(const ResonanceEngine<F>& whole, const ResonanceEngine<F>& deletion,
                                  const ResonanceEngine<F>& contraction, int i0,
                                  const std::vector<typename F::value_type>& v) {
    const F& field = whole.field();
    const Matroid& m = whole.algebra().matroid();
    if (i0 < 1 || i0 > m.size()) throw std::out_of_range("element outside ground set");
    if (m.is_loop(i0)) throw HypothesisError("deletion-contraction element is a loop");
    if (!field.is_zero(v[static_cast<std::size_t>(i0 - 1)]))
        throw HypothesisError("point must lie on the coordinate hyperplane of the element");
    std::vector<typename F::value_type> rest;
    for (int e = 1; e <= m.size(); ++e)
        if (e != i0) rest.push_back(v[static_cast<std::size_t>(e - 1)]);
    const auto h = whole.cohomology_dims(v);
    const auto hd = deletion.cohomology_dims(rest);
    const auto hc = contraction.cohomology_dims(rest);
    const std::string dims = "M " + detail::dims_string(h) + ", M' " + detail::dims_string(hd) + ", M'' " +
                             detail::dims_string(hc);
    for (long p = 0; p <= m.rank() + 1; ++p) {
        using detail::at;
        if (at(h, p) > at(hd, p) + at(hc, p - 1) || at(hd, p) > at(h, p) + at(hc, p - 2) ||
            at(hc, p - 1) > at(h, p) + at(hd, p + 1))
            return CheckResult::verdict(false, "degree " + std::to_string(p) + ": " + dims);
    }
    return CheckResult::verdict(true, dims);
}

/// Point image of (v1, v2) under the identification S1 ⊔ S2 -> S1 ∪ S2 of
/// the parallel connection (labels as in Matroid::parallel_connection).
template <class F>
std::vector<typename F::value_type> parallel_connection_point(const F& field,
                                                              const std::vector<typename F::value_type>& v1,
                                                              const std::vector<typename F::value_type>& v2, int b1,
                                                              int b2) {
    std::vector<typename F::value_type> out = v1;
    for (std::size_t e = 1; e <= v2.size(); ++e) {
        if (static_cast<int>(e) == b2) continue;
        out.push_back(v2[e - 1]);
    }
    out[static_cast<std::size_t>(b1 - 1)] = field.add(out[static_cast<std::size_t>(b1 - 1)],
                                                      v2[static_cast<std::size_t>(b2 - 1)]);
    return out;
}

/// dim H^k of the direct sum at (v1, v2) by the Künneth formula.
inline std::vector<std::size_t> kunneth(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::size_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// (v1, v2) ∈ R^p(M1 ⊕ M2) iff its image lies in R^p(M1 ∘ M2), checked
/// for every p = 0..rank of the connection from one set of profiles.
template <class F>
std::vector<CheckResult> parallel_connection_checks(const ResonanceEngine<F>& first, const ResonanceEngine<F>& second,
                                                    const ResonanceEngine<F>& connected, int b1, int b2,
                                                    const std::vector<typename F::value_type>& v1,
                                                    const std::vector<typename F::value_type>& v2) {
    const F& field = first.field();
    const Matroid& m1 = first.algebra().matroid();
    const Matroid& m2 = second.algebra().matroid();
    if (b1 < 1 || b1 > m1.size() || b2 < 1 || b2 > m2.size()) throw std::out_of_range("basepoint outside ground set");
    if (m1.is_loop(b1) || m2.is_loop(b2)) throw HypothesisError("basepoint is a loop");
    detail::require_sum_zero(field, v1);
    detail::require_sum_zero(field, v2);
    const auto sum_dims = kunneth(first.cohomology_dims(v1), second.cohomology_dims(v2));
    const auto pc_dims = connected.cohomology_dims(parallel_connection_point(field, v1, v2, b1, b2));
    const std::string dims = "sum " + detail::dims_string(sum_dims) + ", connection " + detail::dims_string(pc_dims);
    std::vector<CheckResult> out;
    for (int p = 0; p <= connected.top_degree(); ++p) {
        const bool left = detail::at(sum_dims, p) >= 1;
        const bool right = detail::at(pc_dims, p) >= 1;
        out.push_back(CheckResult::verdict(left == right, dims));
    }
    return out;
}

/// The same equivalence in a single degree p.
template <class F>
CheckResult parallel_connection_check(const ResonanceEngine<F>& first, const ResonanceEngine<F>& second,
                                      const ResonanceEngine<F>& connected, int b1, int b2,
                                      const std::vector<typename F::value_type>& v1,
                                      const std::vector<typename F::value_type>& v2, int p) {
    auto all = parallel_connection_checks(first, second, connected, b1, b2, v1, v2);
    if (p < 0 || p > connected.top_degree()) return CheckResult::skipped("degree beyond the rank of the connection");
    return all[static_cast<std::size_t>(p)];
}

namespace detail {

inline std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<long long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace detail

/// h(A(M1 ∘ M2)) · h(A(M12)) = h(A(M1)) · h(A(M2)) with M12 the restriction
/// to the common flat, here a single non-loop basepoint (h = 1 + t).
inline CheckResult hilbert_parallel_check(const Matroid& m1, const Matroid& m2, int b1, int b2) {
    if (m1.is_loop(b1) || m2.is_loop(b2)) throw HypothesisError("basepoint is a loop");
    const Matroid pc = m1.parallel_connection(m2, b1, b2);
    const auto lhs = detail::poly_mul(OsAlgebra(pc).hilbert_series(), {1, 1});
    const auto rhs = detail::poly_mul(OsAlgebra(m1).hilbert_series(), OsAlgebra(m2).hilbert_series());
    std::string s;
    for (auto c : lhs) s += std::to_string(c) + " ";
    return CheckResult::verdict(lhs == rhs, s);
}

/// dim H^0(A, ·v) >= 1 iff v ∈ P_π for the parallel-class partition π.
template <class F>
CheckResult bottom_degree_check(const ResonanceEngine<F>& engine, const std::vector<typename F::value_type>& v) {
    const Matroid& m = engine.algebra().matroid();
    if (m.loops() != 0) return CheckResult::skipped("matroid has a loop");
    const auto pi = m.simplify().classes;
    const bool in_p = p_subspace(engine.field(), pi).contains(v);
    const bool resonant = engine.cohomology_dim(v, 0) >= 1;
    return CheckResult::verdict(in_p == resonant);
}

}  // namespace resonator
