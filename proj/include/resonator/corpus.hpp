#pragma once

// Regression corpus: the worked examples, the dense-oracle equivalence and
// the property suites, each returning named pass/fail cases and a JSON
// report that is a pure function of the seed and options.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "resonator/bound.hpp"
#include "resonator/catalog.hpp"
#include "resonator/identities.hpp"
#include "resonator/io.hpp"
#include "resonator/multinet.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/parallel.hpp"
#include "resonator/resonance.hpp"
#include "resonator/subspace.hpp"
#include "resonator/verify/dense_oracle.hpp"

namespace resonator::corpus {

using io::Json;

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string name;
    std::vector<CaseResult> cases;

    bool pass() const {
        return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
    }
};

struct CorpusOptions {
    std::uint64_t seed = kDefaultSeed;
    /// "" or "wrong-circuit": perturbs one circuit of the fat-triangle input.
    std::string inject_fault;
    int fuzz_cases = 200;
    int hilbert_cases = 20;
    int oracle_points = 50;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"paper-examples", "oracle", "fuzz", "all"};
    return names;
}

namespace detail {

/// Runs a case body, turning exceptions into failures.
inline CaseResult run_case(const std::string& name, const std::function<CaseResult()>& body) {
    try {
        CaseResult r = body();
        r.name = name;
        return r;
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

inline CaseResult expect(bool ok, std::string detail = {}) { return {{}, ok, std::move(detail)}; }

template <class F>
std::string point_string(const F& field, const std::vector<typename F::value_type>& v) {
    return io::vector_json(field, v).dump();
}

template <class F>
std::string verdict_string(const ContainmentResult<F>& r) {
    std::string s = to_string(r.verdict);
    s += r.exact ? " (exact)" : " (failure bound " + std::to_string(r.failure_bound) + ")";
    s += ", generic dim " + std::to_string(r.generic_dim);
    if (!r.note.empty()) s += ", " + r.note;
    return s;
}

inline std::vector<mpq_class> indicator(std::size_t n, const std::vector<int>& elems) {
    std::vector<mpq_class> v(n, 0);
    for (int e : elems) v[static_cast<std::size_t>(e - 1)] += 1;
    return v;
}

inline std::vector<mpq_class> minus(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline ContainmentOptions symbolic_options(std::uint64_t seed) {
    ContainmentOptions o;
    o.mode = ContainmentMode::symbolic;
    o.seed = seed;
    return o;
}

/// Fat-triangle input as a circuit list, optionally with one circuit wrong.
inline Matroid fat_triangle_input(const std::string& fault) {
    Json spec = io::circuits_spec(catalog::fat_triangle());
    if (fault == "wrong-circuit") {
        // The circuits of the same doubled triangle with edge 2 moved onto
        // the edge {2,3}: a valid matroid, but not the intended one.
        Json wrong = io::circuits_spec(Matroid::from_graph(3, {{1, 2}, {2, 3}, {2, 3}, {2, 3}, {3, 1}, {3, 1}}));
        spec["circuits"] = wrong["circuits"];
    }
    return io::load_matroid(spec).matroid;
}

}  // namespace detail

// ------------------------------------------------------------ criterion 1

inline Criterion fat_triangle_criterion(const CorpusOptions& opt) {
    Criterion c{1, "fat triangle: R0 = P_{12|34|56}", {}};
    Rationals q;
    const Matroid m = detail::fat_triangle_input(opt.inject_fault);
    const OsAlgebra a(m);
    const ResonanceEngine<Rationals> engine(a, q);
    const auto p = p_subspace(q, Partition::from_lists(6, {{1, 2}, {3, 4}, {5, 6}}));
    const auto vbar = Subspace<Rationals>::sum_zero(q, 6);

    c.cases.push_back(detail::run_case("fat-triangle/dim-P", [&] {
        return detail::expect(p.dim() == 3, "dim " + std::to_string(p.dim()));
    }));
    c.cases.push_back(detail::run_case("fat-triangle/sampled-inside", [&] {
        std::mt19937_64 rng(opt.seed);
        for (int i = 0; i < 32; ++i) {
            const auto v = p.sample(rng, 1000);
            const auto h0 = engine.cohomology_dim(v, 0);
            if (h0 < 1) return detail::expect(false, "H0 = 0 at " + detail::point_string(q, v));
        }
        return detail::expect(true, "32 points with dim H0 >= 1");
    }));
    c.cases.push_back(detail::run_case("fat-triangle/symbolic-inside", [&] {
        const auto r = subspace_in_resonance(engine, p, 0, 1, detail::symbolic_options(opt.seed));
        return detail::expect(r.verdict == Verdict::contained && r.exact, detail::verdict_string(r));
    }));
    c.cases.push_back(detail::run_case("fat-triangle/sampled-outside", [&] {
        std::mt19937_64 rng(opt.seed + 1);
        int tested = 0;
        while (tested < 32) {
            const auto v = vbar.sample(rng, 1000);
            if (p.contains(v)) continue;
            ++tested;
            const auto h0 = engine.cohomology_dim(v, 0);
            if (h0 != 0) return detail::expect(false, "H0 != 0 at " + detail::point_string(q, v));
        }
        return detail::expect(true, "32 points of V̄ outside P with dim H0 = 0");
    }));
    return c;
}

// ------------------------------------------------------------ criterion 2

inline Criterion uniform_criterion(const CorpusOptions& opt) {
    Criterion c{2, "uniform matroids: cohomology concentrated in degree l-1", {}};
    Rationals q;
    const std::vector<std::pair<int, int>> cases{{2, 4}, {2, 5}, {3, 5}, {3, 6}};
    for (auto [l, n] : cases) {
        const std::string name = "uniform/U" + std::to_string(l) + "," + std::to_string(n);
        c.cases.push_back(detail::run_case(name, [&, l = l, n = n] {
            const Matroid m = Matroid::uniform(l, n);
            const OsAlgebra a(m);
            const ResonanceEngine<Rationals> engine(a, q);
            const auto vbar = Subspace<Rationals>::sum_zero(q, static_cast<std::size_t>(n));
            const auto whole = Subspace<Rationals>::whole(q, static_cast<std::size_t>(n));
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(10 * l + n));
            std::vector<std::vector<mpq_class>> points;
            // Sparse points e_i - e_j exercise the most degenerate directions.
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) points.push_back(detail::minus(detail::indicator(n, {i}), detail::indicator(n, {j})));
            for (int i = 0; i < 16; ++i) points.push_back(vbar.sample(rng, 1000));
            for (int i = 0; i < 8; ++i) points.push_back(whole.sample(rng, 1000));
            int checked = 0;
            for (const auto& v : points) {
                if (std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; })) continue;
                ++checked;
                const auto dims = engine.cohomology_dims(v);
                for (int p = 0; p < l - 1; ++p)
                    if (dims[static_cast<std::size_t>(p)] != 0)
                        return detail::expect(false, "H" + std::to_string(p) + " != 0 at " + detail::point_string(q, v));
                if (vbar.contains(v) && dims[static_cast<std::size_t>(l - 1)] < 1)
                    return detail::expect(false, "H" + std::to_string(l - 1) + " = 0 at " + detail::point_string(q, v));
            }
            return detail::expect(true, std::to_string(checked) + " nonzero points");
        }));
    }
    return c;
}

// ------------------------------------------------------------ criterion 3

inline std::vector<Subspace<Rationals>> x_graph_expected_components() {
    Rationals q;
    std::vector<Subspace<Rationals>> out;
    for (const auto& blocks : std::vector<std::vector<std::vector<int>>>{{{1}, {2}, {3, 4, 5, 6}},
                                                                        {{3}, {4}, {1, 2, 5, 6}},
                                                                        {{5}, {6}, {1, 2, 3, 4}},
                                                                        {{1, 2}, {3, 4}, {5, 6}}})
        out.push_back(p_subspace(q, Partition::from_lists(6, blocks)));
    std::sort(out.begin(), out.end());
    return out;
}

inline Criterion x_graph_criterion(const CorpusOptions& opt) {
    Criterion c{3, "X-graph: Bound2 has four components, all in R2", {}};
    Rationals q;
    const Matroid m = detail::fat_triangle_input(opt.inject_fault).dual();
    const OsAlgebra a(m);
    const ResonanceEngine<Rationals> engine(a, q);
    const auto cmp = compare_bound(engine, 2, false, detail::symbolic_options(opt.seed));
    c.cases.push_back(detail::run_case("x-graph/bound-components", [&] {
        const bool ok = !cmp.arrangement.truncated && cmp.arrangement.components == x_graph_expected_components();
        std::string d = std::to_string(cmp.arrangement.components.size()) + " components:";
        for (const auto& s : cmp.arrangement.components) d += " " + s.to_string();
        return detail::expect(ok, d);
    }));
    c.cases.push_back(detail::run_case("x-graph/components-resonant", [&] {
        bool ok = cmp.verdicts.size() == 4;
        std::string d;
        for (const auto& r : cmp.verdicts) {
            ok = ok && r.verdict == Verdict::contained && r.exact;
            d += detail::verdict_string(r) + "; ";
        }
        return detail::expect(ok, d);
    }));
    return c;
}

// ------------------------------------------------------------ criterion 4

inline Criterion char_two_criterion(const CorpusOptions& opt) {
    Criterion c{4, "X-graph: all-ones point resonant in degree 2 over F2 only", {}};
    const Matroid m = detail::fat_triangle_input(opt.inject_fault).dual();
    const OsAlgebra a(m);
    c.cases.push_back(detail::run_case("char2/F2-resonant", [&] {
        const PrimeField f2(2);
        const ResonanceEngine<PrimeField> engine(a, f2);
        const std::vector<std::uint64_t> ones(6, 1);
        const auto dims = engine.cohomology_dims(ones);
        return detail::expect(in_resonance(engine, ones, 2, 1), "dims " + resonator::detail::dims_string(dims));
    }));
    c.cases.push_back(detail::run_case("char2/Q-not-resonant", [&] {
        Rationals q;
        const ResonanceEngine<Rationals> engine(a, q);
        const std::vector<mpq_class> ones(6, 1);
        const auto dims = engine.cohomology_dims(ones);
        return detail::expect(!in_resonance(engine, ones, 2, 1), "dims " + resonator::detail::dims_string(dims));
    }));
    return c;
}

// ------------------------------------------------------------ criterion 5

/// W = {(-a, a, b, -b, -c, c, 0, ...)} in k^n.
inline Subspace<Rationals> delres_subspace(std::size_t n) {
    Rationals q;
    std::vector<std::vector<mpq_class>> rows(3, std::vector<mpq_class>(n, 0));
    rows[0][0] = -1;
    rows[0][1] = 1;
    rows[1][2] = 1;
    rows[1][3] = -1;
    rows[2][4] = -1;
    rows[2][5] = 1;
    return Subspace<Rationals>::span(q, n, rows);
}

inline Criterion delres_criterion(const CorpusOptions& opt) {
    Criterion c{5, "deletion-restriction chain G1, G2, K5", {}};
    Rationals q;
    const std::vector<std::pair<std::string, Matroid>> graphs{
        {"G1", catalog::delres_g1()}, {"G2", catalog::delres_g2()}, {"K5", catalog::delres_k5()}};
    for (const auto& [label, m] : graphs) {
        c.cases.push_back(detail::run_case("delres/" + label, [&, label = label, m = m] {
            const OsAlgebra a(m);
            const ResonanceEngine<Rationals> engine(a, q);
            const auto w = delres_subspace(static_cast<std::size_t>(m.size()));
            const auto r = subspace_in_resonance(engine, w, 2, 1, detail::symbolic_options(opt.seed));
            if (label != "K5") return detail::expect(r.verdict == Verdict::contained && r.exact, detail::verdict_string(r));
            bool ok = r.verdict == Verdict::not_contained && r.exact && r.witness.has_value();
            std::string d = detail::verdict_string(r);
            if (ok) {
                // Re-check the witness independently of the containment code.
                ok = w.contains(*r.witness) && engine.cohomology_dim(*r.witness, 2) == 0;
                d += ", witness " + detail::point_string(q, *r.witness);
            }
            return detail::expect(ok, d);
        }));
    }
    return c;
}

// ------------------------------------------------------------ criterion 6

struct PyramidData {
    Matroid matroid = catalog::pyramid();
    /// Basis rows of W ordered by the blocks {2,5,8}, {3,5,6}, {4,6,7} minus {1,7,8}.
    std::vector<std::vector<mpq_class>> w_basis;
    std::vector<std::vector<mpq_class>> sigma_w_basis;
    Subspace<Rationals> w{Rationals{}, 8}, sigma_w{Rationals{}, 8}, p_co{Rationals{}, 8}, p_co_prime{Rationals{}, 8};
};

inline PyramidData pyramid_data() {
    Rationals q;
    PyramidData d;
    const std::vector<std::vector<int>> blocks{{2, 5, 8}, {3, 5, 6}, {4, 6, 7}, {1, 7, 8}};
    for (int j = 0; j < 3; ++j)
        d.w_basis.push_back(detail::minus(detail::indicator(8, blocks[static_cast<std::size_t>(j)]), detail::indicator(8, blocks[3])));
    const auto sigma = catalog::pyramid_duality_permutation();
    for (const auto& w : d.w_basis) {
        std::vector<mpq_class> v(8);
        for (std::size_t j = 0; j < 8; ++j) v[j] = w[static_cast<std::size_t>(sigma[j] - 1)];
        d.sigma_w_basis.push_back(v);
    }
    d.w = Subspace<Rationals>::span(q, 8, d.w_basis);
    d.sigma_w = Subspace<Rationals>::span(q, 8, d.sigma_w_basis);
    auto masks = [](const std::vector<std::vector<int>>& sets) {
        std::vector<Mask> out;
        for (const auto& s : sets) out.push_back(mask_of(s, 8));
        return out;
    };
    d.p_co = cover_subspace(q, 8, masks({{1, 5, 6}, {2, 6, 7}, {3, 7, 8}, {4, 5, 8}}));
    d.p_co_prime = cover_subspace(q, 8, masks({{1, 2, 3, 4}, {1, 5, 6}, {3, 7, 8}}));
    return d;
}

inline Criterion pyramid_criterion(const CorpusOptions& opt) {
    Criterion c{6, "pyramid: singular subspaces W and sigma(W)", {}};
    Rationals q;
    const PyramidData d = pyramid_data();
    const OsAlgebra a(d.matroid);
    const ResonanceEngine<Rationals> engine(a, q);
    const auto sym = detail::symbolic_options(opt.seed);

    c.cases.push_back(detail::run_case("pyramid/W-singular-rank-2", [&] {
        const auto r = singular_rank(q, a, d.w);
        return detail::expect(r.dim == 3 && r.rank == 2 && r.is_singular,
                              "dim " + std::to_string(r.dim) + ", rank " + std::to_string(r.rank));
    }));
    c.cases.push_back(detail::run_case("pyramid/W-factorization-split", [&] {
        const auto phi = truncated_factorization(q, a, d.w_basis, 2);
        const auto f = WeakMap::from_values(d.matroid, Matroid::uniform(3, 4), catalog::pyramid_weak_map_values());
        const OsAlgebra target(f.target());
        const auto split = factorization_split_check(q, phi, induced_map(f, a, target), -1);
        std::string s;
        for (bool b : split) s += b ? '1' : '0';
        const bool ok = phi.injective_in_degree_one && split.size() == 3 &&
                        std::all_of(split.begin(), split.end(), [](bool b) { return b; });
        return detail::expect(ok, "degrees 0..2 split: " + s);
    }));
    c.cases.push_back(detail::run_case("pyramid/sigma-W-equals-P_Co", [&] {
        return detail::expect(d.sigma_w == d.p_co && d.p_co.dim() == 3, "sigma(W) " + d.sigma_w.to_string());
    }));
    c.cases.push_back(detail::run_case("pyramid/sigma-W-rank-3", [&] {
        const auto r = singular_rank(q, a, d.sigma_w);
        bool refuses = false;
        try {
            truncated_factorization(q, a, d.sigma_w_basis, 2);
        } catch (const NotSingularEnough&) {
            refuses = true;
        }
        return detail::expect(r.dim == 3 && r.rank == 3 && !r.is_singular && refuses,
                              "rank " + std::to_string(r.rank) + (refuses ? ", no factorization" : ", factors"));
    }));
    c.cases.push_back(detail::run_case("pyramid/W-in-R2", [&] {
        const auto r = subspace_in_resonance(engine, d.w, 2, 1, sym);
        return detail::expect(r.verdict == Verdict::contained && r.exact, detail::verdict_string(r));
    }));
    c.cases.push_back(detail::run_case("pyramid/sigma-W-in-R2", [&] {
        const auto r = subspace_in_resonance(engine, d.sigma_w, 2, 1, sym);
        return detail::expect(r.verdict == Verdict::contained && r.exact, detail::verdict_string(r));
    }));
    c.cases.push_back(detail::run_case("pyramid/P_Co'-not-in-R2", [&] {
        const auto r = subspace_in_resonance(engine, d.p_co_prime, 2, 1, sym);
        bool ok = d.p_co_prime.dim() == 4 && d.p_co_prime.contains(d.p_co) && r.verdict == Verdict::not_contained &&
                  r.exact && r.witness.has_value();
        std::string s = detail::verdict_string(r);
        if (ok) {
            ok = d.p_co_prime.contains(*r.witness) && !d.p_co.contains(*r.witness) &&
                 engine.cohomology_dim(*r.witness, 2) == 0;
            s += ", witness " + detail::point_string(q, *r.witness);
        }
        return detail::expect(ok, s);
    }));
    return c;
}

// ------------------------------------------------------------ criterion 7

inline Criterion b3_criterion(const CorpusOptions& opt) {
    Criterion c{7, "B3 with doubled short roots: (3,4)-multinet", {}};
    Rationals q;
    const Matroid m = catalog::b3_doubled();
    const OsAlgebra a(m);
    const ResonanceEngine<Rationals> engine(a, q);
    const Partition l = Partition::from_lists(12, catalog::b3_multinet_blocks());
    const auto component = multinet_component(q, l);

    c.cases.push_back(detail::run_case("b3/multinet-axioms", [&] {
        std::vector<Mask> x;
        for (const Flat& f : m.irreducible_flats_of_rank(2)) x.push_back(f.elements);
        const auto v = verify_multinet(m, l, x);
        std::string s;
        for (std::size_t i = 0; i < 4; ++i) s += "axiom " + std::to_string(i + 1) + (v.axioms[i].holds ? " ok; " : " FAILS; ");
        return detail::expect(v.valid() && v.k == 3 && v.d == 4, s + "k " + std::to_string(v.k) + ", d " + std::to_string(v.d));
    }));
    c.cases.push_back(detail::run_case("b3/component-dim-2", [&] {
        return detail::expect(component.dim() == 2, component.to_string());
    }));
    c.cases.push_back(detail::run_case("b3/component-in-R1", [&] {
        std::mt19937_64 rng(opt.seed + 7);
        for (int i = 0; i < 16; ++i) {
            const auto v = component.sample(rng, 1000);
            if (engine.cohomology_dim(v, 1) < 1) return detail::expect(false, "H1 = 0 at " + detail::point_string(q, v));
        }
        return detail::expect(true, "16 points with dim H1 >= 1");
    }));
    c.cases.push_back(detail::run_case("b3/essential-cover-equals-component", [&] {
        const auto simp = m.simplify();
        std::vector<Mask> x;
        for (const Flat& f : simp.simple.irreducible_flats_of_rank(2)) x.push_back(f.elements);
        const Cover cover = make_cover(simp.simple, x);
        const auto p_co = cover_subspace(q, simp.simple, cover);
        const auto image = push_to_simplification(component, simp);
        return detail::expect(cover.essential && p_co.dim() == 2 && p_co == image,
                              "P_Co " + p_co.to_string() + ", component " + image.to_string());
    }));
    return c;
}

// ------------------------------------------------------------ criterion 8

struct NamedMatroid {
    std::string name;
    Matroid matroid;
};

/// Corpus matroids with at most eight elements.
inline std::vector<NamedMatroid> small_corpus() {
    return {{"U2,3", Matroid::uniform(2, 3)},
            {"U2,4", Matroid::uniform(2, 4)},
            {"U2,5", Matroid::uniform(2, 5)},
            {"U3,4", Matroid::uniform(3, 4)},
            {"U3,5", Matroid::uniform(3, 5)},
            {"U3,6", Matroid::uniform(3, 6)},
            {"fat-triangle", catalog::fat_triangle()},
            {"x-graph", catalog::x_graph()},
            {"K4", Matroid::from_graph(4, catalog::complete_graph_edges(4))},
            {"pyramid", catalog::pyramid()},
            {"pyramid-minus-3", catalog::pyramid().delete_element(3)},
            {"delres-G1", catalog::delres_g1()},
            {"pc-triangles", Matroid::uniform(2, 3).parallel_connection(Matroid::uniform(2, 3), 3, 1)},
            {"U2,3+loop", Matroid::direct_sum(Matroid::uniform(2, 3), Matroid::from_circuits(1, {{1}}))}};
}

namespace detail {

/// Mixture of generic, sum-zero, partition-structured and sparse points.
template <class F, class Rng>
std::vector<typename F::value_type> oracle_point(const F& field, int n, int kind, Rng& rng) {
    const auto size = static_cast<std::size_t>(n);
    switch (kind % 5) {
        case 0: return Subspace<F>::whole(field, size).sample(rng, 2);
        case 1: return Subspace<F>::sum_zero(field, size).sample(rng, 3);
        case 2: {
            std::uniform_int_distribution<int> pick(0, std::max(0, n / 2));
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n / 2 + 1));
            for (int e = 1; e <= n; ++e) blocks[static_cast<std::size_t>(pick(rng))].push_back(e);
            std::vector<std::vector<int>> nonempty;
            for (auto& b : blocks)
                if (!b.empty()) nonempty.push_back(b);
            return p_subspace(field, Partition::from_lists(n, nonempty)).sample(rng, 5);
        }
        case 3: {
            std::vector<typename F::value_type> v(size, field.zero());
            std::uniform_int_distribution<int> pick(0, n - 1);
            const int i = pick(rng), j = pick(rng);
            v[static_cast<std::size_t>(i)] = field.add(v[static_cast<std::size_t>(i)], field.one());
            v[static_cast<std::size_t>(j)] = field.sub(v[static_cast<std::size_t>(j)], field.one());
            return v;
        }
        default: return Subspace<F>::sum_zero(field, size).sample(rng, 1);
    }
}

inline std::vector<std::size_t> trimmed(std::vector<std::size_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

template <class F>
CaseResult oracle_case(const F& field, const Matroid& m, std::uint64_t seed, int points) {
    const OsAlgebra a(m);
    const verify::DenseOsOracle<F> oracle(m, field);
    if (trimmed(a.dims()) != oracle.dims())
        return expect(false, "A dims " + resonator::detail::dims_string(a.dims()) + " vs oracle " +
                                 resonator::detail::dims_string(oracle.dims()));
    const ResonanceEngine<F> engine(a, field);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < points; ++i) {
        const auto v = oracle_point(field, m.size(), i, rng);
        const auto mine = trimmed(engine.cohomology_dims(v));
        const auto theirs = trimmed(oracle.cohomology(v));
        if (mine != theirs)
            return expect(false, "at " + point_string(field, v) + ": " + resonator::detail::dims_string(mine) + " vs " +
                                     resonator::detail::dims_string(theirs));
    }
    return expect(true, "dims " + resonator::detail::dims_string(a.dims()) + ", " + std::to_string(points) + " points");
}

}  // namespace detail

inline Criterion oracle_criterion(const CorpusOptions& opt) {
    Criterion c{8, "NBC algebra and cohomology agree with the dense oracle", {}};
    const auto matroids = small_corpus();
    std::vector<CaseResult> results(2 * matroids.size());
    parallel_for(results.size(), [&](std::size_t k) {
        const auto& nm = matroids[k / 2];
        const std::uint64_t seed = opt.seed + 1000 + k;
        if (k % 2 == 0)
            results[k] = detail::run_case("oracle/Q/" + nm.name, [&] {
                return detail::oracle_case(Rationals{}, nm.matroid, seed, opt.oracle_points);
            });
        else
            results[k] = detail::run_case("oracle/F3/" + nm.name, [&] {
                return detail::oracle_case(PrimeField(3), nm.matroid, seed, opt.oracle_points);
            });
    });
    c.cases = std::move(results);
    return c;
}

// ------------------------------------------------------------ criterion 9

namespace detail {

/// Random loopless matroid from one of three families, n <= max_n.
template <class Rng>
NamedMatroid random_matroid(Rng& rng, int max_n) {
    std::uniform_int_distribution<int> family(0, 2);
    const int kind = family(rng);
    if (kind == 1) {
        std::uniform_int_distribution<int> size(2, max_n);
        const int n = size(rng);
        std::uniform_int_distribution<int> rank(1, n);
        const int l = rank(rng);
        return {"U" + std::to_string(l) + "," + std::to_string(n), Matroid::uniform(l, n)};
    }
    std::uniform_int_distribution<int> vert(2, 5);
    const int v = vert(rng);
    std::uniform_int_distribution<int> count(2, max_n);
    const int e = count(rng);
    std::uniform_int_distribution<int> endpoint(1, v);
    catalog::Edges edges;
    std::string name = "graph(" + std::to_string(v) + ";";
    while (static_cast<int>(edges.size()) < e) {
        const int a = endpoint(rng), b = endpoint(rng);
        if (a == b) continue;
        edges.push_back({std::min(a, b), std::max(a, b)});
        name += std::to_string(edges.back().first) + std::to_string(edges.back().second) + " ";
    }
    name.back() = ')';
    Matroid g = Matroid::from_graph(v, edges);
    if (kind == 2) {
        // Duals of graphic matroids; skip those with loops (from bridges).
        Matroid d = g.dual();
        if (d.loops() == 0) return {"dual-" + name, d};
    }
    return {name, g};
}

/// A point of V̄, often on a partition subspace so that resonance occurs.
template <class F, class Rng>
std::vector<typename F::value_type> fuzz_point(const F& field, int n, Rng& rng) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (coin(rng) == 0) return Subspace<F>::sum_zero(field, static_cast<std::size_t>(n)).sample(rng, 50);
    return oracle_point(field, n, 2, rng);
}

template <class F, class Rng>
std::vector<typename F::value_type> torus_point(const F& field, int n, Rng& rng) {
    // Sum-zero points with no zero coordinate, found by rejection.
    for (int attempt = 0; attempt < 200; ++attempt) {
        auto v = fuzz_point(field, n, rng);
        if (std::none_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); })) return v;
    }
    return {};
}

/// Per-property counts: checks run, checks at resonant points, and the
/// first violation seen.
struct PropertyStat {
    std::size_t checks = 0;
    std::size_t nontrivial = 0;
    std::string failure;

    void record(bool ok, bool interesting, const std::function<std::string()>& describe) {
        ++checks;
        if (interesting) ++nontrivial;
        if (!ok && failure.empty()) failure = describe();
    }

    void merge(const PropertyStat& o, const std::string& label) {
        checks += o.checks;
        nontrivial += o.nontrivial;
        if (failure.empty() && !o.failure.empty()) failure = label + ": " + o.failure;
    }
};

enum Property { kPropagation, kEuler, kDuality, kMinors, kParallel, kPropertyCount };

struct FuzzTally {
    std::array<PropertyStat, kPropertyCount> stats;
    std::string error;
};

/// Nonzero cohomology below degree rank - 1, where generic points of V̄
/// have none: the point is resonant in a nontrivial way.
inline bool any_nonzero(const std::vector<std::size_t>& dims) {
    return dims.size() >= 3 && std::any_of(dims.begin(), dims.end() - 2, [](std::size_t d) { return d != 0; });
}

template <class F>
void fuzz_one(const F& field, std::uint64_t seed, FuzzTally& t) {
    std::mt19937_64 rng(seed);
    const NamedMatroid nm = random_matroid(rng, 8);
    const Matroid& m = nm.matroid;
    const int n = m.size();
    const OsAlgebra a(m);
    const ResonanceEngine<F> engine(a, field);
    auto where = [&](const std::string& detail) { return nm.name + " over " + field.name() + ": " + detail; };

    for (int i = 0; i < 4; ++i) {
        const auto v = fuzz_point(field, n, rng);
        const auto interesting = any_nonzero(engine.cohomology_dims(v));
        const auto prop = propagation_check(engine, v);
        t.stats[kPropagation].record(prop.ok(), interesting,
                                     [&] { return where(prop.detail + " at " + point_string(field, v)); });
        const auto eu = euler_check(engine, v);
        t.stats[kEuler].record(eu.ok(), interesting, [&] { return where(eu.detail + " at " + point_string(field, v)); });
    }

    {
        const Matroid d = m.dual();
        const OsAlgebra ad(d);
        const ResonanceEngine<F> dual_engine(ad, field);
        for (int i = 0; i < 3; ++i) {
            const auto v = torus_point(field, n, rng);
            if (v.empty()) continue;
            const bool interesting = any_nonzero(engine.cohomology_dims(v));
            for (int p = 0; p <= m.rank(); ++p) {
                const auto r = duality_torus_check(engine, dual_engine, v, p);
                t.stats[kDuality].record(r.ok(), interesting, [&] {
                    return where("p=" + std::to_string(p) + ", " + r.detail + " at " + point_string(field, v));
                });
            }
        }
    }

    {
        std::uniform_int_distribution<int> pick(1, n);
        const int i0 = pick(rng);
        if (!m.is_loop(i0)) {
            const OsAlgebra del(m.delete_element(i0));
            const OsAlgebra con(m.contract_element(i0));
            const ResonanceEngine<F> de(del, field), ce(con, field);
            for (int i = 0; i < 3; ++i) {
                auto v = fuzz_point(field, n, rng);
                // Move onto the hyperplane v_{i0} = 0 while staying in V̄.
                const auto x = v[static_cast<std::size_t>(i0 - 1)];
                v[static_cast<std::size_t>(i0 - 1)] = field.zero();
                const std::size_t other = static_cast<std::size_t>(i0 % n);
                v[other] = field.add(v[other], x);
                const auto r = minor_inclusion_check(engine, de, ce, i0, v);
                t.stats[kMinors].record(r.ok(), any_nonzero(engine.cohomology_dims(v)), [&] {
                    return where("element " + std::to_string(i0) + ", " + r.detail + " at " + point_string(field, v));
                });
            }
        }
    }

    {
        const NamedMatroid other = random_matroid(rng, 5);
        std::uniform_int_distribution<int> p1(1, n), p2(1, other.matroid.size());
        const int b1 = p1(rng), b2 = p2(rng);
        if (!m.is_loop(b1) && !other.matroid.is_loop(b2)) {
            const Matroid pc = m.parallel_connection(other.matroid, b1, b2);
            const OsAlgebra a2(other.matroid), apc(pc);
            const ResonanceEngine<F> e2(a2, field), epc(apc, field);
            for (int i = 0; i < 2; ++i) {
                const auto v1 = fuzz_point(field, n, rng);
                const auto v2 = fuzz_point(field, other.matroid.size(), rng);
                const bool interesting =
                    any_nonzero(epc.cohomology_dims(parallel_connection_point(field, v1, v2, b1, b2)));
                const auto results = parallel_connection_checks(engine, e2, epc, b1, b2, v1, v2);
                for (std::size_t p = 0; p < results.size(); ++p) {
                    const auto& r = results[p];
                    t.stats[kParallel].record(r.ok(), interesting, [&] {
                        return where("with " + other.name + " at " + std::to_string(b1) + "," + std::to_string(b2) +
                                     " p=" + std::to_string(p) + ", " + r.detail);
                    });
                }
            }
        }
    }
}

}  // namespace detail

inline Criterion fuzz_criterion(const CorpusOptions& opt) {
    Criterion c{9, "property suites over random matroids and fields", {}};
    const std::vector<FieldSpec> fields{FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3),
                                        FieldSpec::prime(5)};
    const auto cases = static_cast<std::size_t>(std::max(opt.fuzz_cases, 0));
    std::vector<detail::FuzzTally> tallies(cases);
    parallel_for(cases, [&](std::size_t k) {
        const FieldSpec fs = fields[k % fields.size()];
        const std::uint64_t seed = opt.seed * 7919 + k;
        try {
            visit_field(fs, [&](const auto& field) { detail::fuzz_one(field, seed, tallies[k]); });
        } catch (const std::exception& e) {
            tallies[k].error = "case " + std::to_string(k) + " over " + fs.to_string() + ": " + e.what();
        }
    });
    std::array<detail::PropertyStat, detail::kPropertyCount> total;
    std::string error;
    for (std::size_t k = 0; k < cases; ++k) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(tallies[k].stats[i], "case " + std::to_string(k));
        if (error.empty()) error = tallies[k].error;
    }
    c.cases.push_back({"fuzz/no-exceptions", error.empty(), error.empty() ? std::to_string(cases) + " cases" : error});
    const std::array<const char*, detail::kPropertyCount> names{"fuzz/propagation", "fuzz/euler", "fuzz/duality-torus",
                                                                "fuzz/deletion-contraction", "fuzz/parallel-connection"};
    for (std::size_t i = 0; i < total.size(); ++i) {
        const auto& s = total[i];
        // A suite that never meets a resonant point proves nothing.
        const bool ok = s.failure.empty() && s.checks > 0 && s.nontrivial > 0;
        c.cases.push_back({names[i], ok,
                           s.failure.empty() ? std::to_string(s.checks) + " checks, " + std::to_string(s.nontrivial) +
                                                   " at resonant points"
                                             : s.failure});
    }

    c.cases.push_back(detail::run_case("fuzz/hilbert-parallel-connection", [&] {
        std::mt19937_64 rng(opt.seed + 99);
        int done = 0;
        while (done < opt.hilbert_cases) {
            const auto m1 = detail::random_matroid(rng, 6);
            const auto m2 = detail::random_matroid(rng, 6);
            std::uniform_int_distribution<int> p1(1, m1.matroid.size()), p2(1, m2.matroid.size());
            const int b1 = p1(rng), b2 = p2(rng);
            if (m1.matroid.is_loop(b1) || m2.matroid.is_loop(b2)) continue;
            ++done;
            const auto r = hilbert_parallel_check(m1.matroid, m2.matroid, b1, b2);
            if (!r.ok()) return detail::expect(false, m1.name + " with " + m2.name + ": " + r.detail);
        }
        return detail::expect(done > 0, std::to_string(done) + " connections");
    }));
    return c;
}

// ------------------------------------------------------------ suites

inline std::vector<Criterion> run_suite(const std::string& suite, const CorpusOptions& opt = {}) {
    std::vector<Criterion> out;
    const bool all = suite == "all";
    if (suite == "paper-examples" || all) {
        out.push_back(fat_triangle_criterion(opt));
        out.push_back(uniform_criterion(opt));
        out.push_back(x_graph_criterion(opt));
        out.push_back(char_two_criterion(opt));
        out.push_back(delres_criterion(opt));
        out.push_back(pyramid_criterion(opt));
        out.push_back(b3_criterion(opt));
    }
    if (suite == "oracle" || all) out.push_back(oracle_criterion(opt));
    if (suite == "fuzz" || all) out.push_back(fuzz_criterion(opt));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

inline bool all_pass(const std::vector<Criterion>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Criterion& c) { return c.pass(); });
}

inline Json report(const std::string& suite, const CorpusOptions& opt, const std::vector<Criterion>& cs) {
    Json crit = Json::array();
    for (const auto& c : cs) {
        Json cases = Json::array();
        for (const auto& r : c.cases) cases.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass()}, {"cases", cases}});
    }
    Json out = {{"command", "corpus"}, {"suite", suite}, {"seed", opt.seed}, {"criteria", crit}, {"pass", all_pass(cs)}};
    if (!opt.inject_fault.empty()) out["inject_fault"] = opt.inject_fault;
    return out;
}

}  // namespace resonator::corpus
