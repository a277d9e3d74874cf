#pragma once

// Command implementations behind the resonator CLI.  Each takes parsed
// arguments and returns a JSON report plus an exit status; the executable
// only parses flags and prints.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resonator/bound.hpp"
#include "resonator/corpus.hpp"
#include "resonator/identities.hpp"
#include "resonator/io.hpp"
#include "resonator/multinet.hpp"
#include "resonator/os_algebra.hpp"
#include "resonator/resonance.hpp"

namespace resonator::cli {

using io::Json;

enum ExitCode : int { kSuccess = 0, kFailure = 1, kParseError = 2, kSemanticError = 3 };

struct Outcome {
    int exit_code = kSuccess;
    Json report;
    std::vector<std::string> warnings;
};

/// Error carrying the exit status it should produce.
class CommandError : public std::runtime_error {
  public:
    CommandError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

  private:
    int code_;
};

namespace detail {

inline Json header(const std::string& command, const io::LoadedMatroid& input, const FieldSpec& field) {
    const std::string text = input.canonical.dump();
    Json h = {{"command", command},
              {"input", {{"digest", io::digest(text)}, {"spec", input.canonical}}},
              {"field", field.to_string()},
              {"matroid", {{"n", input.matroid.size()}, {"rank", input.matroid.rank()}}}};
    h["input"]["realizable"] = input.realizable ? Json(*input.realizable) : Json("unknown");
    return h;
}

template <class F>
std::vector<typename F::value_type> point_arg(const F& field, const std::string& text, int n) {
    std::vector<typename F::value_type> v;
    try {
        v = io::parse_vector(field, text);
    } catch (const io::SpecError& e) {
        throw CommandError(kSemanticError, std::string("vector not representable over ") + field.name() + ": " + e.what());
    }
    if (v.size() != static_cast<std::size_t>(n))
        throw CommandError(kSemanticError, "vector has length " + std::to_string(v.size()) + ", matroid has n = " +
                                               std::to_string(n));
    return v;
}

inline Json dims_json(const std::vector<std::size_t>& d) { return Json(d); }

template <class F>
Json containment_json(const F& field, const ContainmentResult<F>& r, const ContainmentOptions& options) {
    Json j = {{"verdict", to_string(r.verdict)}, {"exact", r.exact}, {"generic_dim", r.generic_dim}};
    if (!r.exact && options.mode == ContainmentMode::probabilistic) {
        j["failure_bound"] = r.failure_bound;
        j["trials"] = options.trials;
        j["seed"] = options.seed;
    }
    if (r.witness) {
        j["witness"] = io::vector_json(field, *r.witness);
        j["witness_dim"] = r.witness_dim;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json check_json(const CheckResult& r) {
    Json j = {{"status", to_string(r.status)}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

}  // namespace detail

// ------------------------------------------------------------ profile

struct ProfileArgs {
    FieldSpec field;
    std::string vector;
    bool projective = false;
};

inline Outcome cmd_profile(const io::LoadedMatroid& input, const ProfileArgs& args) {
    Outcome out;
    out.report = detail::header("profile", input, args.field);
    visit_field(args.field, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        const OsAlgebra a(input.matroid);
        const ResonanceEngine<F> engine(a, field);
        const auto v = detail::point_arg(field, args.vector, input.matroid.size());
        out.report["os_dims"] = a.dims();
        out.report["point"] = io::vector_json(field, v);
        out.report["in_sum_zero"] = in_sum_zero(field, v);
        out.report["dims"] = engine.cohomology_dims(v);
        if (args.projective) {
            if (!in_sum_zero(field, v))
                throw CommandError(kSemanticError, "the projective complex needs a point with coordinate sum zero");
            out.report["projective_dims"] = engine.cohomology_dims(v, true);
        }
    });
    return out;
}

// ------------------------------------------------------------ bound

struct BoundArgs {
    FieldSpec field;
    int degree = 0;
    bool essential = false;
    bool compare = false;
    ContainmentOptions options;
    std::size_t limit = kDefaultCoverLimit;
};

inline Outcome cmd_bound(const io::LoadedMatroid& input, const BoundArgs& args) {
    Outcome out;
    out.report = detail::header("bound", input, args.field);
    const Matroid& m = input.matroid;
    if (args.degree < 0 || args.degree > m.rank())
        throw CommandError(kSemanticError, "degree must lie in 0.." + std::to_string(m.rank()));
    out.report["degree"] = args.degree;
    out.report["essential"] = args.essential;
    visit_field(args.field, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        const OsAlgebra a(m);
        const ResonanceEngine<F> engine(a, field);
        SubspaceArrangement<F> arr;
        std::vector<ContainmentResult<F>> verdicts;
        if (args.compare) {
            auto cmp = compare_bound(engine, args.degree, args.essential, args.options, args.limit);
            arr = std::move(cmp.arrangement);
            verdicts = std::move(cmp.verdicts);
        } else {
            arr = bound(field, m, args.degree, args.essential, args.limit);
        }
        Json comps = Json::array();
        for (std::size_t i = 0; i < arr.components.size(); ++i) {
            Json c = io::subspace_json(arr.components[i]);
            c["cover"] = io::mask_list_json(arr.covers[i]);
            if (args.compare) c["resonance"] = detail::containment_json(field, verdicts[i], args.options);
            comps.push_back(c);
        }
        out.report["components"] = comps;
        out.report["covers_examined"] = arr.covers_examined;
        out.report["status"] = arr.truncated ? "truncated" : "complete";
        if (arr.truncated) out.warnings.push_back("cover enumeration truncated at " + std::to_string(args.limit));
        if (args.compare) {
            out.report["mode"] = to_string(args.options.mode);
            bool tight = !arr.truncated;
            for (const auto& r : verdicts) tight = tight && r.verdict == Verdict::contained;
            out.report["tight"] = tight;
            if (input.realizable != std::optional<bool>(true))
                out.warnings.push_back("matroid not flagged realizable: the bound is a conjecture here");
        }
    });
    return out;
}

// ------------------------------------------------------------ multinet

struct MultinetArgs {
    bool search = false;
    std::string blocks;
    std::string flats;
    int k_max = 4;
    int max_multiplicity = 1;
};

inline Outcome cmd_multinet(const io::LoadedMatroid& input, const MultinetArgs& args) {
    Outcome out;
    out.report = detail::header("multinet", input, FieldSpec::rationals());
    out.report.erase("field");
    const Matroid& m = input.matroid;
    if (args.search) {
        const auto found = search_multinets(m, args.k_max, args.max_multiplicity);
        Json list = Json::array();
        for (const auto& r : found) {
            Json j = {{"k", r.multinet.k},
                      {"d", r.multinet.d},
                      {"blocks", io::partition_json(r.multinet.blocks)},
                      {"flats", io::mask_list_json(r.multinet.flats)}};
            if (r.matroid.size() != m.size()) j["origin"] = r.origin;
            list.push_back(j);
        }
        out.report["mode"] = "search";
        out.report["k_max"] = args.k_max;
        out.report["max_multiplicity"] = args.max_multiplicity;
        out.report["multinets"] = list;
        return out;
    }
    if (args.blocks.empty()) throw CommandError(kParseError, "--verify needs --blocks");
    const Json blocks_json = args.blocks.front() == '[' ? io::parse_json(args.blocks) : Json(args.blocks);
    const Partition l = io::parse_partition(m.size(), blocks_json);
    std::vector<Mask> x;
    if (args.flats.empty()) {
        for (const Flat& f : m.irreducible_flats_of_rank(2)) x.push_back(f.elements);
    } else {
        const Json fj = io::parse_json(args.flats);
        if (!fj.is_array()) throw io::SpecError("--flats must be a JSON array of element lists");
        for (const auto& f : fj) x.push_back(mask_of(io::detail::int_list(f, "flat"), m.size()));
    }
    MultinetVerdict v;
    try {
        v = verify_multinet(m, l, x);
    } catch (const std::invalid_argument& e) {
        throw CommandError(kSemanticError, e.what());
    }
    Json axioms = Json::array();
    for (std::size_t i = 0; i < 4; ++i)
        axioms.push_back({{"axiom", i + 1}, {"holds", v.axioms[i].holds}, {"detail", v.axioms[i].detail}});
    out.report["mode"] = "verify";
    out.report["blocks"] = io::partition_json(l);
    out.report["flats"] = io::mask_list_json(x);
    out.report["axioms"] = axioms;
    out.report["valid"] = v.valid();
    if (v.valid()) {
        out.report["k"] = v.k;
        out.report["d"] = v.d;
        out.report["component"] = io::subspace_json(multinet_component(Rationals{}, l));
    } else {
        out.exit_code = kFailure;
    }
    return out;
}

// ------------------------------------------------------------ singular

struct SingularArgs {
    FieldSpec field;
    std::string subspace;
    std::optional<int> truncation;
};

inline Outcome cmd_singular(const io::LoadedMatroid& input, const SingularArgs& args) {
    Outcome out;
    out.report = detail::header("singular", input, args.field);
    visit_field(args.field, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        const OsAlgebra a(input.matroid);
        Subspace<F> w = io::parse_subspace(field, io::parse_json(args.subspace));
        if (w.ambient() != static_cast<std::size_t>(input.matroid.size()))
            throw CommandError(kSemanticError, "subspace ambient dimension does not match n");
        if (!Subspace<F>::sum_zero(field, w.ambient()).contains(w))
            out.warnings.push_back("subspace is not inside the sum-zero hyperplane");
        const auto r = singular_rank(field, a, w);
        out.report["subspace"] = io::subspace_json(w);
        out.report["dim"] = r.dim;
        out.report["rank"] = r.rank;
        out.report["singular"] = r.is_singular;
        out.report["image_ranks"] = r.image_ranks;
        if (args.truncation) {
            std::vector<std::vector<typename F::value_type>> basis;
            for (std::size_t i = 0; i < w.dim(); ++i) basis.push_back(w.basis_vector(i));
            Json f;
            try {
                const auto phi = truncated_factorization(field, a, basis, *args.truncation);
                f = {{"factors", true},
                     {"source", "U" + std::to_string(phi.source.rank()) + "," + std::to_string(phi.source.size())},
                     {"injective_in_degree_one", phi.injective_in_degree_one}};
                Json ranks = Json::array();
                for (const auto& im : phi.images) ranks.push_back(rank(field, im));
                f["image_ranks"] = ranks;
            } catch (const NotSingularEnough& e) {
                f = {{"factors", false}, {"reason", e.what()}};
            }
            f["q"] = *args.truncation;
            out.report["factorization"] = f;
        }
    });
    return out;
}

// ------------------------------------------------------------ check

struct CheckArgs {
    FieldSpec field;
    std::string vector;
};

/// Runs every pointwise identity whose hypotheses the point meets.
inline Outcome cmd_check(const io::LoadedMatroid& input, const CheckArgs& args) {
    Outcome out;
    out.report = detail::header("check", input, args.field);
    bool violated = false;
    visit_field(args.field, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        const Matroid& m = input.matroid;
        const OsAlgebra a(m);
        const ResonanceEngine<F> engine(a, field);
        const auto v = detail::point_arg(field, args.vector, m.size());
        out.report["point"] = io::vector_json(field, v);
        out.report["dims"] = engine.cohomology_dims(v);
        Json checks = Json::object();
        auto put = [&](const std::string& name, const CheckResult& r) {
            violated = violated || !r.ok();
            checks[name] = detail::check_json(r);
        };
        put("bottom_degree", bottom_degree_check(engine, v));
        const auto two = field.from_int(2);
        if (!field.is_zero(two)) put("scaling", CheckResult::verdict(scaling_invariance_check(engine, v, two)));
        if (in_sum_zero(field, v)) {
            out.report["projective_dims"] = engine.cohomology_dims(v, true);
            put("propagation", propagation_check(engine, v));
            put("euler", euler_check(engine, v));
            for (int p = 0; p <= m.rank(); ++p) put("decone_" + std::to_string(p), decone_check(engine, v, p));
        } else {
            put("propagation", CheckResult::skipped("point not in the sum-zero hyperplane"));
        }
        const bool torus = std::none_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); });
        if (torus) {
            const Matroid d = m.dual();
            const OsAlgebra ad(d);
            const ResonanceEngine<F> de(ad, field);
            for (int p = 0; p <= m.rank(); ++p) put("duality_" + std::to_string(p), duality_torus_check(engine, de, v, p));
        } else {
            put("duality", CheckResult::skipped("point has a zero coordinate"));
        }
        out.report["checks"] = checks;
    });
    out.report["ok"] = !violated;
    if (violated) out.exit_code = kFailure;
    return out;
}

// ------------------------------------------------------------ corpus

inline Outcome cmd_corpus(const std::string& suite, const corpus::CorpusOptions& options) {
    Outcome out;
    const auto& names = corpus::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw CommandError(kParseError, "unknown suite '" + suite + "'");
    const auto results = corpus::run_suite(suite, options);
    out.report = corpus::report(suite, options, results);
    if (!corpus::all_pass(results)) out.exit_code = kFailure;
    return out;
}

}  // namespace resonator::cli
