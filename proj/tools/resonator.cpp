// resonator: command-line front end.  Reports go to stdout as JSON; warnings
// and errors go to stderr.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "resonator/commands.hpp"

namespace {

using resonator::cli::CommandError;
using resonator::cli::Outcome;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path);
    if (!in) throw resonator::io::SpecError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

resonator::FieldSpec field_arg(const std::string& text) {
    try {
        return resonator::FieldSpec::parse(text);
    } catch (const std::exception& e) {
        throw resonator::io::SpecError(e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlik-Solomon algebras and resonance varieties of matroids"};
    app.require_subcommand(1);
    bool timing = false;
    bool pretty = false;
    app.add_flag("--timing", timing, "Include wall time in the report");
    app.add_flag("--pretty", pretty, "Indent the JSON report");

    std::string spec_path;
    std::string field_text = "Q";
    auto add_common = [&](CLI::App* sub, bool with_field) {
        sub->add_option("spec", spec_path, "Matroid spec file (JSON); '-' or omitted reads stdin");
        if (with_field) sub->add_option("--field", field_text, "Q or F<p>")->capture_default_str();
    };

    resonator::cli::ProfileArgs profile;
    auto* profile_cmd = app.add_subcommand("profile", "dim H^p(A, v) for every p");
    add_common(profile_cmd, true);
    profile_cmd->add_option("--vector", profile.vector, "Point, e.g. 1,-1,0 or [1,\"-1/2\",0]")->required();
    profile_cmd->add_flag("--projective", profile.projective, "Also report the projective complex");

    resonator::cli::BoundArgs bound;
    std::string mode = "symbolic";
    auto* bound_cmd = app.add_subcommand("bound", "Maximal components of the cover bound in degree p");
    add_common(bound_cmd, true);
    bound_cmd->add_option("--degree,-p", bound.degree, "Degree p")->required();
    bound_cmd->add_flag("--essential", bound.essential, "Only covers by flats of size > 1");
    bound_cmd->add_flag("--compare", bound.compare, "Test each component for containment in R^p");
    bound_cmd->add_option("--mode", mode, "symbolic or probabilistic")
        ->check(CLI::IsMember({"symbolic", "probabilistic"}))
        ->capture_default_str();
    bound_cmd->add_option("--trials", bound.options.trials, "Probabilistic trials")->capture_default_str();
    bound_cmd->add_option("--seed", bound.options.seed, "Sampling seed")->capture_default_str();
    bound_cmd->add_option("--box", bound.options.box, "Sampling box half-width")->capture_default_str();
    bound_cmd->add_option("--limit", bound.limit, "Cover enumeration cap")->capture_default_str();

    resonator::cli::MultinetArgs multinet;
    bool verify = false;
    auto* multinet_cmd = app.add_subcommand("multinet", "Verify or search for multinets");
    add_common(multinet_cmd, false);
    auto* verify_flag = multinet_cmd->add_flag("--verify", verify, "Check the axioms for --blocks/--flats");
    auto* search_flag = multinet_cmd->add_flag("--search", multinet.search, "Search for multinets");
    verify_flag->excludes(search_flag);
    multinet_cmd->add_option("--blocks", multinet.blocks, "Partition: [[1,2],[3,4]] or \"12|34\"");
    multinet_cmd->add_option("--flats", multinet.flats, "Flats X as JSON lists (default: all rank-2 irreducible)");
    multinet_cmd->add_option("--kmax", multinet.k_max, "Largest number of blocks")->capture_default_str();
    multinet_cmd->add_option("--max-multiplicity", multinet.max_multiplicity, "Multiplicity bound for the search")
        ->capture_default_str();

    resonator::cli::SingularArgs singular;
    int truncation = 0;
    auto* singular_cmd = app.add_subcommand("singular", "Rank of a singular subspace");
    add_common(singular_cmd, true);
    singular_cmd->add_option("--subspace", singular.subspace, "{\"span\": [[...], ...]}")->required();
    auto* q_opt = singular_cmd->add_option("--q", truncation, "Try the truncated factorization at this degree");

    resonator::cli::CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Pointwise identities at a point");
    add_common(check_cmd, true);
    check_cmd->add_option("--vector", check.vector, "Point")->required();

    std::string suite = "paper-examples";
    resonator::corpus::CorpusOptions corpus;
    auto* corpus_cmd = app.add_subcommand("corpus", "Run the regression corpus");
    corpus_cmd->add_option("--suite", suite, "paper-examples, oracle, fuzz or all")->capture_default_str();
    corpus_cmd->add_option("--seed", corpus.seed, "Seed")->capture_default_str();
    corpus_cmd->add_option("--fuzz-cases", corpus.fuzz_cases, "Number of fuzz cases")->capture_default_str();
    corpus_cmd->add_option("--inject-fault", corpus.inject_fault, "Deliberate fault: wrong-circuit")
        ->check(CLI::IsMember({"wrong-circuit"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return resonator::cli::kParseError;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        if (*corpus_cmd) {
            out = resonator::cli::cmd_corpus(suite, corpus);
        } else {
            const auto input = resonator::io::load_matroid(read_input(spec_path));
            const auto field = field_arg(field_text);
            if (*profile_cmd) {
                profile.field = field;
                out = resonator::cli::cmd_profile(input, profile);
            } else if (*bound_cmd) {
                bound.field = field;
                bound.options.mode = mode == "symbolic" ? resonator::ContainmentMode::symbolic
                                                        : resonator::ContainmentMode::probabilistic;
                out = resonator::cli::cmd_bound(input, bound);
            } else if (*multinet_cmd) {
                if (!verify && !multinet.search) throw CommandError(resonator::cli::kParseError, "pass --verify or --search");
                out = resonator::cli::cmd_multinet(input, multinet);
            } else if (*singular_cmd) {
                singular.field = field;
                if (*q_opt) singular.truncation = truncation;
                out = resonator::cli::cmd_singular(input, singular);
            } else if (*check_cmd) {
                check.field = field;
                out = resonator::cli::cmd_check(input, check);
            }
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code();
    } catch (const resonator::io::SpecError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return resonator::cli::kParseError;
    } catch (const resonator::HypothesisError& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return resonator::cli::kSemanticError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return resonator::cli::kSemanticError;
    }

    if (timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        out.report["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << (pretty ? out.report.dump(2) : out.report.dump()) << "\n";
    return out.exit_code;
}
