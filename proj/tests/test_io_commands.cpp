#include <gtest/gtest.h>

#include "resonator/catalog.hpp"
#include "resonator/commands.hpp"

namespace {

using namespace resonator;
using io::Json;

TEST(Io, LoadsEveryKind) {
    EXPECT_EQ(io::load_matroid(R"({"kind":"uniform","rank":2,"n":3})").matroid, Matroid::uniform(2, 3));
    EXPECT_EQ(io::load_matroid(R"({"kind":"circuits","n":3,"circuits":[[1,2,3]]})").matroid,
              Matroid::uniform(2, 3));
    EXPECT_EQ(io::load_matroid(R"({"kind":"graph","vertices":3,"edges":[[1,2],[2,3],[3,1]]})").matroid,
              Matroid::uniform(2, 3));
    EXPECT_EQ(io::load_matroid(R"({"kind":"matrix","field":"Q","columns":[[1,0],[0,1],[1,"1/2"]]})").matroid,
              Matroid::uniform(2, 3));
    EXPECT_EQ(io::load_matroid(R"({"kind":"matrix","field":"F2","columns":[[1,0],[0,1],[1,1]]})").matroid,
              Matroid::uniform(2, 3));
}

TEST(Io, Expressions) {
    const auto loaded = io::load_matroid(R"({
        "kind":"expr",
        "defs":{"tri":{"kind":"uniform","rank":2,"n":3}},
        "expr":{"op":"dual","args":["tri"]}})");
    EXPECT_EQ(loaded.matroid, Matroid::uniform(1, 3));

    const auto sum = io::load_matroid(R"({"kind":"expr","expr":{"op":"sum","args":[
        {"kind":"uniform","rank":1,"n":1},{"kind":"uniform","rank":2,"n":3}]}})");
    EXPECT_EQ(sum.matroid, Matroid::direct_sum(Matroid::uniform(1, 1), Matroid::uniform(2, 3)));
    EXPECT_EQ(sum.realizable, std::optional<bool>(true));

    const auto del = io::load_matroid(R"({"kind":"expr","expr":{"op":"delete","elements":[1],"args":[
        {"kind":"uniform","rank":2,"n":4}]}})");
    EXPECT_EQ(del.matroid, Matroid::uniform(2, 3));
}

TEST(Io, RealizabilityFlags) {
    EXPECT_FALSE(io::load_matroid(R"({"kind":"circuits","n":3,"circuits":[[1,2,3]]})").realizable.has_value());
    const auto flagged =
        io::load_matroid(R"({"kind":"circuits","n":3,"circuits":[[1,2,3]],"realizable":false})");
    EXPECT_EQ(flagged.realizable, std::optional<bool>(false));
}

TEST(Io, CanonicalFormIsStable) {
    const std::string a = R"({"kind":"uniform","n":3,"rank":2})";
    const std::string b = R"({ "rank" : 2, "kind" : "uniform", "n" : 3 })";
    EXPECT_EQ(io::canonical_text(io::parse_json(a)), io::canonical_text(io::parse_json(b)));
    EXPECT_EQ(io::digest(io::canonical_text(io::parse_json(a))), io::digest(io::canonical_text(io::parse_json(b))));
    EXPECT_EQ(io::digest("x").size(), 16u);
}

TEST(Io, CircuitSpecRoundTrip) {
    for (const auto& m : {catalog::pyramid(), catalog::fat_triangle(), Matroid::uniform(3, 5)})
        EXPECT_EQ(io::load_matroid(io::circuits_spec(m)).matroid, m);
}

TEST(Io, RejectsMalformedInput) {
    EXPECT_THROW(io::load_matroid("not json"), io::SpecError);
    EXPECT_THROW(io::load_matroid(R"({"kind":"mystery"})"), io::SpecError);
    EXPECT_THROW(io::load_matroid(R"({"kind":"uniform","rank":4,"n":3})"), std::exception);
    EXPECT_THROW(io::load_matroid(R"({"kind":"circuits","n":4,"circuits":[[1,2,3],[1,2,4]]})"), std::exception);
    EXPECT_THROW(io::load_matroid(R"({"kind":"expr","expr":"undefined"})"), io::SpecError);
}

TEST(Io, VectorsAndPartitions) {
    const Rationals q;
    EXPECT_EQ(io::parse_vector(q, std::string("1,-1/2,0")),
              (std::vector<mpq_class>{mpq_class(1), mpq_class(-1, 2), mpq_class(0)}));
    EXPECT_EQ(io::parse_vector(q, std::string(R"([1,"-1/2",0])")), io::parse_vector(q, std::string("1,-1/2,0")));
    const PrimeField f5(5);
    EXPECT_EQ(io::parse_vector(f5, std::string("7,-1")), (std::vector<std::uint64_t>{2, 4}));
    const auto pi = io::parse_partition(4, Json("12|34"));
    EXPECT_EQ(pi.size(), 2u);
    EXPECT_EQ(pi.block_of(1), pi.block_of(2));
    EXPECT_EQ(io::parse_partition(4, io::partition_json(pi)).blocks(), pi.blocks());
    EXPECT_THROW(io::parse_partition(4, Json("12|3")), std::exception);
}

TEST(Io, SubspaceRoundTrip) {
    const Rationals q;
    const auto w = io::parse_subspace(q, io::parse_json(R"({"span":[[1,-1,0],[0,1,-1]]})"));
    EXPECT_EQ(w, Subspace<Rationals>::sum_zero(q, 3));
    EXPECT_EQ(io::parse_subspace(q, io::subspace_json(w)), w);
}

io::LoadedMatroid triangle() {
    return io::load_matroid(R"({"kind":"graph","vertices":3,"edges":[[1,2],[2,3],[3,1]]})");
}

TEST(Commands, ProfileReport) {
    const auto out = cli::cmd_profile(triangle(), {FieldSpec::rationals(), "1,1,-2", true});
    EXPECT_EQ(out.exit_code, cli::kSuccess);
    EXPECT_EQ(out.report["dims"], Json({0, 1, 1}));
    EXPECT_EQ(out.report["command"], "profile");
    EXPECT_THROW(cli::cmd_profile(triangle(), {FieldSpec::rationals(), "1,1", false}), cli::CommandError);
}

TEST(Commands, BoundReportIsTight) {
    cli::BoundArgs args;
    args.degree = 1;
    args.compare = true;
    args.options.mode = ContainmentMode::symbolic;
    const auto out = cli::cmd_bound(triangle(), args);
    EXPECT_EQ(out.exit_code, cli::kSuccess);
    EXPECT_EQ(out.report["status"], "complete");
    EXPECT_EQ(out.report["tight"], true);
    EXPECT_EQ(out.report["components"].size(), 1u);
}

TEST(Commands, MultinetVerifyExitCodes) {
    cli::MultinetArgs good;
    good.blocks = "1|2|3";
    EXPECT_EQ(cli::cmd_multinet(triangle(), good).exit_code, cli::kSuccess);
    const auto u24 = io::load_matroid(R"({"kind":"uniform","rank":2,"n":4})");
    cli::MultinetArgs bad;
    bad.blocks = "1|23|4";
    EXPECT_EQ(cli::cmd_multinet(u24, bad).exit_code, cli::kFailure);
    cli::MultinetArgs missing;
    EXPECT_THROW(cli::cmd_multinet(triangle(), missing), cli::CommandError);
}

TEST(Commands, SingularReport) {
    cli::SingularArgs args;
    args.subspace = R"({"span":[[1,-1,0],[0,1,-1]]})";
    const auto out = cli::cmd_singular(triangle(), args);
    EXPECT_EQ(out.report["rank"], 1);
    EXPECT_EQ(out.report["singular"], true);
}

TEST(Commands, CheckPassesOnResonantPoint) {
    const auto out = cli::cmd_check(triangle(), {FieldSpec::rationals(), "1,1,-2"});
    EXPECT_EQ(out.exit_code, cli::kSuccess);
}

TEST(Commands, CorpusRejectsUnknownSuite) {
    EXPECT_THROW(cli::cmd_corpus("nope", {}), cli::CommandError);
}

}  // namespace
