#include <doctest.h>

#include <json.hpp>

#include "dvslab/experiment.hpp"

using namespace dvslab;
using nlohmann::json;

namespace {

const char* kMiniSpec = R"({
  "seed": 42,
  "jobs": 1,
  "slack": 0.01,
  "experiments": [
    {"name": "psi-leaky", "game": "psi", "scheme": "leaky", "adversary": "trailer",
     "n": 4, "kappa": 16, "trials": 400},
    {"name": "nrpsi-leaky", "game": "nrpsi", "scheme": "leaky", "adversary": "trailer",
     "n": 4, "kappa": 16, "trials": 400}
  ],
  "relations": [
    {"lhs": "psi-leaky", "rhs": "nrpsi-leaky", "factor": "2/4", "direction": "leq"}
  ]
})";

}  // namespace

TEST_CASE("parse_rational accepts fractions and decimals") {
    CHECK(parse_rational("2/4") == doctest::Approx(0.5));
    CHECK(parse_rational("1/12") == doctest::Approx(1.0 / 12.0));
    CHECK(parse_rational("0.25") == doctest::Approx(0.25));
    CHECK(parse_rational("3") == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("x"), ConfigError);
    CHECK_THROWS_AS(parse_rational("1.5abc"), ConfigError);
}

TEST_CASE("format_decimal is fixed point") {
    CHECK(format_decimal(0.25) == "0.250000000");
    CHECK(format_decimal(1.0 / 3.0, 6) == "0.333333");
    CHECK(format_decimal(-0.5, 3) == "-0.500");
}

TEST_CASE("spec parsing fills defaults and validates names") {
    ExperimentSpec spec = parse_spec_json(kMiniSpec);
    CHECK(spec.seed == 42);
    CHECK(spec.experiments.size() == 2);
    CHECK(spec.experiments[0].cfg.kind == GameKind::psi);
    CHECK(spec.experiments[0].cfg.scheme == SchemeId::leaky);
    CHECK(spec.experiments[0].cfg.oracle_set == OracleSetName::standard);
    CHECK(spec.experiments[0].trials == 400);
    CHECK(spec.relations.size() == 1);
    CHECK(spec.relations[0].factor == doctest::Approx(0.5));
    CHECK(spec.relations[0].factor_text == "2/4");
}

TEST_CASE("optional experiment fields are honored") {
    ExperimentSpec spec = parse_spec_json(R"({
      "experiments": [
        {"name": "fixed", "game": "hybrid", "scheme": "transferable",
         "adversary": "hybrid-probe", "oracles": "no-verify",
         "reduction": "uf-strip", "n": 5, "c": 1, "hybrid_j": 3,
         "profile": "toy", "kappa": 8, "trials": 50, "seed": 77}
      ]
    })");
    const GameConfig& cfg = spec.experiments[0].cfg;
    CHECK(cfg.kind == GameKind::hybrid);
    CHECK(cfg.oracle_set == OracleSetName::no_verify);
    CHECK(cfg.reduction_id == "uf-strip");
    CHECK(cfg.challenge == 1);
    CHECK(cfg.hybrid_j == 3);
    CHECK(cfg.profile == GroupProfile::toy);
    CHECK(cfg.kappa == 8);
    CHECK(spec.experiments[0].seed == 77);
}

TEST_CASE("unknown identifiers are named in the error") {
    auto expect_throws_with = [](const std::string& body, const char* needle) {
        try {
            parse_spec_json(body);
            FAIL("expected ConfigError");
        } catch (const ConfigError& err) {
            CHECK(std::string(err.what()).find(needle) != std::string::npos);
        }
    };
    expect_throws_with(R"({"experiments":[{"game":"nosuchgame"}]})", "nosuchgame");
    expect_throws_with(R"({"experiments":[{"scheme":"nosuchscheme"}]})", "nosuchscheme");
    expect_throws_with(R"({"experiments":[{"adversary":"nobody"}]})", "nobody");
    expect_throws_with(R"({"experiments":[{"oracles":"none"}]})", "none");
    expect_throws_with(R"({"experiments":[{"reduction":"warp"}]})", "warp");
    expect_throws_with(
        R"({"experiments":[{"name":"a"}],"relations":[{"lhs":"a","rhs":"ghost"}]})",
        "ghost");
    expect_throws_with(
        R"({"experiments":[{"name":"a"},{"name":"a"}]})", "duplicate");
}

TEST_CASE("malformed json reports line and column") {
    try {
        parse_spec_json("{\n  \"seed\": 1,\n  oops\n}");
        FAIL("expected SpecParseError");
    } catch (const SpecParseError& err) {
        std::string what = err.what();
        CHECK(what.find("line 3") != std::string::npos);
        CHECK(what.find("column") != std::string::npos);
    }
}

TEST_CASE("spec normalization round trips") {
    ExperimentSpec spec = parse_spec_json(kMiniSpec);
    std::string dumped = spec_to_json(spec);
    ExperimentSpec reparsed = parse_spec_json(dumped);
    CHECK(spec_to_json(reparsed) == dumped);
}

TEST_CASE("run_spec evaluates experiments and relations") {
    ResultDocument doc = run_spec(parse_spec_json(kMiniSpec));
    REQUIRE(doc.experiments.size() == 2);
    CHECK(doc.experiments[0].estimate.p_hat == 1.0);
    CHECK(doc.experiments[1].estimate.p_hat == 1.0);
    REQUIRE(doc.relations.size() == 1);
    // (2/4) * 0.5 = 0.25 <= 0.75.
    CHECK(doc.relations[0].verdict.holds);
    CHECK(doc.failed_relations() == 0);
}

TEST_CASE("a violated relation is reported, not hidden") {
    std::string body = R"({
      "seed": 5,
      "experiments": [
        {"name": "strong", "game": "psi", "scheme": "leaky", "adversary": "trailer", "trials": 200},
        {"name": "weak", "game": "psi", "scheme": "dhmac", "adversary": "trailer", "trials": 200}
      ],
      "relations": [
        {"lhs": "strong", "rhs": "weak", "factor": 1.0, "direction": "leq"}
      ]
    })";
    ResultDocument doc = run_spec(parse_spec_json(body));
    CHECK(doc.failed_relations() == 1);  // 0.5 <= ~0 is false
}

TEST_CASE("result document json is schema stable") {
    ResultDocument doc = run_spec(parse_spec_json(kMiniSpec));
    json root = json::parse(result_to_json(doc));

    std::vector<std::string> top_keys;
    for (auto it = root.begin(); it != root.end(); ++it) top_keys.push_back(it.key());
    std::vector<std::string> expected = {"experiments", "relations", "seconds",
                                         "seed", "spec", "version"};
    CHECK(top_keys == expected);

    for (const char* key : {"game", "scheme", "adversary", "n", "kappa", "trials",
                            "wins", "p_hat", "baseline", "advantage", "ci95"}) {
        CAPTURE(key);
        CHECK(root["experiments"][0].contains(key));
    }
    // Derived quantities are decimal strings.
    CHECK(root["experiments"][0]["p_hat"].is_string());
    CHECK(root["experiments"][0]["advantage"].is_string());
    CHECK(root["experiments"][0]["ci95"][0].is_string());
    CHECK(root["relations"][0]["holds"].is_boolean());

    // Round trip: reparsing and re-dumping is lossless.
    CHECK(json::parse(root.dump()) == root);
    CHECK(root["experiments"][0]["p_hat"] == "1.000000000");
    CHECK(root["experiments"][0]["baseline"] == "0.500000000");
    CHECK(root["experiments"][0]["advantage"] == "0.500000000");
}

TEST_CASE("per-experiment seeds override the spec seed") {
    std::string body = R"({
      "seed": 9,
      "experiments": [
        {"name": "a", "game": "psi", "scheme": "dhmac", "adversary": "random", "trials": 300},
        {"name": "b", "game": "psi", "scheme": "dhmac", "adversary": "random", "trials": 300, "seed": 9},
        {"name": "c", "game": "psi", "scheme": "dhmac", "adversary": "random", "trials": 300, "seed": 10}
      ]
    })";
    ResultDocument doc = run_spec(parse_spec_json(body));
    CHECK(doc.experiments[0].estimate.wins == doc.experiments[1].estimate.wins);
    CHECK(doc.experiments[0].estimate.wins != doc.experiments[2].estimate.wins);
}
