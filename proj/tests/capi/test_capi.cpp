#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "dvslab/capi.h"

using nlohmann::json;

namespace {

const char* kSpec = R"({
  "seed": 42,
  "experiments": [
    {"name": "run", "game": "psi", "scheme": "leaky", "adversary": "trailer",
     "n": 2, "kappa": 16, "trials": 300}
  ],
  "relations": []
})";

}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(dvslab_version()) == "0.1.0");
}

TEST_CASE("run_spec returns a result handle with json") {
    dvslab_result* result = nullptr;
    dvslab_status status = dvslab_run_spec(kSpec, &result);
    REQUIRE(status == DVSLAB_OK);
    REQUIRE(result != nullptr);

    CHECK(dvslab_result_experiment_count(result) == 1);
    CHECK(dvslab_result_relation_count(result) == 0);
    CHECK(dvslab_result_failed_relations(result) == 0);

    json root = json::parse(dvslab_result_json(result));
    CHECK(root["experiments"][0]["wins"] == 300);
    CHECK(root["experiments"][0]["p_hat"] == "1.000000000");
    CHECK(root["seed"] == 42);

    dvslab_result_free(result);
}

TEST_CASE("identical specs give identical results through the C surface") {
    dvslab_result* a = nullptr;
    dvslab_result* b = nullptr;
    REQUIRE(dvslab_run_spec(kSpec, &a) == DVSLAB_OK);
    REQUIRE(dvslab_run_spec(kSpec, &b) == DVSLAB_OK);
    json ja = json::parse(dvslab_result_json(a));
    json jb = json::parse(dvslab_result_json(b));
    // Everything except wall-clock timing must reproduce exactly.
    for (json* doc : {&ja, &jb})
        for (json& e : (*doc)["experiments"]) e.erase("seconds");
    CHECK(ja["experiments"] == jb["experiments"]);
    dvslab_result_free(a);
    dvslab_result_free(b);
}

TEST_CASE("unknown names map to DVSLAB_ERR_UNKNOWN_NAME") {
    dvslab_result* result = nullptr;
    const char* spec = R"({"experiments":[{"scheme":"nosuch"}]})";
    CHECK(dvslab_run_spec(spec, &result) == DVSLAB_ERR_UNKNOWN_NAME);
    CHECK(result == nullptr);
    CHECK(std::strstr(dvslab_last_error(), "nosuch") != nullptr);
}

TEST_CASE("malformed json maps to DVSLAB_ERR_PARSE with location") {
    dvslab_result* result = nullptr;
    CHECK(dvslab_run_spec("{not json", &result) == DVSLAB_ERR_PARSE);
    CHECK(result == nullptr);
    CHECK(std::strstr(dvslab_last_error(), "line") != nullptr);
}

TEST_CASE("null arguments map to DVSLAB_ERR_INVALID_ARGUMENT") {
    dvslab_result* result = nullptr;
    CHECK(dvslab_run_spec(nullptr, &result) == DVSLAB_ERR_INVALID_ARGUMENT);
    CHECK(dvslab_run_spec(kSpec, nullptr) == DVSLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("failed relations are countable for exit codes") {
    const char* spec = R"({
      "seed": 5,
      "experiments": [
        {"name": "strong", "game": "psi", "scheme": "leaky", "adversary": "trailer", "trials": 200},
        {"name": "weak", "game": "psi", "scheme": "dhmac", "adversary": "trailer", "trials": 200}
      ],
      "relations": [
        {"lhs": "strong", "rhs": "weak", "factor": 1.0, "direction": "leq"},
        {"lhs": "strong", "rhs": "strong", "factor": 1.0, "direction": "eq"}
      ]
    })";
    dvslab_result* result = nullptr;
    REQUIRE(dvslab_run_spec(spec, &result) == DVSLAB_OK);
    CHECK(dvslab_result_relation_count(result) == 2);
    CHECK(dvslab_result_failed_relations(result) == 1);
    dvslab_result_free(result);
}

TEST_CASE("null result handles are inert") {
    CHECK(std::string(dvslab_result_json(nullptr)).empty());
    CHECK(dvslab_result_experiment_count(nullptr) == 0);
    dvslab_result_free(nullptr);
}
