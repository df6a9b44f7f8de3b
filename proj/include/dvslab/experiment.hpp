#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvslab/estimator.hpp"

namespace dvslab {

inline constexpr const char* kVersion = "0.1.0";

// Spec-file syntax error; carries a message with line and column.
class SpecParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentDef {
    std::string name;
    GameConfig cfg;
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> seed;  // defaults to the spec-level seed
};

struct RelationDef {
    std::string lhs;
    std::string rhs;
    double factor = 1.0;
    std::string factor_text = "1";  // original spelling, e.g. "2/4"
    RelationDirection direction = RelationDirection::leq;
    std::optional<double> slack;  // defaults to the spec-level slack
};

struct ExperimentSpec {
    std::uint64_t seed = 1;
    int jobs = 1;
    double slack = 0.01;
    std::optional<std::string> out;
    std::vector<ExperimentDef> experiments;
    std::vector<RelationDef> relations;
};

struct ExperimentResult {
    ExperimentDef def;
    std::uint64_t seed_used = 0;
    AdvantageEstimate estimate;
    double seconds = 0.0;
};

struct RelationResult {
    RelationDef def;
    RelationVerdict verdict;
};

struct ResultDocument {
    std::string version = kVersion;
    ExperimentSpec spec;
    std::vector<ExperimentResult> experiments;
    std::vector<RelationResult> relations;
    std::uint64_t seed = 0;
    double seconds = 0.0;

    std::size_t failed_relations() const;
};

// "a/b" rationals, plain decimals, or integers.
double parse_rational(const std::string& text);

// Fixed-point decimal rendering used for every derived quantity in the JSON
// output, so re-parsing reproduces the printed value exactly.
std::string format_decimal(double value, int digits = 9);

// Throws SpecParseError on malformed JSON (message carries line/column) and
// ConfigError on unknown identifiers or inconsistent references.
ExperimentSpec parse_spec_json(const std::string& text);

std::string spec_to_json(const ExperimentSpec& spec);

ResultDocument run_spec(const ExperimentSpec& spec);

std::string result_to_json(const ResultDocument& doc);

}  // namespace dvslab
