#include "dvslab/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

namespace dvslab {

using nlohmann::json;

std::size_t ResultDocument::failed_relations() const {
    std::size_t failed = 0;
    for (const RelationResult& r : relations)
        if (!r.verdict.holds) ++failed;
    return failed;
}

double parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        double d = std::stod(den);
        if (d == 0.0) throw std::invalid_argument("zero denominator");
        return std::stod(num) / d;
    } catch (const std::exception&) {
        throw ConfigError("bad rational: '" + text + "'");
    }
}

std::string format_decimal(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

GroupProfile parse_profile_or_throw(const std::string& name) {
    if (name == "toy") return GroupProfile::toy;
    if (name == "standard") return GroupProfile::standard;
    throw ConfigError("unknown profile: " + name);
}

std::string profile_name(GroupProfile profile) {
    return profile == GroupProfile::toy ? "toy" : "standard";
}

ExperimentDef parse_experiment(const json& j, std::size_t index) {
    ExperimentDef def;
    def.name = j.value("name", "e" + std::to_string(index));

    GameConfig& cfg = def.cfg;
    std::string game = j.value("game", "psi");
    auto kind = parse_game(game);
    if (!kind) throw ConfigError("unknown game: " + game);
    cfg.kind = *kind;

    std::string scheme = j.value("scheme", "dhmac");
    auto scheme_id = parse_scheme(scheme);
    if (!scheme_id) throw ConfigError("unknown scheme: " + scheme);
    cfg.scheme = *scheme_id;

    cfg.adversary_id = j.value("adversary", "random");
    if (!find_adversary(cfg.adversary_id))
        throw ConfigError("unknown adversary: " + cfg.adversary_id);

    std::string oracles = j.value("oracles", "standard");
    auto oracle_set = parse_oracle_set(oracles);
    if (!oracle_set) throw ConfigError("unknown oracles: " + oracles);
    cfg.oracle_set = *oracle_set;

    if (j.contains("reduction") && !j.at("reduction").is_null()) {
        cfg.reduction_id = j.at("reduction").get<std::string>();
        if (!parse_reduction(cfg.reduction_id))
            throw ConfigError("unknown reduction: " + cfg.reduction_id);
    }

    cfg.n = j.value("n", 2);
    cfg.kappa = j.value("kappa", 16u);
    if (j.contains("c") && !j.at("c").is_null())
        cfg.challenge = j.at("c").get<int>();
    cfg.hybrid_j = j.value("hybrid_j", 0u);
    cfg.profile = parse_profile_or_throw(j.value("profile", "standard"));

    def.trials = j.value("trials", std::uint64_t{1000});
    if (def.trials < 1) throw ConfigError("trials must be >= 1");
    if (j.contains("seed") && !j.at("seed").is_null())
        def.seed = j.at("seed").get<std::uint64_t>();
    return def;
}

RelationDef parse_relation(const json& j) {
    RelationDef def;
    def.lhs = j.at("lhs").get<std::string>();
    def.rhs = j.at("rhs").get<std::string>();
    if (j.contains("factor")) {
        const json& f = j.at("factor");
        if (f.is_string()) {
            def.factor_text = f.get<std::string>();
            def.factor = parse_rational(def.factor_text);
        } else {
            def.factor = f.get<double>();
            def.factor_text = format_decimal(def.factor, 6);
        }
    }
    std::string direction = j.value("direction", "leq");
    auto dir = parse_relation_direction(direction);
    if (!dir) throw ConfigError("unknown direction: " + direction);
    def.direction = *dir;
    if (j.contains("slack") && !j.at("slack").is_null())
        def.slack = j.at("slack").get<double>();
    return def;
}

json experiment_to_json_def(const ExperimentDef& def) {
    json j;
    j["name"] = def.name;
    j["game"] = std::string(game_name(def.cfg.kind));
    j["scheme"] = std::string(scheme_name(def.cfg.scheme));
    j["adversary"] = def.cfg.adversary_id;
    j["oracles"] = std::string(oracle_set_name(def.cfg.oracle_set));
    if (!def.cfg.reduction_id.empty()) j["reduction"] = def.cfg.reduction_id;
    j["n"] = def.cfg.n;
    j["kappa"] = def.cfg.kappa;
    if (def.cfg.challenge) j["c"] = *def.cfg.challenge;
    j["hybrid_j"] = def.cfg.hybrid_j;
    j["profile"] = profile_name(def.cfg.profile);
    j["trials"] = def.trials;
    if (def.seed) j["seed"] = *def.seed;
    return j;
}

json spec_to_json_tree(const ExperimentSpec& spec) {
    json j;
    j["seed"] = spec.seed;
    j["jobs"] = spec.jobs;
    j["slack"] = format_decimal(spec.slack, 6);
    if (spec.out) j["out"] = *spec.out;
    j["experiments"] = json::array();
    for (const ExperimentDef& def : spec.experiments)
        j["experiments"].push_back(experiment_to_json_def(def));
    j["relations"] = json::array();
    for (const RelationDef& def : spec.relations) {
        json rel;
        rel["lhs"] = def.lhs;
        rel["rhs"] = def.rhs;
        rel["factor"] = def.factor_text;
        rel["direction"] = std::string(relation_direction_name(def.direction));
        if (def.slack) rel["slack"] = format_decimal(*def.slack, 6);
        j["relations"].push_back(rel);
    }
    return j;
}

}  // namespace

ExperimentSpec parse_spec_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        auto [line, col] = line_column(text, err.byte > 0 ? err.byte - 1 : 0);
        throw SpecParseError("spec parse error at line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ": " + err.what());
    }
    try {
        ExperimentSpec spec;
        spec.seed = root.value("seed", std::uint64_t{1});
        spec.jobs = root.value("jobs", 1);
        if (spec.jobs < 1) throw ConfigError("jobs must be >= 1");
        if (root.contains("slack")) {
            const json& s = root.at("slack");
            spec.slack = s.is_string() ? parse_rational(s.get<std::string>())
                                       : s.get<double>();
        }
        if (root.contains("out") && !root.at("out").is_null())
            spec.out = root.at("out").get<std::string>();

        std::set<std::string> names;
        if (root.contains("experiments")) {
            std::size_t index = 0;
            for (const json& e : root.at("experiments")) {
                ExperimentDef def = parse_experiment(e, index++);
                if (!names.insert(def.name).second)
                    throw ConfigError("duplicate experiment name: " + def.name);
                spec.experiments.push_back(std::move(def));
            }
        }
        if (spec.experiments.empty())
            throw ConfigError("spec contains no experiments");

        if (root.contains("relations")) {
            for (const json& r : root.at("relations")) {
                RelationDef def = parse_relation(r);
                if (!names.count(def.lhs))
                    throw ConfigError("relation references unknown experiment: " + def.lhs);
                if (!names.count(def.rhs))
                    throw ConfigError("relation references unknown experiment: " + def.rhs);
                spec.relations.push_back(std::move(def));
            }
        }
        return spec;
    } catch (const json::exception& err) {
        throw ConfigError(std::string("malformed spec: ") + err.what());
    }
}

std::string spec_to_json(const ExperimentSpec& spec) {
    return spec_to_json_tree(spec).dump(2);
}

ResultDocument run_spec(const ExperimentSpec& spec) {
    using clock = std::chrono::steady_clock;
    ResultDocument doc;
    doc.spec = spec;
    doc.seed = spec.seed;

    auto total_start = clock::now();
    std::map<std::string, AdvantageEstimate> by_name;
    for (const ExperimentDef& def : spec.experiments) {
        ExperimentResult result;
        result.def = def;
        result.seed_used = def.seed.value_or(spec.seed);
        auto start = clock::now();
        result.estimate = estimate(def.cfg, def.trials, result.seed_used, spec.jobs);
        result.seconds = std::chrono::duration<double>(clock::now() - start).count();
        by_name[def.name] = result.estimate;
        doc.experiments.push_back(std::move(result));
    }
    for (const RelationDef& def : spec.relations) {
        RelationResult result;
        result.def = def;
        result.verdict = check_relation(by_name.at(def.lhs), by_name.at(def.rhs),
                                        def.factor, def.direction,
                                        def.slack.value_or(spec.slack));
        doc.relations.push_back(std::move(result));
    }
    doc.seconds = std::chrono::duration<double>(clock::now() - total_start).count();
    return doc;
}

std::string result_to_json(const ResultDocument& doc) {
    json j;
    j["version"] = doc.version;
    j["spec"] = spec_to_json_tree(doc.spec);
    j["experiments"] = json::array();
    for (const ExperimentResult& r : doc.experiments) {
        json e;
        e["name"] = r.def.name;
        e["game"] = std::string(game_name(r.def.cfg.kind));
        e["scheme"] = std::string(scheme_name(r.def.cfg.scheme));
        e["adversary"] = r.def.cfg.adversary_id;
        e["oracles"] = std::string(oracle_set_name(r.def.cfg.oracle_set));
        if (!r.def.cfg.reduction_id.empty()) e["reduction"] = r.def.cfg.reduction_id;
        e["n"] = r.def.cfg.n;
        e["kappa"] = r.def.cfg.kappa;
        e["trials"] = r.estimate.trials;
        e["wins"] = r.estimate.wins;
        e["p_hat"] = format_decimal(r.estimate.p_hat);
        e["baseline"] = format_decimal(r.estimate.baseline);
        e["advantage"] = format_decimal(r.estimate.advantage);
        e["ci95"] = json::array({format_decimal(r.estimate.ci_low),
                                 format_decimal(r.estimate.ci_high)});
        e["seed"] = r.seed_used;
        e["seconds"] = format_decimal(r.seconds, 3);
        j["experiments"].push_back(e);
    }
    j["relations"] = json::array();
    for (const RelationResult& r : doc.relations) {
        json rel;
        rel["lhs"] = r.def.lhs;
        rel["rhs"] = r.def.rhs;
        rel["factor"] = format_decimal(r.verdict.factor, 6);
        rel["direction"] = std::string(relation_direction_name(r.verdict.direction));
        rel["lhs_advantage"] = format_decimal(r.verdict.lhs_advantage);
        rel["rhs_advantage"] = format_decimal(r.verdict.rhs_advantage);
        rel["scaled_lhs"] = format_decimal(r.verdict.scaled_lhs);
        rel["combined_ci"] = format_decimal(r.verdict.combined_ci);
        rel["slack"] = format_decimal(r.verdict.slack, 6);
        rel["holds"] = r.verdict.holds;
        j["relations"].push_back(rel);
    }
    j["seed"] = doc.seed;
    j["seconds"] = format_decimal(doc.seconds, 3);
    return j.dump(2);
}

}  // namespace dvslab
