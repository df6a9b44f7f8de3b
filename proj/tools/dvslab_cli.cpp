// Experiment runner CLI. Links the C API of the dvslab shared library; the
// spec travels as JSON both ways. Human-readable tables go to stderr, the
// JSON result document to stdout or --out, so pipelines see clean JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dvslab/capi.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailedVerdict = 1;
constexpr int kExitUsage = 2;

struct RunFlags {
    std::string game = "psi";
    std::string scheme = "dhmac";
    std::string adversary = "random";
    std::string oracles = "standard";
    std::string reduction;
    std::string profile = "standard";
    int n = 2;
    unsigned kappa = 16;
    int c = -1;
    bool c_set = false;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned hybrid_j = 0;
    int jobs = 1;
    double slack = 0.01;
    std::string out;
};

json spec_from_flags(const RunFlags& flags) {
    json experiment;
    experiment["name"] = "run";
    experiment["game"] = flags.game;
    experiment["scheme"] = flags.scheme;
    experiment["adversary"] = flags.adversary;
    experiment["oracles"] = flags.oracles;
    if (!flags.reduction.empty()) experiment["reduction"] = flags.reduction;
    experiment["n"] = flags.n;
    experiment["kappa"] = flags.kappa;
    if (flags.c_set) experiment["c"] = flags.c;
    experiment["hybrid_j"] = flags.hybrid_j;
    experiment["profile"] = flags.profile;
    experiment["trials"] = flags.trials;

    json spec;
    spec["seed"] = flags.seed;
    spec["jobs"] = flags.jobs;
    spec["slack"] = flags.slack;
    spec["experiments"] = json::array({experiment});
    spec["relations"] = json::array();
    return spec;
}

void print_tables(const json& result) {
    std::fprintf(stderr, "%-14s %-7s %-12s %-12s %2s %5s %8s %8s  %-10s %-10s %s\n",
                 "name", "game", "scheme", "adversary", "n", "kappa", "trials",
                 "wins", "p_hat", "advantage", "ci95");
    for (const json& e : result.at("experiments")) {
        std::fprintf(stderr,
                     "%-14s %-7s %-12s %-12s %2d %5u %8llu %8llu  %-10.10s %-10.10s [%s, %s]\n",
                     e.at("name").get<std::string>().c_str(),
                     e.at("game").get<std::string>().c_str(),
                     e.at("scheme").get<std::string>().c_str(),
                     e.at("adversary").get<std::string>().c_str(),
                     e.at("n").get<int>(), e.at("kappa").get<unsigned>(),
                     static_cast<unsigned long long>(e.at("trials").get<std::uint64_t>()),
                     static_cast<unsigned long long>(e.at("wins").get<std::uint64_t>()),
                     e.at("p_hat").get<std::string>().c_str(),
                     e.at("advantage").get<std::string>().c_str(),
                     e.at("ci95")[0].get<std::string>().c_str(),
                     e.at("ci95")[1].get<std::string>().c_str());
    }
    const json& relations = result.at("relations");
    if (!relations.empty()) {
        std::fprintf(stderr, "\n%-14s %-4s %-9s %-14s %-12s %-12s %-12s %s\n", "lhs",
                     "dir", "factor", "rhs", "scaled_lhs", "rhs_adv", "combined_ci",
                     "verdict");
        for (const json& r : relations) {
            std::fprintf(stderr, "%-14s %-4s %-9s %-14s %-12s %-12s %-12s %s\n",
                         r.at("lhs").get<std::string>().c_str(),
                         r.at("direction").get<std::string>().c_str(),
                         r.at("factor").get<std::string>().c_str(),
                         r.at("rhs").get<std::string>().c_str(),
                         r.at("scaled_lhs").get<std::string>().c_str(),
                         r.at("rhs_advantage").get<std::string>().c_str(),
                         r.at("combined_ci").get<std::string>().c_str(),
                         r.at("holds").get<bool>() ? "holds" : "FAILED");
        }
    }
    std::fprintf(stderr, "\nseed %llu, %s s\n",
                 static_cast<unsigned long long>(result.at("seed").get<std::uint64_t>()),
                 result.at("seconds").get<std::string>().c_str());
}

int execute_spec(const std::string& spec_json, const std::string& out_override) {
    dvslab_result* result = nullptr;
    dvslab_status status = dvslab_run_spec(spec_json.c_str(), &result);
    if (status != DVSLAB_OK) {
        std::fprintf(stderr, "error: %s\n", dvslab_last_error());
        return kExitUsage;
    }

    std::string result_json = dvslab_result_json(result);
    json parsed = json::parse(result_json);

    std::string out_path = out_override;
    if (out_path.empty() && parsed.at("spec").contains("out"))
        out_path = parsed.at("spec").at("out").get<std::string>();

    if (out_path.empty()) {
        std::cout << result_json << std::endl;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
            dvslab_result_free(result);
            return kExitUsage;
        }
        out << result_json << std::endl;
    }

    print_tables(parsed);
    std::size_t failed = dvslab_result_failed_relations(result);
    dvslab_result_free(result);
    return failed == 0 ? kExitOk : kExitFailedVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Designated-verifier signature security-game laboratory"};
    app.require_subcommand(1);

    RunFlags flags;
    CLI::App* run = app.add_subcommand("run", "Run one experiment from flags");
    run->add_option("--game", flags.game, "psi|nrpsi|advpsi|nt|uf|hybrid");
    run->add_option("--scheme", flags.scheme, "dhmac|leaky|forgeable|transferable");
    run->add_option("--adversary", flags.adversary,
                    "random|trailer|verify-probe|hybrid-probe|zero-forger");
    run->add_option("--oracles", flags.oracles, "standard|huang|no-verify|crossover");
    run->add_option("--reduction", flags.reduction,
                    "nf2nr|nf2adv|uf-strip|forge-extract|embed|nt-hybrid");
    run->add_option("--profile", flags.profile, "toy|standard");
    run->add_option("--n", flags.n, "number of sender parties");
    run->add_option("--kappa", flags.kappa, "security parameter in bits");
    run->add_option("--c", flags.c, "fixed challenge index or bit")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--trials", flags.trials, "Monte-Carlo trials");
    run->add_option("--seed", flags.seed, "master seed");
    run->add_option("--hybrid-j", flags.hybrid_j, "hybrid index j / gap index k");
    run->add_option("--jobs", flags.jobs, "worker threads");
    run->add_option("--slack", flags.slack, "relation slack");
    run->add_option("--out", flags.out, "write result JSON to file");

    std::string spec_path;
    std::optional<std::uint64_t> cmp_seed;
    std::optional<int> cmp_jobs;
    std::optional<double> cmp_slack;
    std::string cmp_out;
    CLI::App* compare =
        app.add_subcommand("compare", "Run an experiment bundle from a spec file");
    compare->add_option("spec", spec_path, "spec file (JSON)")->required();
    compare->add_option("--seed", cmp_seed, "override spec seed");
    compare->add_option("--jobs", cmp_jobs, "override spec jobs");
    compare->add_option("--slack", cmp_slack, "override spec slack");
    compare->add_option("--out", cmp_out, "override spec output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) {
        flags.c_set = run->count("--c") > 0;
        return execute_spec(spec_from_flags(flags).dump(), flags.out);
    }

    std::ifstream in(spec_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot read %s\n", spec_path.c_str());
        return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    if (cmp_seed || cmp_jobs || cmp_slack) {
        json root;
        try {
            root = json::parse(text);
        } catch (const json::parse_error& err) {
            // Leave malformed text to the library so its line/column
            // diagnostic is the single source of parse errors.
            return execute_spec(text, cmp_out);
        }
        if (cmp_seed) root["seed"] = *cmp_seed;
        if (cmp_jobs) root["jobs"] = *cmp_jobs;
        if (cmp_slack) root["slack"] = *cmp_slack;
        text = root.dump();
    }
    return execute_spec(text, cmp_out);
}
