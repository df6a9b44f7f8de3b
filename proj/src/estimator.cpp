#include "dvslab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

namespace dvslab {

double game_baseline(GameKind kind, int n) {
    switch (kind) {
        case GameKind::nrpsi: return 1.0 / static_cast<double>(n);
        case GameKind::uf: return 0.0;
        default: return 0.5;
    }
}

std::pair<double, double> wilson_ci(std::uint64_t wins, std::uint64_t trials,
                                    double level) {
    if (trials == 0) throw std::invalid_argument("wilson_ci: trials must be >= 1");
    if (wins > trials) throw std::invalid_argument("wilson_ci: wins exceed trials");
    double z;
    if (level == 0.95) z = 1.959963984540054;
    else if (level == 0.90) z = 1.6448536269514722;
    else if (level == 0.99) z = 2.5758293035489004;
    else throw std::invalid_argument("wilson_ci: unsupported confidence level");

    double n = static_cast<double>(trials);
    double p = static_cast<double>(wins) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // Clamp away float residue: the interval lies in [0,1] and contains p.
    double low = std::min(std::max(0.0, center - half), p);
    double high = std::max(std::min(1.0, center + half), p);
    return {low, high};
}

namespace {

struct TrialPlan {
    GameConfig cfg;
    std::shared_ptr<const Scheme> scheme;
    std::optional<ReductionKind> reduction;
    TwoPhaseFactory two_phase;  // null when the game is uf
    UfFactory uf;               // null otherwise
};

bool psi_family(GameKind kind) {
    return kind == GameKind::psi || kind == GameKind::nrpsi ||
           kind == GameKind::hybrid;
}

TrialPlan build_plan(const GameConfig& cfg) {
    TrialPlan plan;
    plan.cfg = cfg;
    plan.scheme = make_scheme(cfg.scheme);

    if (!cfg.reduction_id.empty()) {
        auto kind = parse_reduction(cfg.reduction_id);
        if (!kind) throw ConfigError("unknown reduction: " + cfg.reduction_id);
        plan.reduction = *kind;
    }

    auto entry = find_adversary(cfg.adversary_id);
    if (!entry) throw ConfigError("unknown adversary: " + cfg.adversary_id);

    auto inner_two_phase = [entry, cfg]() {
        if (!entry->two_phase)
            throw ConfigError("adversary '" + cfg.adversary_id +
                              "' is single-phase and cannot play this game");
        return entry->two_phase();
    };

    if (!plan.reduction) {
        if (cfg.kind == GameKind::uf) {
            if (!entry->uf)
                throw ConfigError("adversary '" + cfg.adversary_id +
                                  "' is not an unforgeability adversary");
            plan.uf = entry->uf;
        } else {
            plan.two_phase = [inner_two_phase]() { return inner_two_phase(); };
        }
        return plan;
    }

    int n = cfg.n;
    auto scheme = plan.scheme;
    std::size_t hybrid_j = cfg.hybrid_j;
    switch (*plan.reduction) {
        case ReductionKind::nf2nr:
            if (cfg.kind != GameKind::psi)
                throw ConfigError("nf2nr reduction plays the psi game");
            plan.two_phase = [inner_two_phase, n]() {
                return wrap_nf2nr(inner_two_phase(), n);
            };
            break;
        case ReductionKind::nf2adv:
            if (cfg.kind != GameKind::psi)
                throw ConfigError("nf2adv reduction plays the psi game");
            plan.two_phase = [inner_two_phase, n]() {
                return wrap_nf2adv(inner_two_phase(), n);
            };
            break;
        case ReductionKind::uf_strip:
            if (!psi_family(cfg.kind))
                throw ConfigError("uf-strip reduction plays a psi-family game");
            plan.two_phase = [inner_two_phase]() {
                return strip_verify_adversary(inner_two_phase());
            };
            break;
        case ReductionKind::forgery_extract:
            if (cfg.kind != GameKind::uf)
                throw ConfigError("forge-extract reduction plays the uf game");
            plan.uf = [inner_two_phase, n]() {
                return forgery_extractor(inner_two_phase(), n);
            };
            break;
        case ReductionKind::embed_n_to_2:
            if (cfg.kind != GameKind::psi)
                throw ConfigError("embed reduction plays the psi game");
            // The outer game runs with 2 parties; cfg.n is the embedded width.
            plan.cfg.n = 2;
            plan.two_phase = [inner_two_phase, n, scheme]() {
                return embed_n_to_2(inner_two_phase(), n, scheme);
            };
            break;
        case ReductionKind::nt_from_hybrid:
            if (cfg.kind != GameKind::nt)
                throw ConfigError("nt-hybrid reduction plays the nt game");
            plan.two_phase = [inner_two_phase, n, hybrid_j, scheme]() {
                return nt_from_hybrid([inner_two_phase]() { return inner_two_phase(); },
                                      n, hybrid_j, scheme);
            };
            break;
    }
    return plan;
}

GameOutcome run_plan_trial(const TrialPlan& plan, std::uint64_t master_seed,
                           std::uint64_t trial_index) {
    Rng trial_rng(derive_seed(master_seed, trial_index));
    const GameConfig& cfg = plan.cfg;
    if (plan.uf) {
        std::unique_ptr<UfAdversary> adversary = plan.uf();
        return run_uf(cfg, *plan.scheme, *adversary, trial_rng);
    }
    std::unique_ptr<TwoPhaseAdversary> adversary = plan.two_phase();
    switch (cfg.kind) {
        case GameKind::psi:
        case GameKind::nrpsi:
            return run_psi(cfg, *plan.scheme, *adversary, trial_rng);
        case GameKind::advpsi:
            return run_advpsi(cfg, *plan.scheme, *adversary, trial_rng);
        case GameKind::nt:
            return run_nt(cfg, *plan.scheme, *adversary, trial_rng);
        case GameKind::hybrid:
            return run_hybrid(cfg, *plan.scheme, *adversary, trial_rng);
        case GameKind::uf:
            break;
    }
    throw ConfigError("game kind and adversary type do not match");
}

}  // namespace

GameOutcome run_trial(const GameConfig& cfg, std::uint64_t master_seed,
                      std::uint64_t trial_index) {
    TrialPlan plan = build_plan(cfg);
    return run_plan_trial(plan, master_seed, trial_index);
}

AdvantageEstimate estimate(const GameConfig& cfg, std::uint64_t trials,
                           std::uint64_t master_seed, int jobs) {
    if (trials == 0) throw ConfigError("estimate needs trials >= 1");
    if (jobs < 1) throw ConfigError("estimate needs jobs >= 1");
    TrialPlan plan = build_plan(cfg);

    std::uint64_t wins = 0;
    if (jobs == 1) {
        for (std::uint64_t i = 0; i < trials; ++i)
            wins += run_plan_trial(plan, master_seed, i).won ? 1 : 0;
    } else {
        std::uint64_t worker_count = std::min<std::uint64_t>(
            static_cast<std::uint64_t>(jobs), trials);
        std::vector<std::uint64_t> partial(worker_count, 0);
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::uint64_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&, w]() {
                std::uint64_t local = 0;
                for (std::uint64_t i = w; i < trials; i += worker_count)
                    local += run_plan_trial(plan, master_seed, i).won ? 1 : 0;
                partial[w] = local;
            });
        }
        for (std::thread& t : workers) t.join();
        for (std::uint64_t w : partial) wins += w;
    }

    AdvantageEstimate est;
    est.wins = wins;
    est.trials = trials;
    est.p_hat = static_cast<double>(wins) / static_cast<double>(trials);
    // The baseline follows the game the adversary actually wins or loses:
    // the outer game kind (reductions change the adversary, not the game).
    est.baseline = game_baseline(plan.cfg.kind, plan.cfg.n);
    est.advantage = est.p_hat - est.baseline;
    auto [low, high] = wilson_ci(wins, trials);
    est.ci_low = low;
    est.ci_high = high;
    return est;
}

std::string_view relation_direction_name(RelationDirection d) {
    return d == RelationDirection::leq ? "leq" : "eq";
}

std::optional<RelationDirection> parse_relation_direction(std::string_view name) {
    if (name == "leq") return RelationDirection::leq;
    if (name == "eq") return RelationDirection::eq;
    return std::nullopt;
}

RelationVerdict check_relation(const AdvantageEstimate& lhs,
                               const AdvantageEstimate& rhs, double factor,
                               RelationDirection direction, double slack) {
    RelationVerdict verdict;
    verdict.factor = factor;
    verdict.direction = direction;
    verdict.lhs_advantage = lhs.advantage;
    verdict.rhs_advantage = rhs.advantage;
    verdict.scaled_lhs = factor * lhs.advantage;
    verdict.combined_ci =
        std::abs(factor) * lhs.ci_half_width() + rhs.ci_half_width();
    verdict.slack = slack;
    double tolerance = verdict.combined_ci + slack;
    if (direction == RelationDirection::leq)
        verdict.holds = verdict.scaled_lhs <= verdict.rhs_advantage + tolerance;
    else
        verdict.holds = std::abs(verdict.scaled_lhs - verdict.rhs_advantage) <= tolerance;
    return verdict;
}

double estimate_statistical_distance(const Scheme& scheme, const Params& params,
                                     const KeyPair& sender, const KeyPair& verifier,
                                     const Message& m, std::size_t samples,
                                     Rng& rng) {
    if (samples == 0)
        throw std::invalid_argument("statistical distance needs samples >= 1");
    std::map<Bytes, std::int64_t> diff;
    Rng sign_rng = rng.child(0);
    Rng sim_rng = rng.child(1);
    for (std::size_t i = 0; i < samples; ++i) {
        SigResult s = scheme.sign(sender.sk, sender.pk, verifier.pk, m, params,
                                  sign_rng);
        SigResult t = scheme.simulate(verifier.sk, verifier.pk, sender.pk, m,
                                      params, sim_rng);
        diff[std::get<Signature>(s).encode()] += 1;
        diff[std::get<Signature>(t).encode()] -= 1;
    }
    double total = 0.0;
    for (const auto& [bytes, count] : diff)
        total += std::abs(static_cast<double>(count));
    return total / (2.0 * static_cast<double>(samples));
}

}  // namespace dvslab
