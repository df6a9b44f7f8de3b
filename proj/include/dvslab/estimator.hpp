#pragma once

#include <utility>

#include "dvslab/games.hpp"
#include "dvslab/reductions.hpp"

namespace dvslab {

struct AdvantageEstimate {
    std::uint64_t wins = 0;
    std::uint64_t trials = 0;
    double p_hat = 0.0;
    double baseline = 0.0;   // 1/2 for psi/advpsi/nt/hybrid, 1/n for nrpsi, 0 for uf
    double advantage = 0.0;  // p_hat - baseline
    double ci_low = 0.0;     // Wilson 95% interval on p_hat
    double ci_high = 0.0;

    double ci_half_width() const { return (ci_high - ci_low) / 2.0; }
};

double game_baseline(GameKind kind, int n);

// Wilson score interval on the win probability. Levels 0.90, 0.95, 0.99.
std::pair<double, double> wilson_ci(std::uint64_t wins, std::uint64_t trials,
                                    double level = 0.95);

// Runs the configured game `trials` times with per-trial seeds derived from
// master_seed; deterministic for any jobs count because trial seeds depend
// only on the trial index.
AdvantageEstimate estimate(const GameConfig& cfg, std::uint64_t trials,
                           std::uint64_t master_seed, int jobs = 1);

// One game run from an explicit trial index; exposed so tests can compare
// whole games trial-for-trial.
GameOutcome run_trial(const GameConfig& cfg, std::uint64_t master_seed,
                      std::uint64_t trial_index);

enum class RelationDirection { leq, eq };

std::string_view relation_direction_name(RelationDirection d);
std::optional<RelationDirection> parse_relation_direction(std::string_view name);

// Empirical verdict on factor * lhs.advantage <= / == rhs.advantage, allowing
// the combined CI half-widths plus an absolute slack.
struct RelationVerdict {
    bool holds = false;
    double factor = 1.0;
    RelationDirection direction = RelationDirection::leq;
    double lhs_advantage = 0.0;
    double rhs_advantage = 0.0;
    double scaled_lhs = 0.0;   // factor * lhs_advantage
    double combined_ci = 0.0;  // factor * lhs half-width + rhs half-width
    double slack = 0.0;
};

RelationVerdict check_relation(const AdvantageEstimate& lhs,
                               const AdvantageEstimate& rhs, double factor,
                               RelationDirection direction, double slack = 0.01);

// Empirical total-variation distance between the Sign and Simulate output
// distributions for fixed keys and message.
double estimate_statistical_distance(const Scheme& scheme, const Params& params,
                                     const KeyPair& sender, const KeyPair& verifier,
                                     const Message& m, std::size_t samples,
                                     Rng& rng);

}  // namespace dvslab
