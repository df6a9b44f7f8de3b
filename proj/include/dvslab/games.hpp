#pragma once

#include <memory>
#include <optional>
#include <string>

#include "dvslab/adversaries.hpp"
#include "dvslab/schemes.hpp"

namespace dvslab {

enum class OracleSetName { standard, huang, no_verify, crossover };

std::string_view oracle_set_name(OracleSetName name);
std::optional<OracleSetName> parse_oracle_set(std::string_view name);

// Configuration error distinct from domain errors; maps to usage failures at
// the CLI boundary.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GameConfig {
    GameKind kind = GameKind::psi;
    unsigned kappa = 16;
    int n = 2;
    std::optional<int> challenge;  // fixed c (psi family) or b (nt)
    OracleSetName oracle_set = OracleSetName::standard;
    SchemeId scheme = SchemeId::dhmac;
    std::string adversary_id = "random";
    std::string reduction_id;       // empty: play the adversary directly
    std::size_t hybrid_j = 0;       // hybrid game / nt-hybrid reduction index
    GroupProfile profile = GroupProfile::standard;
    std::uint64_t seed = 1;
    // The adversarial-challenge game rejects r in {s0, s1} by default; flip
    // this to allow the verifier to coincide with a challenge sender.
    bool advpsi_allow_challenge_verifier = false;
};

struct GameOutcome {
    GameKind kind = GameKind::psi;
    bool won = false;
    int guess = -1;
    int challenge = -1;
    OracleCounts oracle_counts;
};

// Owns a wrapper chain; top() is the set handed to the adversary.
struct OracleStack {
    std::vector<std::unique_ptr<OracleSet>> layers;
    OracleSet& top() { return *layers.back(); }
};

OracleStack make_oracle_stack(OracleSetName name, const Scheme& scheme,
                              const Params& params, const PartyRoster& roster,
                              Rng rng);

// Fixed child-stream slots of the per-trial rng, shared by every runner so
// that games that differ only in oracle wiring stay aligned trial-for-trial.
namespace rng_slot {
constexpr std::uint64_t setup = 0;
constexpr std::uint64_t challenge = 1;
constexpr std::uint64_t challenge_sign = 2;
constexpr std::uint64_t adversary = 3;
constexpr std::uint64_t oracle = 4;
constexpr std::uint64_t keys = 5;
}  // namespace rng_slot

// Sender-privacy experiment (fixed-pair psi or random-challenge nrpsi):
// setup, n+1 keygens, phase-1 adversary, challenge Sign[P_c][P_n](m*),
// phase-2 adversary, win iff the guess equals c.
GameOutcome run_psi(const GameConfig& cfg, const Scheme& scheme,
                    TwoPhaseAdversary& adversary, Rng& trial_rng);

// Adversarial-challenge variant: the adversary picks (s0, s1, r) in phase 1
// and the challenge is Sign[P_{s_c}][P_r](m*). An invalid choice is a loss.
GameOutcome run_advpsi(const GameConfig& cfg, const Scheme& scheme,
                       TwoPhaseAdversary& adversary, Rng& trial_rng);

// Non-transferability experiment: adversary holds both full keypairs; the
// challenge is Sign (b=0) or Simulate (b=1); win iff it recovers b.
GameOutcome run_nt(const GameConfig& cfg, const Scheme& scheme,
                   TwoPhaseAdversary& adversary, Rng& trial_rng);

// Strong unforgeability: single-phase adversary with standard oracles wins
// iff its output verifies and differs from every oracle-issued signature.
GameOutcome run_uf(const GameConfig& cfg, const Scheme& scheme,
                   UfAdversary& adversary, Rng& trial_rng);

// The j-th interpolation game of the n-to-2 embedding: psi with no-verify
// oracles where the first j crossover calls are answered by the swapped
// algorithm.
GameOutcome run_hybrid(const GameConfig& cfg, const Scheme& scheme,
                       TwoPhaseAdversary& adversary, Rng& trial_rng);

// PSI-style run over an externally prepared roster and oracle set with the
// challenge index fixed; reductions re-running games internally use this.
GameOutcome run_psi_session(const Scheme& scheme, const Params& params,
                            const PartyRoster& roster, OracleSet& oracles,
                            TwoPhaseAdversary& adversary, GameKind view_kind,
                            int challenge_index, Rng& sign_rng, Rng& adv_rng);

}  // namespace dvslab
