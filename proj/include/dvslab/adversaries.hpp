#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "dvslab/oracles.hpp"

namespace dvslab {

enum class GameKind { psi, nrpsi, advpsi, nt, uf, hybrid };

std::string_view game_name(GameKind kind);
std::optional<GameKind> parse_game(std::string_view name);

// Width of the legal guess set: n for the random-challenge game, 2 otherwise.
int guess_range(GameKind kind, int n);

// Everything a game hands an adversary at phase 1. The non-transferability
// game additionally discloses both full keypairs; all other information must
// reach the adversary through the oracle set.
struct NtKeys {
    KeyPair sender;
    KeyPair verifier;
};

struct GameView {
    GameKind kind = GameKind::psi;
    Params params;
    std::vector<GroupElement> public_keys;  // slots 0..n; [pk_S, pk_V] for nt
    int n = 2;
    std::optional<NtKeys> nt_keys;
};

// The adversarial-challenge game lets the adversary pick the two candidate
// senders and the verifier.
struct AdvChallengeChoice {
    int s0 = 0;
    int s1 = 1;
    int r = 2;
};

struct ChallengeRequest {
    Message m_star;
    std::optional<AdvChallengeChoice> choice;  // advpsi only
};

struct Phase1Result {
    ChallengeRequest request;
    Bytes state;  // opaque; round-trips unchanged into phase 2
};

// Two-phase adversary contract. Phase 2 sees only the opaque state, the
// challenge signature, the phase-2 oracles, and its rng stream; anything an
// adversary needs across phases must ride in the state bytes. That is what
// lets reduction wrappers tunnel their own data alongside an inner state.
class TwoPhaseAdversary {
public:
    virtual ~TwoPhaseAdversary() = default;

    virtual Phase1Result phase1(const GameView& view, OracleSet& oracles,
                                Rng& rng) = 0;
    virtual int phase2(const Bytes& state, const Signature& sigma_star,
                       OracleSet& oracles, Rng& rng) = 0;
};

struct Forgery {
    Message m;
    Signature sigma;
    int s = -1;
    int v = -1;
};

// Single-phase adversary for the unforgeability game.
class UfAdversary {
public:
    virtual ~UfAdversary() = default;
    virtual Forgery run(const GameView& view, OracleSet& oracles, Rng& rng) = 0;
};

using TwoPhaseFactory = std::function<std::unique_ptr<TwoPhaseAdversary>()>;
using UfFactory = std::function<std::unique_ptr<UfAdversary>()>;

// Baseline: fixed challenge message, uniform guess. In the adversarial-
// challenge game it requests s0=0, s1=1, r=n.
std::unique_ptr<TwoPhaseAdversary> make_random_guesser();

// Reads the signature trailer: matches it against the known public keys in
// the sender-privacy games, outputs it as the bit in the NT game. Degenerates
// to a constant guess on trailerless schemes.
std::unique_ptr<TwoPhaseAdversary> make_trailer_reader();

// Asks the sign oracle for one signature, then queries the verify oracle on
// the same message with an all-zero tag; otherwise plays like the random
// guesser. Distinguishes standard from verify-stripped oracle sets.
std::unique_ptr<TwoPhaseAdversary> make_verify_probe();

// Queries one crossover position (sender 0, verifier 2) and flips its final
// guess when that answer carries a simulate trailer; the winning guess is
// recovered by re-asking the sign oracle for the challenge message. Makes
// hybrid games distinguishable on origin-marking schemes.
std::unique_ptr<TwoPhaseAdversary> make_hybrid_probe();

// Outputs a never-issued all-zero-tag forgery with no oracle queries.
std::unique_ptr<UfAdversary> make_zero_forger();

struct AdversaryEntry {
    TwoPhaseFactory two_phase;  // null for single-phase adversaries
    UfFactory uf;               // null for two-phase adversaries
};

std::optional<AdversaryEntry> find_adversary(std::string_view id);
std::vector<std::string_view> adversary_names();

Signature zero_tag_signature(unsigned kappa);

}  // namespace dvslab
