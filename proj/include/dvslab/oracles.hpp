#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dvslab/dvs.hpp"

namespace dvslab {

// Parties P_0..P_n; index n is the designated challenge verifier.
struct PartyRoster {
    int n = 0;
    std::vector<KeyPair> keys;  // size n+1

    const KeyPair& party(int i) const { return keys.at(static_cast<std::size_t>(i)); }
    bool in_range(int i) const { return i >= 0 && i <= n; }
};

// keys[i] is drawn from key_rng.child(i), so rosters of different sizes agree
// on their common prefix under the same stream.
PartyRoster make_roster(const Scheme& scheme, const Params& params, int n, Rng& key_rng);

// Bijection on {0..count-1} (the roster index set {0..n}).
struct Permutation {
    std::vector<int> map;
    bool fixes_last = false;

    int size() const { return static_cast<int>(map.size()); }
    int apply(int i) const { return map.at(static_cast<std::size_t>(i)); }
    Permutation inverse() const;

    static Permutation identity(int count);
    // Uniform over all bijections, or over those with map[count-1] = count-1
    // when fix_last is set.
    static Permutation sample(int count, bool fix_last, Rng& rng);
};

enum class OracleKind { sign, sim, veri };

struct TranscriptEntry {
    OracleKind kind;
    int phase;
    Message m;
    std::optional<Signature> sigma_arg;  // veri queries only
    int sender = 0;
    int verifier = 0;
    std::variant<Signature, bool, Bottom> answer;
};

struct OracleCounts {
    std::size_t sign = 0;
    std::size_t sim = 0;
    std::size_t veri = 0;
    std::size_t total() const { return sign + sim + veri; }
};

struct Challenge {
    Message m_star;
    Signature sigma_star;
};

// A set of six oracles (sign/sim/veri for phases 1 and 2) behind one call
// surface; the phase is internal state and flips atomically when the game
// injects the challenge. Empty slots answer Bottom(restricted_query) and are
// not logged; every other call is appended to this set's transcript exactly
// once.
class OracleSet {
public:
    virtual ~OracleSet() = default;

    SigResult sign(const Message& m, int s, int v);
    SigResult sim(const Message& m, int s, int v);
    VerifyResult veri(const Message& m, const Signature& sigma, int s, int v);

    virtual void enter_phase2(const Message& m_star, const Signature& sigma_star);

    int phase() const { return phase_; }
    const std::optional<Challenge>& challenge() const { return challenge_; }
    const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
    OracleCounts counts() const;

    // Signatures handed out by the sign and sim oracles, in call order.
    std::vector<Signature> issued_signatures() const;

    bool slot_empty_probe(OracleKind kind) const { return slot_empty(kind); }

protected:
    virtual bool slot_empty(OracleKind) const { return false; }
    virtual SigResult sign_impl(const Message& m, int s, int v) = 0;
    virtual SigResult sim_impl(const Message& m, int s, int v) = 0;
    virtual VerifyResult veri_impl(const Message& m, const Signature& sigma,
                                   int s, int v) = 0;

private:
    int phase_ = 1;
    std::optional<Challenge> challenge_;
    std::vector<TranscriptEntry> transcript_;
};

// The standard n-sender oracles: sign/sim unrestricted over in-range parties
// in both phases; verify refuses the challenge signature in phase 2.
class StandardOracles : public OracleSet {
public:
    StandardOracles(const Scheme& scheme, Params params,
                    PartyRoster roster, Rng rng,
                    std::optional<Challenge> challenge = std::nullopt);

protected:
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message& m, int s, int v) override;
    VerifyResult veri_impl(const Message& m, const Signature& sigma, int s,
                           int v) override;

    const Scheme& scheme_;
    Params params_;
    PartyRoster roster_;
    Rng rng_;
};

// The restrictive two-sender oracle set: senders {0,1}, verifier fixed to
// P_2, no simulation oracles, and phase-2 refusals on the challenge message
// and signature.
class HuangOracles : public OracleSet {
public:
    HuangOracles(const Scheme& scheme, Params params,
                 PartyRoster roster, Rng rng,
                 std::optional<Challenge> challenge = std::nullopt);

protected:
    bool slot_empty(OracleKind kind) const override {
        return kind == OracleKind::sim;
    }
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message&, int, int) override;
    VerifyResult veri_impl(const Message& m, const Signature& sigma, int s,
                           int v) override;

private:
    const Scheme& scheme_;
    Params params_;
    PartyRoster roster_;
    Rng rng_;
};

// Party indices relabeled through pi before reaching the base set.
class PermutedOracles : public OracleSet {
public:
    PermutedOracles(OracleSet& base, Permutation pi);

    void enter_phase2(const Message& m_star, const Signature& sigma_star) override;

protected:
    bool slot_empty(OracleKind kind) const override;
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message& m, int s, int v) override;
    VerifyResult veri_impl(const Message& m, const Signature& sigma, int s,
                           int v) override;

private:
    int mapped(int i) const;
    OracleSet& base_;
    Permutation pi_;
};

// Base set with both verify oracles removed.
class StrippedOracles : public OracleSet {
public:
    explicit StrippedOracles(OracleSet& base) : base_(base) {}

    void enter_phase2(const Message& m_star, const Signature& sigma_star) override;

protected:
    bool slot_empty(OracleKind kind) const override;
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message& m, int s, int v) override;
    VerifyResult veri_impl(const Message&, const Signature&, int, int) override;

private:
    OracleSet& base_;
};

// An n-party view assembled over a 2-party oracle set: parties {0,1,n} map to
// the outer parties {0,1,2}; parties {2..n-1} are simulated locally with the
// supplied keypairs. Queries pairing an outer party with an internal one are
// answered by the swapped algorithm, which is exactly the replacement the
// hybrid argument counts. Verify oracles are empty.
class CrossoverOracles : public OracleSet {
public:
    // outer_pks are the 2-party roster's public keys [P_0, P_1, P_2];
    // internal_keys cover n-party slots 2..n-1 in order.
    CrossoverOracles(OracleSet& outer, std::vector<GroupElement> outer_pks,
                     std::vector<KeyPair> internal_keys, const Scheme& scheme,
                     Params params, int n, Rng rng);

protected:
    bool slot_empty(OracleKind kind) const override {
        return kind == OracleKind::veri;
    }
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message& m, int s, int v) override;
    VerifyResult veri_impl(const Message&, const Signature&, int, int) override;

private:
    bool outer_party(int i) const { return i == 0 || i == 1 || i == n_; }
    bool internal_party(int i) const { return i >= 2 && i <= n_ - 1; }
    int outer_index(int i) const { return i == n_ ? 2 : i; }
    GroupElement pk_of(int i) const;

    OracleSet& outer_;
    std::vector<GroupElement> outer_pks_;  // outer parties 0,1,2
    std::vector<KeyPair> internal_keys_;   // n-party slots 2..n-1
    const Scheme& scheme_;
    Params params_;
    int n_;
    Rng rng_;
};

// One call that the n-to-2 embedding answers with the swapped algorithm.
struct CrossoverCall {
    std::size_t index;  // 0-based chronological position among crossover calls
    OracleKind kind;    // sign or sim
    Message m;
    int s = 0;
    int v = 0;
};

// Inspect-or-substitute hook for a single crossover position; returning a
// value replaces the oracle's answer, returning nullopt lets the set proceed.
using CrossoverHook =
    std::function<std::optional<SigResult>(const CrossoverCall&)>;

// The interpolation family between the honest n-party no-verify game (j = 0)
// and the fully embedded one (j >= number of crossover calls): the first j
// crossover calls are answered with the swapped algorithm, later ones
// honestly. All keys are held locally, so no outer set is involved.
class HybridOracles : public OracleSet {
public:
    static constexpr std::size_t kSwapAll = ~std::size_t{0};

    HybridOracles(const Scheme& scheme, Params params, PartyRoster roster,
                  std::size_t swap_first, Rng rng);

    void set_hook(std::size_t index, CrossoverHook hook);
    std::size_t crossover_calls() const { return crossover_seen_; }

protected:
    bool slot_empty(OracleKind kind) const override {
        return kind == OracleKind::veri;
    }
    SigResult sign_impl(const Message& m, int s, int v) override;
    SigResult sim_impl(const Message& m, int s, int v) override;
    VerifyResult veri_impl(const Message&, const Signature&, int, int) override;

private:
    bool internal_party(int i) const { return i >= 2 && i <= roster_.n - 1; }
    bool honest_slot(int i) const { return i == 0 || i == 1 || i == roster_.n; }
    SigResult honest_sign(const Message& m, int s, int v);
    SigResult honest_sim(const Message& m, int s, int v);
    SigResult crossover_answer(OracleKind kind, const Message& m, int s, int v);

    const Scheme& scheme_;
    Params params_;
    PartyRoster roster_;
    std::size_t swap_first_;
    std::size_t crossover_seen_ = 0;
    std::optional<std::size_t> hook_index_;
    CrossoverHook hook_;
    Rng rng_;
};

// All six oracles empty; the non-transferability game grants no oracles.
class EmptyOracles : public OracleSet {
protected:
    bool slot_empty(OracleKind) const override { return true; }
    SigResult sign_impl(const Message&, int, int) override;
    SigResult sim_impl(const Message&, int, int) override;
    VerifyResult veri_impl(const Message&, const Signature&, int, int) override;
};

}  // namespace dvslab
