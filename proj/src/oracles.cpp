#include "dvslab/oracles.hpp"

#include <numeric>
#include <stdexcept>

namespace dvslab {

PartyRoster make_roster(const Scheme& scheme, const Params& params, int n,
                        Rng& key_rng) {
    if (n < 2) throw std::invalid_argument("roster needs n >= 2");
    PartyRoster roster;
    roster.n = n;
    roster.keys.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        Rng stream = key_rng.child(static_cast<std::uint64_t>(i));
        roster.keys.push_back(scheme.keygen(params, stream));
    }
    return roster;
}

Permutation Permutation::identity(int count) {
    Permutation pi;
    pi.map.resize(static_cast<std::size_t>(count));
    std::iota(pi.map.begin(), pi.map.end(), 0);
    return pi;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.fixes_last = fixes_last;
    inv.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        inv.map[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
    return inv;
}

Permutation Permutation::sample(int count, bool fix_last, Rng& rng) {
    Permutation pi = identity(count);
    pi.fixes_last = fix_last;
    int limit = fix_last ? count - 1 : count;
    // Fisher-Yates over the first `limit` points.
    for (int i = limit - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(pi.map[static_cast<std::size_t>(i)],
                  pi.map[static_cast<std::size_t>(j)]);
    }
    return pi;
}

SigResult OracleSet::sign(const Message& m, int s, int v) {
    if (slot_empty(OracleKind::sign)) return Bottom{BottomReason::restricted_query};
    SigResult r = sign_impl(m, s, v);
    TranscriptEntry e{OracleKind::sign, phase_, m, std::nullopt, s, v,
                      std::holds_alternative<Signature>(r)
                          ? std::variant<Signature, bool, Bottom>(std::get<Signature>(r))
                          : std::variant<Signature, bool, Bottom>(std::get<Bottom>(r))};
    transcript_.push_back(std::move(e));
    return r;
}

SigResult OracleSet::sim(const Message& m, int s, int v) {
    if (slot_empty(OracleKind::sim)) return Bottom{BottomReason::restricted_query};
    SigResult r = sim_impl(m, s, v);
    TranscriptEntry e{OracleKind::sim, phase_, m, std::nullopt, s, v,
                      std::holds_alternative<Signature>(r)
                          ? std::variant<Signature, bool, Bottom>(std::get<Signature>(r))
                          : std::variant<Signature, bool, Bottom>(std::get<Bottom>(r))};
    transcript_.push_back(std::move(e));
    return r;
}

VerifyResult OracleSet::veri(const Message& m, const Signature& sigma, int s, int v) {
    if (slot_empty(OracleKind::veri)) return Bottom{BottomReason::restricted_query};
    VerifyResult r = veri_impl(m, sigma, s, v);
    TranscriptEntry e{OracleKind::veri, phase_, m, sigma, s, v,
                      std::holds_alternative<bool>(r)
                          ? std::variant<Signature, bool, Bottom>(std::get<bool>(r))
                          : std::variant<Signature, bool, Bottom>(std::get<Bottom>(r))};
    transcript_.push_back(std::move(e));
    return r;
}

void OracleSet::enter_phase2(const Message& m_star, const Signature& sigma_star) {
    phase_ = 2;
    challenge_ = Challenge{m_star, sigma_star};
}

OracleCounts OracleSet::counts() const {
    OracleCounts c;
    for (const TranscriptEntry& e : transcript_) {
        switch (e.kind) {
            case OracleKind::sign: ++c.sign; break;
            case OracleKind::sim: ++c.sim; break;
            case OracleKind::veri: ++c.veri; break;
        }
    }
    return c;
}

std::vector<Signature> OracleSet::issued_signatures() const {
    std::vector<Signature> out;
    for (const TranscriptEntry& e : transcript_) {
        if (e.kind == OracleKind::veri) continue;
        if (const Signature* sig = std::get_if<Signature>(&e.answer))
            out.push_back(*sig);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Standard oracles

StandardOracles::StandardOracles(const Scheme& scheme, Params params,
                                 PartyRoster roster, Rng rng,
                                 std::optional<Challenge> challenge)
    : scheme_(scheme),
      params_(std::move(params)),
      roster_(std::move(roster)),
      rng_(rng) {
    if (challenge) enter_phase2(challenge->m_star, challenge->sigma_star);
}

SigResult StandardOracles::sign_impl(const Message& m, int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(v);
    return scheme_.sign(sender.sk, sender.pk, verifier.pk, m, params_, rng_);
}

SigResult StandardOracles::sim_impl(const Message& m, int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(v);
    return scheme_.simulate(verifier.sk, verifier.pk, sender.pk, m, params_, rng_);
}

VerifyResult StandardOracles::veri_impl(const Message& m, const Signature& sigma,
                                        int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    if (phase() == 2 && challenge() && sigma == challenge()->sigma_star)
        return Bottom{BottomReason::restricted_query};
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(v);
    return scheme_.verify(verifier.sk, verifier.pk, sender.pk, m, sigma, params_);
}

// ---------------------------------------------------------------------------
// Huang oracles

HuangOracles::HuangOracles(const Scheme& scheme, Params params,
                           PartyRoster roster, Rng rng,
                           std::optional<Challenge> challenge)
    : scheme_(scheme),
      params_(std::move(params)),
      roster_(std::move(roster)),
      rng_(rng) {
    if (roster_.n != 2)
        throw std::invalid_argument("huang oracles are defined for n = 2");
    if (challenge) enter_phase2(challenge->m_star, challenge->sigma_star);
}

SigResult HuangOracles::sign_impl(const Message& m, int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    if (!(s == 0 || s == 1) || v != 2)
        return Bottom{BottomReason::restricted_query};
    if (phase() == 2 && challenge() && m == challenge()->m_star)
        return Bottom{BottomReason::restricted_query};
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(2);
    return scheme_.sign(sender.sk, sender.pk, verifier.pk, m, params_, rng_);
}

SigResult HuangOracles::sim_impl(const Message&, int, int) {
    return Bottom{BottomReason::restricted_query};  // unreachable; slot is empty
}

VerifyResult HuangOracles::veri_impl(const Message& m, const Signature& sigma,
                                     int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    if (!(s == 0 || s == 1) || v != 2)
        return Bottom{BottomReason::restricted_query};
    if (phase() == 2 && challenge() &&
        (sigma == challenge()->sigma_star || m == challenge()->m_star))
        return Bottom{BottomReason::restricted_query};
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(2);
    return scheme_.verify(verifier.sk, verifier.pk, sender.pk, m, sigma, params_);
}

// ---------------------------------------------------------------------------
// Permuted oracles

PermutedOracles::PermutedOracles(OracleSet& base, Permutation pi)
    : base_(base), pi_(std::move(pi)) {}

void PermutedOracles::enter_phase2(const Message& m_star, const Signature& sigma_star) {
    OracleSet::enter_phase2(m_star, sigma_star);
    base_.enter_phase2(m_star, sigma_star);
}

bool PermutedOracles::slot_empty(OracleKind kind) const {
    return base_.slot_empty_probe(kind);
}

int PermutedOracles::mapped(int i) const {
    return (i >= 0 && i < pi_.size()) ? pi_.apply(i) : i;
}

SigResult PermutedOracles::sign_impl(const Message& m, int s, int v) {
    return base_.sign(m, mapped(s), mapped(v));
}

SigResult PermutedOracles::sim_impl(const Message& m, int s, int v) {
    return base_.sim(m, mapped(s), mapped(v));
}

VerifyResult PermutedOracles::veri_impl(const Message& m, const Signature& sigma,
                                        int s, int v) {
    return base_.veri(m, sigma, mapped(s), mapped(v));
}

// ---------------------------------------------------------------------------
// Stripped oracles

void StrippedOracles::enter_phase2(const Message& m_star, const Signature& sigma_star) {
    OracleSet::enter_phase2(m_star, sigma_star);
    base_.enter_phase2(m_star, sigma_star);
}

bool StrippedOracles::slot_empty(OracleKind kind) const {
    if (kind == OracleKind::veri) return true;
    return base_.slot_empty_probe(kind);
}

SigResult StrippedOracles::sign_impl(const Message& m, int s, int v) {
    return base_.sign(m, s, v);
}

SigResult StrippedOracles::sim_impl(const Message& m, int s, int v) {
    return base_.sim(m, s, v);
}

VerifyResult StrippedOracles::veri_impl(const Message&, const Signature&, int, int) {
    return Bottom{BottomReason::restricted_query};  // unreachable; slot is empty
}

// ---------------------------------------------------------------------------
// Crossover oracles (the O'' view of the n-to-2 embedding)

CrossoverOracles::CrossoverOracles(OracleSet& outer,
                                   std::vector<GroupElement> outer_pks,
                                   std::vector<KeyPair> internal_keys,
                                   const Scheme& scheme, Params params, int n,
                                   Rng rng)
    : outer_(outer),
      outer_pks_(std::move(outer_pks)),
      internal_keys_(std::move(internal_keys)),
      scheme_(scheme),
      params_(std::move(params)),
      n_(n),
      rng_(rng) {
    if (n_ < 2) throw std::invalid_argument("crossover oracles need n >= 2");
    if (outer_pks_.size() != 3)
        throw std::invalid_argument("crossover oracles need the 3 outer public keys");
    if (internal_keys_.size() != static_cast<std::size_t>(n_ - 2))
        throw std::invalid_argument("crossover oracles need n-2 internal keypairs");
}

GroupElement CrossoverOracles::pk_of(int i) const {
    if (internal_party(i))
        return internal_keys_.at(static_cast<std::size_t>(i - 2)).pk;
    return outer_pks_.at(static_cast<std::size_t>(outer_index(i)));
}

SigResult CrossoverOracles::sign_impl(const Message& m, int s, int v) {
    if (s < 0 || s > n_ || v < 0 || v > n_)
        return Bottom{BottomReason::invalid_party};
    if (outer_party(s) && outer_party(v))
        return outer_.sign(m, outer_index(s), outer_index(v));
    if (internal_party(s)) {
        // Internal sender: sign locally with its secret key.
        const KeyPair& sender = internal_keys_.at(static_cast<std::size_t>(s - 2));
        return scheme_.sign(sender.sk, sender.pk, pk_of(v), m, params_, rng_);
    }
    // Outer sender, internal verifier: the crossover replacement.
    const KeyPair& verifier = internal_keys_.at(static_cast<std::size_t>(v - 2));
    return scheme_.simulate(verifier.sk, verifier.pk, pk_of(s), m, params_, rng_);
}

SigResult CrossoverOracles::sim_impl(const Message& m, int s, int v) {
    if (s < 0 || s > n_ || v < 0 || v > n_)
        return Bottom{BottomReason::invalid_party};
    if (outer_party(s) && outer_party(v))
        return outer_.sim(m, outer_index(s), outer_index(v));
    if (internal_party(v)) {
        // Internal verifier: simulate locally with its secret key.
        const KeyPair& verifier = internal_keys_.at(static_cast<std::size_t>(v - 2));
        return scheme_.simulate(verifier.sk, verifier.pk, pk_of(s), m, params_, rng_);
    }
    // Internal sender, outer verifier: the crossover replacement.
    const KeyPair& sender = internal_keys_.at(static_cast<std::size_t>(s - 2));
    return scheme_.sign(sender.sk, sender.pk, pk_of(v), m, params_, rng_);
}

VerifyResult CrossoverOracles::veri_impl(const Message&, const Signature&, int, int) {
    return Bottom{BottomReason::restricted_query};  // unreachable; slot is empty
}

// ---------------------------------------------------------------------------
// Hybrid oracles

HybridOracles::HybridOracles(const Scheme& scheme, Params params,
                             PartyRoster roster, std::size_t swap_first, Rng rng)
    : scheme_(scheme),
      params_(std::move(params)),
      roster_(std::move(roster)),
      swap_first_(swap_first),
      rng_(rng) {}

void HybridOracles::set_hook(std::size_t index, CrossoverHook hook) {
    hook_index_ = index;
    hook_ = std::move(hook);
}

SigResult HybridOracles::honest_sign(const Message& m, int s, int v) {
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(v);
    return scheme_.sign(sender.sk, sender.pk, verifier.pk, m, params_, rng_);
}

SigResult HybridOracles::honest_sim(const Message& m, int s, int v) {
    const KeyPair& sender = roster_.party(s);
    const KeyPair& verifier = roster_.party(v);
    return scheme_.simulate(verifier.sk, verifier.pk, sender.pk, m, params_, rng_);
}

SigResult HybridOracles::crossover_answer(OracleKind kind, const Message& m,
                                          int s, int v) {
    std::size_t index = crossover_seen_++;
    if (hook_index_ && index == *hook_index_ && hook_) {
        if (auto substituted = hook_(CrossoverCall{index, kind, m, s, v}))
            return *substituted;
    }
    bool swapped = index < swap_first_;
    if (kind == OracleKind::sign)
        return swapped ? honest_sim(m, s, v) : honest_sign(m, s, v);
    return swapped ? honest_sign(m, s, v) : honest_sim(m, s, v);
}

SigResult HybridOracles::sign_impl(const Message& m, int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    if (honest_slot(s) && internal_party(v))
        return crossover_answer(OracleKind::sign, m, s, v);
    return honest_sign(m, s, v);
}

SigResult HybridOracles::sim_impl(const Message& m, int s, int v) {
    if (!roster_.in_range(s) || !roster_.in_range(v))
        return Bottom{BottomReason::invalid_party};
    if (internal_party(s) && honest_slot(v))
        return crossover_answer(OracleKind::sim, m, s, v);
    return honest_sim(m, s, v);
}

VerifyResult HybridOracles::veri_impl(const Message&, const Signature&, int, int) {
    return Bottom{BottomReason::restricted_query};  // unreachable; slot is empty
}

// ---------------------------------------------------------------------------
// Empty oracles

SigResult EmptyOracles::sign_impl(const Message&, int, int) {
    return Bottom{BottomReason::restricted_query};
}

SigResult EmptyOracles::sim_impl(const Message&, int, int) {
    return Bottom{BottomReason::restricted_query};
}

VerifyResult EmptyOracles::veri_impl(const Message&, const Signature&, int, int) {
    return Bottom{BottomReason::restricted_query};
}

}  // namespace dvslab
