#include "dvslab/reductions.hpp"

#include <utility>

#include "dvslab/games.hpp"

namespace dvslab {

std::string_view reduction_name(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::nf2nr: return "nf2nr";
        case ReductionKind::nf2adv: return "nf2adv";
        case ReductionKind::uf_strip: return "uf-strip";
        case ReductionKind::forgery_extract: return "forge-extract";
        case ReductionKind::embed_n_to_2: return "embed";
        case ReductionKind::nt_from_hybrid: return "nt-hybrid";
    }
    return "?";
}

std::optional<ReductionKind> parse_reduction(std::string_view name) {
    for (ReductionKind k :
         {ReductionKind::nf2nr, ReductionKind::nf2adv, ReductionKind::uf_strip,
          ReductionKind::forgery_extract, ReductionKind::embed_n_to_2,
          ReductionKind::nt_from_hybrid}) {
        if (name == reduction_name(k)) return k;
    }
    return std::nullopt;
}

namespace {

void put_permutation(ByteWriter& w, const Permutation& pi) {
    w.put_u8(pi.fixes_last ? 1 : 0);
    w.put_u32(static_cast<std::uint32_t>(pi.map.size()));
    for (int entry : pi.map) w.put_u32(static_cast<std::uint32_t>(entry));
}

Permutation get_permutation(ByteReader& r) {
    Permutation pi;
    pi.fixes_last = r.get_u8() != 0;
    std::uint32_t count = r.get_u32();
    pi.map.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
        pi.map.push_back(static_cast<int>(r.get_u32()));
    return pi;
}

GameView permuted_view(const GameView& view, GameKind inner_kind,
                       const Permutation& pi) {
    GameView inner = view;
    inner.kind = inner_kind;
    for (std::size_t i = 0; i < inner.public_keys.size(); ++i)
        inner.public_keys[i] = view.public_keys[static_cast<std::size_t>(
            pi.apply(static_cast<int>(i)))];
    return inner;
}

// ---------------------------------------------------------------------------
// Random-challenge to fixed-pair

class Nf2nrAdversary final : public TwoPhaseAdversary {
public:
    Nf2nrAdversary(std::unique_ptr<TwoPhaseAdversary> inner, int n)
        : inner_(std::move(inner)), n_(n) {}

    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng& rng) override {
        Permutation pi = Permutation::sample(n_ + 1, /*fix_last=*/true, rng);
        PermutedOracles permuted(oracles, pi);
        Phase1Result inner_p1 =
            inner_->phase1(permuted_view(view, GameKind::nrpsi, pi), permuted, rng);

        Phase1Result out;
        out.request.m_star = inner_p1.request.m_star;
        ByteWriter w;
        put_permutation(w, pi);
        w.put_bytes(inner_p1.state);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet& oracles,
               Rng& rng) override {
        ByteReader r(state);
        Permutation pi = get_permutation(r);
        Bytes inner_state = r.get_bytes();

        PermutedOracles permuted(oracles, pi);
        int c_prime = inner_->phase2(inner_state, sigma_star, permuted, rng);
        if (c_prime < 0 || c_prime >= pi.size()) return 0;
        int mapped = pi.apply(c_prime);
        return (mapped == 0 || mapped == 1) ? mapped : 0;
    }

private:
    std::unique_ptr<TwoPhaseAdversary> inner_;
    int n_;
};

// ---------------------------------------------------------------------------
// Adversarial-challenge to fixed-pair

class Nf2advAdversary final : public TwoPhaseAdversary {
public:
    Nf2advAdversary(std::unique_ptr<TwoPhaseAdversary> inner, int n)
        : inner_(std::move(inner)), n_(n) {}

    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng& rng) override {
        Permutation pi = Permutation::sample(n_ + 1, /*fix_last=*/false, rng);
        PermutedOracles permuted(oracles, pi);
        Phase1Result inner_p1 =
            inner_->phase1(permuted_view(view, GameKind::advpsi, pi), permuted, rng);

        std::uint8_t case_bit = 2;
        if (inner_p1.request.choice) {
            AdvChallengeChoice choice = *inner_p1.request.choice;
            auto in_domain = [&](int i) { return i >= 0 && i < pi.size(); };
            if (in_domain(choice.s0) && in_domain(choice.s1) && in_domain(choice.r)) {
                int ps0 = pi.apply(choice.s0);
                int ps1 = pi.apply(choice.s1);
                int pr = pi.apply(choice.r);
                if (ps0 == 0 && ps1 == 1 && pr == n_) case_bit = 0;
                else if (ps0 == 1 && ps1 == 0 && pr == n_) case_bit = 1;
            }
        }

        Phase1Result out;
        out.request.m_star = inner_p1.request.m_star;
        ByteWriter w;
        w.put_u8(case_bit);
        put_permutation(w, pi);
        w.put_bytes(inner_p1.state);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet& oracles,
               Rng& rng) override {
        ByteReader r(state);
        std::uint8_t case_bit = r.get_u8();
        Permutation pi = get_permutation(r);
        Bytes inner_state = r.get_bytes();

        PermutedOracles permuted(oracles, pi);
        int c_prime = inner_->phase2(inner_state, sigma_star, permuted, rng);
        if (case_bit == 0) return c_prime;
        if (case_bit == 1) return 1 - c_prime;
        return rng.coin();
    }

private:
    std::unique_ptr<TwoPhaseAdversary> inner_;
    int n_;
};

// ---------------------------------------------------------------------------
// Transcript-answered verify queries

using IssuedPairs = std::vector<std::pair<Message, Signature>>;

void put_issued(ByteWriter& w, const IssuedPairs& issued) {
    w.put_u32(static_cast<std::uint32_t>(issued.size()));
    for (const auto& [m, sig] : issued) {
        w.put_bytes(m);
        sig.serialize(w);
    }
}

IssuedPairs get_issued(ByteReader& r) {
    IssuedPairs issued;
    std::uint32_t count = r.get_u32();
    issued.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Message m = r.get_bytes();
        Signature sig = Signature::deserialize(r);
        issued.emplace_back(std::move(m), std::move(sig));
    }
    return issued;
}

// Forwards sign/sim and records their outputs; answers verify from the
// recorded pairs without ever calling the base verify oracle.
class TranscriptVerifyOracles final : public OracleSet {
public:
    TranscriptVerifyOracles(OracleSet& base, IssuedPairs& issued)
        : base_(base), issued_(issued) {}

protected:
    bool slot_empty(OracleKind kind) const override {
        if (kind == OracleKind::veri) return false;  // answered locally
        return base_.slot_empty_probe(kind);
    }

    SigResult sign_impl(const Message& m, int s, int v) override {
        SigResult r = base_.sign(m, s, v);
        if (const Signature* sig = std::get_if<Signature>(&r))
            issued_.emplace_back(m, *sig);
        return r;
    }

    SigResult sim_impl(const Message& m, int s, int v) override {
        SigResult r = base_.sim(m, s, v);
        if (const Signature* sig = std::get_if<Signature>(&r))
            issued_.emplace_back(m, *sig);
        return r;
    }

    VerifyResult veri_impl(const Message& m, const Signature& sigma, int,
                           int) override {
        for (const auto& [im, isig] : issued_) {
            if (im == m && isig == sigma) return true;
        }
        return false;
    }

private:
    OracleSet& base_;
    IssuedPairs& issued_;
};

class StripVerifyAdversary final : public TwoPhaseAdversary {
public:
    explicit StripVerifyAdversary(std::unique_ptr<TwoPhaseAdversary> inner)
        : inner_(std::move(inner)) {}

    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng& rng) override {
        IssuedPairs issued;
        TranscriptVerifyOracles interposed(oracles, issued);
        Phase1Result inner_p1 = inner_->phase1(view, interposed, rng);

        Phase1Result out;
        out.request = inner_p1.request;
        ByteWriter w;
        put_issued(w, issued);
        w.put_bytes(inner_p1.state);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet& oracles,
               Rng& rng) override {
        ByteReader r(state);
        IssuedPairs issued = get_issued(r);
        Bytes inner_state = r.get_bytes();
        TranscriptVerifyOracles interposed(oracles, issued);
        return inner_->phase2(inner_state, sigma_star, interposed, rng);
    }

private:
    std::unique_ptr<TwoPhaseAdversary> inner_;
};

// ---------------------------------------------------------------------------
// Forgery extraction

struct ForgeryFound {
    Message m;
    Signature sigma;
    int s;
    int v;
};

// Forwards everything; verify queries go to the real oracle and a true answer
// on a never-issued pair aborts the run with the forgery.
class ExtractingOracles final : public OracleSet {
public:
    ExtractingOracles(OracleSet& base, IssuedPairs& issued)
        : base_(base), issued_(issued) {}

protected:
    bool slot_empty(OracleKind kind) const override {
        return base_.slot_empty_probe(kind);
    }

    SigResult sign_impl(const Message& m, int s, int v) override {
        SigResult r = base_.sign(m, s, v);
        if (const Signature* sig = std::get_if<Signature>(&r))
            issued_.emplace_back(m, *sig);
        return r;
    }

    SigResult sim_impl(const Message& m, int s, int v) override {
        SigResult r = base_.sim(m, s, v);
        if (const Signature* sig = std::get_if<Signature>(&r))
            issued_.emplace_back(m, *sig);
        return r;
    }

    VerifyResult veri_impl(const Message& m, const Signature& sigma, int s,
                           int v) override {
        // Emulate the phase-2 refusal of the simulated psi game.
        if (phase() == 2 && challenge() && sigma == challenge()->sigma_star)
            return Bottom{BottomReason::restricted_query};
        VerifyResult r = base_.veri(m, sigma, s, v);
        if (accepted(r)) {
            bool fresh = true;
            for (const auto& [im, isig] : issued_) {
                if (im == m && isig == sigma) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) throw ForgeryFound{m, sigma, s, v};
        }
        return r;
    }

private:
    OracleSet& base_;
    IssuedPairs& issued_;
};

class ForgeryExtractorAdversary final : public UfAdversary {
public:
    ForgeryExtractorAdversary(std::unique_ptr<TwoPhaseAdversary> inner, int n)
        : inner_(std::move(inner)), n_(n) {}

    Forgery run(const GameView& view, OracleSet& oracles, Rng& rng) override {
        IssuedPairs issued;
        ExtractingOracles extracting(oracles, issued);

        GameView psi_view = view;
        psi_view.kind = GameKind::psi;
        psi_view.n = n_;

        try {
            int c = rng.coin();
            Phase1Result p1 = inner_->phase1(psi_view, extracting, rng);
            SigResult challenge_sig = extracting.sign(p1.request.m_star, c, n_);
            const Signature* sigma_star = std::get_if<Signature>(&challenge_sig);
            if (sigma_star == nullptr) return losing_tuple();
            extracting.enter_phase2(p1.request.m_star, *sigma_star);
            inner_->phase2(p1.state, *sigma_star, extracting, rng);
        } catch (const ForgeryFound& found) {
            return Forgery{found.m, found.sigma, found.s, found.v};
        }
        return losing_tuple();
    }

private:
    static Forgery losing_tuple() {
        // Out-of-range indices lose by construction.
        return Forgery{msg("no-forgery"), Signature{}, -1, -1};
    }

    std::unique_ptr<TwoPhaseAdversary> inner_;
    int n_;
};

// ---------------------------------------------------------------------------
// n-to-2 embedding

class EmbedAdversary final : public TwoPhaseAdversary {
public:
    EmbedAdversary(std::unique_ptr<TwoPhaseAdversary> inner, int n,
                   std::shared_ptr<const Scheme> scheme)
        : inner_(std::move(inner)), n_(n), scheme_(std::move(scheme)) {}

    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng& rng) override {
        std::vector<KeyPair> internal;
        internal.reserve(static_cast<std::size_t>(n_ > 2 ? n_ - 2 : 0));
        Rng key_rng = rng.child(kInternalKeySlot);
        for (int i = 2; i <= n_ - 1; ++i) {
            Rng stream = key_rng.child(static_cast<std::uint64_t>(i));
            internal.push_back(scheme_->keygen(view.params, stream));
        }
        std::vector<GroupElement> outer_pks = view.public_keys;  // P_0, P_1, P_2

        CrossoverOracles crossover(oracles, outer_pks, internal, *scheme_,
                                   view.params, n_, rng.child(kOracleSlot));
        Phase1Result inner_p1 =
            inner_->phase1(embedded_view(view, outer_pks, internal), crossover, rng);

        Phase1Result out;
        out.request = inner_p1.request;
        ByteWriter w;
        view.params.serialize(w);
        w.put_u32(static_cast<std::uint32_t>(outer_pks.size()));
        for (GroupElement pk : outer_pks) w.put_u64(pk.value);
        w.put_u32(static_cast<std::uint32_t>(internal.size()));
        for (const KeyPair& kp : internal) {
            w.put_u64(kp.pk.value);
            w.put_u64(kp.sk.value);
        }
        w.put_bytes(inner_p1.state);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet& oracles,
               Rng& rng) override {
        ByteReader r(state);
        Params params = Params::deserialize(r);
        std::vector<GroupElement> outer_pks;
        std::uint32_t outer_count = r.get_u32();
        for (std::uint32_t i = 0; i < outer_count; ++i)
            outer_pks.push_back(GroupElement{r.get_u64()});
        std::vector<KeyPair> internal;
        std::uint32_t internal_count = r.get_u32();
        for (std::uint32_t i = 0; i < internal_count; ++i) {
            GroupElement pk{r.get_u64()};
            Scalar sk{r.get_u64()};
            internal.push_back(KeyPair{pk, sk});
        }
        Bytes inner_state = r.get_bytes();

        CrossoverOracles crossover(oracles, outer_pks, internal, *scheme_, params,
                                   n_, rng.child(kOracleSlot));
        return inner_->phase2(inner_state, sigma_star, crossover, rng);
    }

private:
    // Child slots off the adversary stream; the inner adversary receives the
    // stream itself untouched.
    static constexpr std::uint64_t kInternalKeySlot = 7;
    static constexpr std::uint64_t kOracleSlot = 8;

    GameView embedded_view(const GameView& view,
                           const std::vector<GroupElement>& outer_pks,
                           const std::vector<KeyPair>& internal) const {
        GameView inner = view;
        inner.kind = GameKind::psi;
        inner.n = n_;
        inner.public_keys.assign(static_cast<std::size_t>(n_) + 1, GroupElement{});
        inner.public_keys[0] = outer_pks.at(0);
        inner.public_keys[1] = outer_pks.at(1);
        inner.public_keys[static_cast<std::size_t>(n_)] = outer_pks.at(2);
        for (int i = 2; i <= n_ - 1; ++i)
            inner.public_keys[static_cast<std::size_t>(i)] =
                internal.at(static_cast<std::size_t>(i - 2)).pk;
        return inner;
    }

    std::unique_ptr<TwoPhaseAdversary> inner_;
    int n_;
    std::shared_ptr<const Scheme> scheme_;
};

// ---------------------------------------------------------------------------
// Hybrid-gap to non-transferability

struct HaltAtCrossover {
    CrossoverCall call;
};

struct PlantedParties {
    int sender_slot;
    KeyPair sender;
    int verifier_slot;
    KeyPair verifier;
};

struct GmkRun {
    bool halted = false;
    CrossoverCall call{};
    GameOutcome outcome{};
};

class NtFromHybridAdversary final : public TwoPhaseAdversary {
public:
    NtFromHybridAdversary(TwoPhaseFactory inner_factory, int n, std::size_t k,
                          std::shared_ptr<const Scheme> scheme)
        : inner_factory_(std::move(inner_factory)),
          n_(n),
          k_(k),
          scheme_(std::move(scheme)) {}

    Phase1Result phase1(const GameView& view, OracleSet&, Rng& rng) override {
        const NtKeys& keys = *view.nt_keys;
        Rng pick = rng.child(0);
        int c = pick.coin();
        std::uint64_t run_seed = pick.next();

        // Pass 1: find which parties the (k+1)-th crossover call involves.
        GmkRun discovery = run_gmk(view.params, c, run_seed, std::nullopt,
                                   /*substitute=*/nullptr);
        if (!discovery.halted) return coin_phase1();

        // The NT sender stands in for the call's sender party and the NT
        // verifier for its verifier party, whichever side is internal.
        PlantedParties planted{discovery.call.s, keys.sender, discovery.call.v,
                               keys.verifier};

        // Pass 2: replay with the NT keypairs planted; the schedule must hit
        // the same call or the run is dropped to a coin.
        GmkRun planted_run =
            run_gmk(view.params, c, run_seed, planted, /*substitute=*/nullptr);
        if (!planted_run.halted || planted_run.call.s != discovery.call.s ||
            planted_run.call.v != discovery.call.v ||
            planted_run.call.kind != discovery.call.kind)
            return coin_phase1();

        Phase1Result out;
        out.request.m_star = planted_run.call.m;
        ByteWriter w;
        w.put_u8(1);  // mode: run
        w.put_u8(static_cast<std::uint8_t>(c));
        w.put_u64(run_seed);
        w.put_u8(planted_run.call.kind == OracleKind::sign ? 0 : 1);
        w.put_u32(static_cast<std::uint32_t>(planted_run.call.s));
        w.put_u32(static_cast<std::uint32_t>(planted_run.call.v));
        view.params.serialize(w);
        w.put_u64(keys.sender.pk.value);
        w.put_u64(keys.sender.sk.value);
        w.put_u64(keys.verifier.pk.value);
        w.put_u64(keys.verifier.sk.value);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet&,
               Rng& rng) override {
        ByteReader r(state);
        std::uint8_t mode = r.get_u8();
        if (mode == 0) return rng.coin();

        int c = r.get_u8();
        std::uint64_t run_seed = r.get_u64();
        bool sign_crossover = r.get_u8() == 0;
        int s = static_cast<int>(r.get_u32());
        int v = static_cast<int>(r.get_u32());
        Params params = Params::deserialize(r);
        KeyPair sender{GroupElement{r.get_u64()}, Scalar{0}};
        sender.sk = Scalar{r.get_u64()};
        KeyPair verifier{GroupElement{r.get_u64()}, Scalar{0}};
        verifier.sk = Scalar{r.get_u64()};

        PlantedParties planted{s, sender, v, verifier};
        SigResult substituted = sigma_star;
        GmkRun resumed = run_gmk(params, c, run_seed, planted, &substituted);

        int c_prime = resumed.outcome.guess;
        if (sign_crossover) return c_prime == c ? 0 : 1;
        return c_prime == c ? 1 : 0;
    }

private:
    Phase1Result coin_phase1() {
        Phase1Result out;
        out.request.m_star = msg("nt-hybrid-null");
        ByteWriter w;
        w.put_u8(0);  // mode: coin
        out.state = w.take();
        return out;
    }

    // One deterministic execution of hybrid game k from run_seed. With no
    // substitute, the run halts at crossover index k (reported in GmkRun);
    // with one, that call is answered by *substitute and the game runs to
    // its guess.
    GmkRun run_gmk(const Params& params, int c, std::uint64_t run_seed,
                   const std::optional<PlantedParties>& planted,
                   const SigResult* substitute) {
        Rng run_rng(run_seed);
        Rng key_rng = run_rng.child(rng_slot::keys);
        PartyRoster roster = make_roster(*scheme_, params, n_, key_rng);
        if (planted) {
            roster.keys[static_cast<std::size_t>(planted->sender_slot)] =
                planted->sender;
            roster.keys[static_cast<std::size_t>(planted->verifier_slot)] =
                planted->verifier;
        }

        HybridOracles hybrid(*scheme_, params, roster, k_,
                             run_rng.child(rng_slot::oracle));
        GmkRun result;
        if (substitute == nullptr) {
            hybrid.set_hook(k_, [](const CrossoverCall& call) -> std::optional<SigResult> {
                throw HaltAtCrossover{call};
            });
        } else {
            SigResult answer = *substitute;
            hybrid.set_hook(k_, [answer](const CrossoverCall&) {
                return std::optional<SigResult>(answer);
            });
        }

        std::unique_ptr<TwoPhaseAdversary> inner = inner_factory_();
        Rng sign_rng = run_rng.child(rng_slot::challenge_sign);
        Rng adv_rng = run_rng.child(rng_slot::adversary);
        try {
            result.outcome =
                run_psi_session(*scheme_, params, roster, hybrid, *inner,
                                GameKind::hybrid, c, sign_rng, adv_rng);
        } catch (const HaltAtCrossover& halt) {
            result.halted = true;
            result.call = halt.call;
        }
        return result;
    }

    TwoPhaseFactory inner_factory_;
    int n_;
    std::size_t k_;
    std::shared_ptr<const Scheme> scheme_;
};

}  // namespace

std::unique_ptr<TwoPhaseAdversary> wrap_nf2nr(
    std::unique_ptr<TwoPhaseAdversary> inner, int n) {
    return std::make_unique<Nf2nrAdversary>(std::move(inner), n);
}

std::unique_ptr<TwoPhaseAdversary> wrap_nf2adv(
    std::unique_ptr<TwoPhaseAdversary> inner, int n) {
    return std::make_unique<Nf2advAdversary>(std::move(inner), n);
}

std::unique_ptr<TwoPhaseAdversary> strip_verify_adversary(
    std::unique_ptr<TwoPhaseAdversary> inner) {
    return std::make_unique<StripVerifyAdversary>(std::move(inner));
}

std::unique_ptr<UfAdversary> forgery_extractor(
    std::unique_ptr<TwoPhaseAdversary> inner, int n) {
    return std::make_unique<ForgeryExtractorAdversary>(std::move(inner), n);
}

std::unique_ptr<TwoPhaseAdversary> embed_n_to_2(
    std::unique_ptr<TwoPhaseAdversary> inner, int n,
    std::shared_ptr<const Scheme> scheme) {
    return std::make_unique<EmbedAdversary>(std::move(inner), n, std::move(scheme));
}

std::unique_ptr<TwoPhaseAdversary> nt_from_hybrid(
    TwoPhaseFactory inner_factory, int n, std::size_t k,
    std::shared_ptr<const Scheme> scheme) {
    return std::make_unique<NtFromHybridAdversary>(std::move(inner_factory), n, k,
                                                   std::move(scheme));
}

}  // namespace dvslab
