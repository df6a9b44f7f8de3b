#include "dvslab/adversaries.hpp"

namespace dvslab {

std::string_view game_name(GameKind kind) {
    switch (kind) {
        case GameKind::psi: return "psi";
        case GameKind::nrpsi: return "nrpsi";
        case GameKind::advpsi: return "advpsi";
        case GameKind::nt: return "nt";
        case GameKind::uf: return "uf";
        case GameKind::hybrid: return "hybrid";
    }
    return "?";
}

std::optional<GameKind> parse_game(std::string_view name) {
    for (GameKind k : {GameKind::psi, GameKind::nrpsi, GameKind::advpsi,
                       GameKind::nt, GameKind::uf, GameKind::hybrid}) {
        if (name == game_name(k)) return k;
    }
    return std::nullopt;
}

int guess_range(GameKind kind, int n) {
    return kind == GameKind::nrpsi ? n : 2;
}

Signature zero_tag_signature(unsigned kappa) {
    Signature sig;
    sig.tag.bytes.assign(tag_length(kappa), 0);
    return sig;
}

namespace {

const Message kChallengeMessage = msg("challenge");
const Message kProbeMessage = msg("probe");

// Shared state layout for the built-in two-phase adversaries.
struct BuiltinState {
    std::uint8_t kind = 0;
    std::uint32_t n = 2;
    std::vector<std::uint64_t> pks;
    std::uint8_t has_choice = 0;
    std::uint32_t s0 = 0, s1 = 0, r = 0;

    Bytes pack() const {
        ByteWriter w;
        w.put_u8(kind);
        w.put_u32(n);
        w.put_u32(static_cast<std::uint32_t>(pks.size()));
        for (std::uint64_t pk : pks) w.put_u64(pk);
        w.put_u8(has_choice);
        w.put_u32(s0);
        w.put_u32(s1);
        w.put_u32(r);
        return w.take();
    }

    static BuiltinState unpack(const Bytes& bytes) {
        ByteReader rd(bytes);
        BuiltinState st;
        st.kind = rd.get_u8();
        st.n = rd.get_u32();
        std::uint32_t count = rd.get_u32();
        st.pks.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) st.pks.push_back(rd.get_u64());
        st.has_choice = rd.get_u8();
        st.s0 = rd.get_u32();
        st.s1 = rd.get_u32();
        st.r = rd.get_u32();
        return st;
    }
};

BuiltinState snapshot_view(const GameView& view) {
    BuiltinState st;
    st.kind = static_cast<std::uint8_t>(view.kind);
    st.n = static_cast<std::uint32_t>(view.n);
    for (GroupElement pk : view.public_keys) st.pks.push_back(pk.value);
    return st;
}

AdvChallengeChoice random_choice(int n, Rng& rng) {
    AdvChallengeChoice c;
    c.s0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    do {
        c.s1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    } while (c.s1 == c.s0);
    do {
        c.r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    } while (c.r == c.s0 || c.r == c.s1);
    return c;
}

class RandomGuesser final : public TwoPhaseAdversary {
public:
    Phase1Result phase1(const GameView& view, OracleSet&, Rng&) override {
        Phase1Result out;
        out.request.m_star = kChallengeMessage;
        if (view.kind == GameKind::advpsi)
            out.request.choice = AdvChallengeChoice{0, 1, view.n};
        out.state = snapshot_view(view).pack();
        return out;
    }

    int phase2(const Bytes& state, const Signature&, OracleSet&, Rng& rng) override {
        BuiltinState st = BuiltinState::unpack(state);
        int range = guess_range(static_cast<GameKind>(st.kind), static_cast<int>(st.n));
        return static_cast<int>(rng.below(static_cast<std::uint64_t>(range)));
    }
};

class TrailerReader final : public TwoPhaseAdversary {
public:
    Phase1Result phase1(const GameView& view, OracleSet&, Rng& rng) override {
        Phase1Result out;
        out.request.m_star = kChallengeMessage;
        BuiltinState st = snapshot_view(view);
        if (view.kind == GameKind::advpsi) {
            AdvChallengeChoice c = random_choice(view.n, rng);
            out.request.choice = c;
            st.has_choice = 1;
            st.s0 = static_cast<std::uint32_t>(c.s0);
            st.s1 = static_cast<std::uint32_t>(c.s1);
            st.r = static_cast<std::uint32_t>(c.r);
        }
        out.state = st.pack();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet&,
               Rng&) override {
        BuiltinState st = BuiltinState::unpack(state);
        GameKind kind = static_cast<GameKind>(st.kind);
        if (kind == GameKind::nt)
            return sigma_star.extra == Bytes{1} ? 1 : 0;
        if (st.has_choice) {
            if (sigma_star.extra == encode_element(GroupElement{st.pks[st.s0]})) return 0;
            if (sigma_star.extra == encode_element(GroupElement{st.pks[st.s1]})) return 1;
            return 0;
        }
        for (std::size_t i = 0; i < st.pks.size(); ++i) {
            if (sigma_star.extra == encode_element(GroupElement{st.pks[i]}))
                return static_cast<int>(i);
        }
        return 0;
    }
};

class VerifyProbe final : public TwoPhaseAdversary {
public:
    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng&) override {
        oracles.sign(kProbeMessage, 0, view.n);
        oracles.veri(kProbeMessage, zero_tag_signature(view.params.kappa), 0, view.n);

        Phase1Result out;
        out.request.m_star = kChallengeMessage;
        if (view.kind == GameKind::advpsi)
            out.request.choice = AdvChallengeChoice{0, 1, view.n};
        out.state = snapshot_view(view).pack();
        return out;
    }

    int phase2(const Bytes& state, const Signature&, OracleSet&, Rng& rng) override {
        BuiltinState st = BuiltinState::unpack(state);
        int range = guess_range(static_cast<GameKind>(st.kind), static_cast<int>(st.n));
        return static_cast<int>(rng.below(static_cast<std::uint64_t>(range)));
    }
};

class HybridProbe final : public TwoPhaseAdversary {
public:
    Phase1Result phase1(const GameView& view, OracleSet& oracles, Rng&) override {
        // Sender 0, verifier 2: a crossover position whenever 2 < n.
        SigResult probe = oracles.sign(kProbeMessage, 0, 2);
        std::uint8_t swapped = 0;
        if (const Signature* sig = std::get_if<Signature>(&probe)) {
            if (sig->extra == Bytes{1}) swapped = 1;
        }
        Phase1Result out;
        out.request.m_star = kChallengeMessage;
        ByteWriter w;
        w.put_u8(swapped);
        w.put_u32(static_cast<std::uint32_t>(view.n));
        w.put_bytes(kChallengeMessage);
        out.state = w.take();
        return out;
    }

    int phase2(const Bytes& state, const Signature& sigma_star, OracleSet& oracles,
               Rng&) override {
        ByteReader rd(state);
        std::uint8_t swapped = rd.get_u8();
        int n = static_cast<int>(rd.get_u32());
        Message m_star = rd.get_bytes();

        // The scheme family signs deterministically, so re-asking the sign
        // oracle identifies the challenge sender outright.
        SigResult again = oracles.sign(m_star, 0, n);
        int winning = 1;
        if (const Signature* sig = std::get_if<Signature>(&again)) {
            if (*sig == sigma_star) winning = 0;
        }
        return swapped ? 1 - winning : winning;
    }
};

class ZeroForger final : public UfAdversary {
public:
    Forgery run(const GameView& view, OracleSet&, Rng&) override {
        return Forgery{msg("forged"), zero_tag_signature(view.params.kappa), 0, 1};
    }
};

}  // namespace

std::unique_ptr<TwoPhaseAdversary> make_random_guesser() {
    return std::make_unique<RandomGuesser>();
}

std::unique_ptr<TwoPhaseAdversary> make_trailer_reader() {
    return std::make_unique<TrailerReader>();
}

std::unique_ptr<TwoPhaseAdversary> make_verify_probe() {
    return std::make_unique<VerifyProbe>();
}

std::unique_ptr<TwoPhaseAdversary> make_hybrid_probe() {
    return std::make_unique<HybridProbe>();
}

std::unique_ptr<UfAdversary> make_zero_forger() {
    return std::make_unique<ZeroForger>();
}

std::optional<AdversaryEntry> find_adversary(std::string_view id) {
    if (id == "random") return AdversaryEntry{make_random_guesser, nullptr};
    if (id == "trailer") return AdversaryEntry{make_trailer_reader, nullptr};
    if (id == "verify-probe") return AdversaryEntry{make_verify_probe, nullptr};
    if (id == "hybrid-probe") return AdversaryEntry{make_hybrid_probe, nullptr};
    if (id == "zero-forger") return AdversaryEntry{nullptr, make_zero_forger};
    return std::nullopt;
}

std::vector<std::string_view> adversary_names() {
    return {"random", "trailer", "verify-probe", "hybrid-probe", "zero-forger"};
}

}  // namespace dvslab
