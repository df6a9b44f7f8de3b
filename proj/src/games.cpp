#include "dvslab/games.hpp"

namespace dvslab {

std::string_view oracle_set_name(OracleSetName name) {
    switch (name) {
        case OracleSetName::standard: return "standard";
        case OracleSetName::huang: return "huang";
        case OracleSetName::no_verify: return "no-verify";
        case OracleSetName::crossover: return "crossover";
    }
    return "?";
}

std::optional<OracleSetName> parse_oracle_set(std::string_view name) {
    for (OracleSetName o : {OracleSetName::standard, OracleSetName::huang,
                            OracleSetName::no_verify, OracleSetName::crossover}) {
        if (name == oracle_set_name(o)) return o;
    }
    return std::nullopt;
}

OracleStack make_oracle_stack(OracleSetName name, const Scheme& scheme,
                              const Params& params, const PartyRoster& roster,
                              Rng rng) {
    OracleStack stack;
    switch (name) {
        case OracleSetName::standard:
            stack.layers.push_back(
                std::make_unique<StandardOracles>(scheme, params, roster, rng));
            break;
        case OracleSetName::huang:
            stack.layers.push_back(
                std::make_unique<HuangOracles>(scheme, params, roster, rng));
            break;
        case OracleSetName::no_verify:
            stack.layers.push_back(
                std::make_unique<StandardOracles>(scheme, params, roster, rng));
            stack.layers.push_back(
                std::make_unique<StrippedOracles>(*stack.layers.back()));
            break;
        case OracleSetName::crossover:
            stack.layers.push_back(std::make_unique<HybridOracles>(
                scheme, params, roster, HybridOracles::kSwapAll, rng));
            break;
    }
    return stack;
}

namespace {

struct GameEnv {
    Params params;
    PartyRoster roster;
    Rng chal_rng;
    Rng sign_rng;
    Rng adv_rng;
    Rng oracle_rng;
};

GameEnv prepare_env(const GameConfig& cfg, const Scheme& scheme, Rng& trial_rng) {
    if (cfg.n < 2) throw ConfigError("games need n >= 2");
    GameEnv env{Params{},
                PartyRoster{},
                trial_rng.child(rng_slot::challenge),
                trial_rng.child(rng_slot::challenge_sign),
                trial_rng.child(rng_slot::adversary),
                trial_rng.child(rng_slot::oracle)};
    Rng setup_rng = trial_rng.child(rng_slot::setup);
    env.params = scheme.setup(cfg.kappa, cfg.profile, setup_rng);
    Rng key_rng = trial_rng.child(rng_slot::keys);
    env.roster = make_roster(scheme, env.params, cfg.n, key_rng);
    return env;
}

GameView roster_view(GameKind kind, const GameEnv& env, int n) {
    GameView view;
    view.kind = kind;
    view.params = env.params;
    view.n = n;
    view.public_keys.reserve(env.roster.keys.size());
    for (const KeyPair& kp : env.roster.keys) view.public_keys.push_back(kp.pk);
    return view;
}

int draw_challenge(const GameConfig& cfg, GameKind kind, int n, Rng& chal_rng) {
    int range = guess_range(kind, n);
    if (cfg.challenge) {
        if (*cfg.challenge < 0 || *cfg.challenge >= range)
            throw ConfigError("fixed challenge index out of range");
        return *cfg.challenge;
    }
    return static_cast<int>(chal_rng.below(static_cast<std::uint64_t>(range)));
}

GameOutcome finish_two_phase(GameKind kind, TwoPhaseAdversary& adversary,
                             const Phase1Result& p1, const Signature& sigma_star,
                             OracleSet& oracles, int challenge, Rng& adv_rng) {
    oracles.enter_phase2(p1.request.m_star, sigma_star);
    int guess = adversary.phase2(p1.state, sigma_star, oracles, adv_rng);
    GameOutcome outcome;
    outcome.kind = kind;
    outcome.guess = guess;
    outcome.challenge = challenge;
    outcome.won = guess == challenge;
    outcome.oracle_counts = oracles.counts();
    return outcome;
}

GameOutcome lost_outcome(GameKind kind, int challenge, const OracleSet& oracles) {
    GameOutcome outcome;
    outcome.kind = kind;
    outcome.challenge = challenge;
    outcome.won = false;
    outcome.oracle_counts = oracles.counts();
    return outcome;
}

GameOutcome run_fixed_pair(const GameConfig& cfg, const Scheme& scheme,
                           TwoPhaseAdversary& adversary, Rng& trial_rng,
                           GameKind kind, std::size_t hybrid_swap_first) {
    GameEnv env = prepare_env(cfg, scheme, trial_rng);
    int c = draw_challenge(cfg, kind, cfg.n, env.chal_rng);

    OracleStack stack;
    if (kind == GameKind::hybrid) {
        stack.layers.push_back(std::make_unique<HybridOracles>(
            scheme, env.params, env.roster, hybrid_swap_first, env.oracle_rng));
    } else {
        stack = make_oracle_stack(cfg.oracle_set, scheme, env.params, env.roster,
                                  env.oracle_rng);
    }

    GameView view = roster_view(kind, env, cfg.n);
    Phase1Result p1 = adversary.phase1(view, stack.top(), env.adv_rng);

    const KeyPair& sender = env.roster.party(c);
    const KeyPair& verifier = env.roster.party(cfg.n);
    SigResult challenge_sig = scheme.sign(sender.sk, sender.pk, verifier.pk,
                                          p1.request.m_star, env.params, env.sign_rng);
    const Signature& sigma_star = std::get<Signature>(challenge_sig);

    return finish_two_phase(kind, adversary, p1, sigma_star, stack.top(), c,
                            env.adv_rng);
}

}  // namespace

GameOutcome run_psi(const GameConfig& cfg, const Scheme& scheme,
                    TwoPhaseAdversary& adversary, Rng& trial_rng) {
    GameKind kind = cfg.kind == GameKind::nrpsi ? GameKind::nrpsi : GameKind::psi;
    return run_fixed_pair(cfg, scheme, adversary, trial_rng, kind, 0);
}

GameOutcome run_hybrid(const GameConfig& cfg, const Scheme& scheme,
                       TwoPhaseAdversary& adversary, Rng& trial_rng) {
    return run_fixed_pair(cfg, scheme, adversary, trial_rng, GameKind::hybrid,
                          cfg.hybrid_j);
}

GameOutcome run_advpsi(const GameConfig& cfg, const Scheme& scheme,
                       TwoPhaseAdversary& adversary, Rng& trial_rng) {
    GameEnv env = prepare_env(cfg, scheme, trial_rng);
    int c = draw_challenge(cfg, GameKind::advpsi, cfg.n, env.chal_rng);

    OracleStack stack = make_oracle_stack(cfg.oracle_set, scheme, env.params,
                                          env.roster, env.oracle_rng);

    GameView view = roster_view(GameKind::advpsi, env, cfg.n);
    Phase1Result p1 = adversary.phase1(view, stack.top(), env.adv_rng);

    if (!p1.request.choice) return lost_outcome(GameKind::advpsi, c, stack.top());
    AdvChallengeChoice choice = *p1.request.choice;
    bool in_range = env.roster.in_range(choice.s0) &&
                    env.roster.in_range(choice.s1) && env.roster.in_range(choice.r);
    bool distinct = choice.s0 != choice.s1;
    bool verifier_ok = cfg.advpsi_allow_challenge_verifier ||
                       (choice.r != choice.s0 && choice.r != choice.s1);
    if (!in_range || !distinct || !verifier_ok)
        return lost_outcome(GameKind::advpsi, c, stack.top());

    int sender_index = c == 0 ? choice.s0 : choice.s1;
    const KeyPair& sender = env.roster.party(sender_index);
    const KeyPair& verifier = env.roster.party(choice.r);
    SigResult challenge_sig = scheme.sign(sender.sk, sender.pk, verifier.pk,
                                          p1.request.m_star, env.params, env.sign_rng);
    const Signature& sigma_star = std::get<Signature>(challenge_sig);

    return finish_two_phase(GameKind::advpsi, adversary, p1, sigma_star,
                            stack.top(), c, env.adv_rng);
}

GameOutcome run_nt(const GameConfig& cfg, const Scheme& scheme,
                   TwoPhaseAdversary& adversary, Rng& trial_rng) {
    Rng setup_rng = trial_rng.child(rng_slot::setup);
    Params params = scheme.setup(cfg.kappa, cfg.profile, setup_rng);
    Rng key_rng = trial_rng.child(rng_slot::keys);
    Rng sender_rng = key_rng.child(0);
    Rng verifier_rng = key_rng.child(1);
    KeyPair sender = scheme.keygen(params, sender_rng);
    KeyPair verifier = scheme.keygen(params, verifier_rng);

    Rng chal_rng = trial_rng.child(rng_slot::challenge);
    Rng sign_rng = trial_rng.child(rng_slot::challenge_sign);
    Rng adv_rng = trial_rng.child(rng_slot::adversary);

    int b = cfg.challenge ? *cfg.challenge : chal_rng.coin();
    if (b != 0 && b != 1) throw ConfigError("nt challenge bit must be 0 or 1");

    GameView view;
    view.kind = GameKind::nt;
    view.params = params;
    view.n = 1;
    view.public_keys = {sender.pk, verifier.pk};
    view.nt_keys = NtKeys{sender, verifier};

    EmptyOracles oracles;
    Phase1Result p1 = adversary.phase1(view, oracles, adv_rng);

    SigResult challenge_sig =
        b == 0 ? scheme.sign(sender.sk, sender.pk, verifier.pk, p1.request.m_star,
                             params, sign_rng)
               : scheme.simulate(verifier.sk, verifier.pk, sender.pk,
                                 p1.request.m_star, params, sign_rng);
    const Signature& sigma_star = std::get<Signature>(challenge_sig);

    return finish_two_phase(GameKind::nt, adversary, p1, sigma_star, oracles, b,
                            adv_rng);
}

GameOutcome run_uf(const GameConfig& cfg, const Scheme& scheme,
                   UfAdversary& adversary, Rng& trial_rng) {
    if (cfg.oracle_set == OracleSetName::huang ||
        cfg.oracle_set == OracleSetName::crossover)
        throw ConfigError("uf game supports standard or no-verify oracles");
    GameEnv env = prepare_env(cfg, scheme, trial_rng);

    OracleStack stack = make_oracle_stack(cfg.oracle_set, scheme, env.params,
                                          env.roster, env.oracle_rng);

    GameView view = roster_view(GameKind::uf, env, cfg.n);
    Forgery forgery = adversary.run(view, stack.top(), env.adv_rng);

    GameOutcome outcome;
    outcome.kind = GameKind::uf;
    outcome.challenge = 1;  // the target verdict
    outcome.oracle_counts = stack.top().counts();

    if (!env.roster.in_range(forgery.s) || !env.roster.in_range(forgery.v)) {
        outcome.won = false;
        outcome.guess = 0;
        return outcome;
    }
    const KeyPair& sender = env.roster.party(forgery.s);
    const KeyPair& verifier = env.roster.party(forgery.v);
    VerifyResult verdict = scheme.verify(verifier.sk, verifier.pk, sender.pk,
                                         forgery.m, forgery.sigma, env.params);
    bool fresh = true;
    for (const Signature& issued : stack.top().issued_signatures()) {
        if (issued == forgery.sigma) {
            fresh = false;
            break;
        }
    }
    outcome.won = accepted(verdict) && fresh;
    outcome.guess = outcome.won ? 1 : 0;
    return outcome;
}

GameOutcome run_psi_session(const Scheme& scheme, const Params& params,
                            const PartyRoster& roster, OracleSet& oracles,
                            TwoPhaseAdversary& adversary, GameKind view_kind,
                            int challenge_index, Rng& sign_rng, Rng& adv_rng) {
    GameView view;
    view.kind = view_kind;
    view.params = params;
    view.n = roster.n;
    view.public_keys.reserve(roster.keys.size());
    for (const KeyPair& kp : roster.keys) view.public_keys.push_back(kp.pk);

    Phase1Result p1 = adversary.phase1(view, oracles, adv_rng);

    const KeyPair& sender = roster.party(challenge_index);
    const KeyPair& verifier = roster.party(roster.n);
    SigResult challenge_sig = scheme.sign(sender.sk, sender.pk, verifier.pk,
                                          p1.request.m_star, params, sign_rng);
    const Signature& sigma_star = std::get<Signature>(challenge_sig);

    return finish_two_phase(view_kind, adversary, p1, sigma_star, oracles,
                            challenge_index, adv_rng);
}

}  // namespace dvslab
