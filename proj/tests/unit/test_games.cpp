#include <doctest.h>

#include "dvslab/estimator.hpp"

using namespace dvslab;

namespace {

GameConfig base_cfg(GameKind kind, SchemeId scheme, std::string adversary,
                    int n = 2) {
    GameConfig cfg;
    cfg.kind = kind;
    cfg.scheme = scheme;
    cfg.adversary_id = std::move(adversary);
    cfg.n = n;
    cfg.kappa = 16;
    return cfg;
}

double win_rate(const GameConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
    return estimate(cfg, trials, seed).p_hat;
}

// Minimal in-test adversaries for malformed-output paths.
class FixedGuess final : public TwoPhaseAdversary {
public:
    explicit FixedGuess(int guess, std::optional<AdvChallengeChoice> choice = {})
        : guess_(guess), choice_(choice) {}
    Phase1Result phase1(const GameView&, OracleSet&, Rng&) override {
        Phase1Result out;
        out.request.m_star = msg("m");
        out.request.choice = choice_;
        return out;
    }
    int phase2(const Bytes&, const Signature&, OracleSet&, Rng&) override {
        return guess_;
    }

private:
    int guess_;
    std::optional<AdvChallengeChoice> choice_;
};

class ReplayForger final : public UfAdversary {
public:
    Forgery run(const GameView&, OracleSet& oracles, Rng&) override {
        SigResult sig = oracles.sign(msg("replayed"), 0, 1);
        return Forgery{msg("replayed"), std::get<Signature>(sig), 0, 1};
    }
};

class BadIndexForger final : public UfAdversary {
public:
    Forgery run(const GameView& view, OracleSet&, Rng&) override {
        return Forgery{msg("m"), zero_tag_signature(view.params.kappa), 0, 9};
    }
};

}  // namespace

TEST_CASE("random guesser wins about half the psi trials") {
    for (SchemeId scheme : {SchemeId::dhmac, SchemeId::leaky}) {
        GameConfig cfg = base_cfg(GameKind::psi, scheme, "random");
        double rate = win_rate(cfg, 4000, 2024);
        CHECK(rate > 0.46);
        CHECK(rate < 0.54);
    }
}

TEST_CASE("leaky trailer reader wins psi outright; dhmac degenerates to a coin") {
    GameConfig leaky = base_cfg(GameKind::psi, SchemeId::leaky, "trailer");
    CHECK(win_rate(leaky, 1000, 7) == 1.0);

    GameConfig dhmac = base_cfg(GameKind::psi, SchemeId::dhmac, "trailer");
    double rate = win_rate(dhmac, 2000, 7);
    CHECK(rate > 0.45);
    CHECK(rate < 0.55);
}

TEST_CASE("trailer reader guess on dhmac is a constant function of the challenge") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::dhmac, "trailer");
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        GameConfig c0 = cfg;
        c0.challenge = 0;
        GameConfig c1 = cfg;
        c1.challenge = 1;
        GameOutcome o0 = run_trial(c0, 99, trial);
        GameOutcome o1 = run_trial(c1, 99, trial);
        CHECK(o0.guess == o1.guess);
    }
}

TEST_CASE("psi with huang oracles realizes the 2-party experiment") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::leaky, "trailer");
    cfg.oracle_set = OracleSetName::huang;
    CHECK(win_rate(cfg, 500, 11) == 1.0);

    GameConfig bad = cfg;
    bad.n = 3;  // huang set is defined for n = 2 only
    CHECK_THROWS_AS(run_trial(bad, 1, 0), std::invalid_argument);
}

TEST_CASE("nrpsi draws the challenge from all n senders") {
    GameConfig cfg = base_cfg(GameKind::nrpsi, SchemeId::leaky, "trailer", 4);
    AdvantageEstimate est = estimate(cfg, 1000, 5);
    CHECK(est.p_hat == 1.0);
    CHECK(est.baseline == doctest::Approx(0.25));
    CHECK(est.advantage == doctest::Approx(0.75));

    // Challenges actually span {0..3}.
    bool seen[4] = {false, false, false, false};
    for (std::uint64_t i = 0; i < 64; ++i) {
        GameOutcome o = run_trial(cfg, 5, i);
        REQUIRE(o.challenge >= 0);
        REQUIRE(o.challenge < 4);
        seen[o.challenge] = true;
    }
    CHECK((seen[0] && seen[1] && seen[2] && seen[3]));
}

TEST_CASE("malformed guesses are losses") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::dhmac, "random");
    auto scheme = make_scheme(cfg.scheme);
    FixedGuess adversary(7);
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng trial(derive_seed(3, i));
        CHECK_FALSE(run_psi(cfg, *scheme, adversary, trial).won);
    }
}

TEST_CASE("advpsi with the constant (0,1,n) choice reproduces psi trial-for-trial") {
    GameConfig psi_cfg = base_cfg(GameKind::psi, SchemeId::leaky, "random", 3);
    GameConfig adv_cfg = base_cfg(GameKind::advpsi, SchemeId::leaky, "random", 3);
    for (std::uint64_t i = 0; i < 300; ++i) {
        GameOutcome a = run_trial(psi_cfg, 17, i);
        GameOutcome b = run_trial(adv_cfg, 17, i);
        CHECK(a.challenge == b.challenge);
        CHECK(a.guess == b.guess);
        CHECK(a.won == b.won);
    }
}

TEST_CASE("advpsi rejects invalid challenge choices as losses") {
    GameConfig cfg = base_cfg(GameKind::advpsi, SchemeId::leaky, "random", 3);
    auto scheme = make_scheme(cfg.scheme);

    FixedGuess same_senders(0, AdvChallengeChoice{1, 1, 3});
    FixedGuess out_of_range(0, AdvChallengeChoice{0, 5, 3});
    FixedGuess verifier_is_sender(0, AdvChallengeChoice{0, 1, 1});
    for (std::uint64_t i = 0; i < 10; ++i) {
        Rng t1(derive_seed(4, i)), t2(derive_seed(4, i)), t3(derive_seed(4, i));
        CHECK_FALSE(run_advpsi(cfg, *scheme, same_senders, t1).won);
        CHECK_FALSE(run_advpsi(cfg, *scheme, out_of_range, t2).won);
        CHECK_FALSE(run_advpsi(cfg, *scheme, verifier_is_sender, t3).won);
    }

    // The documented switch permits r in {s0, s1}.
    GameConfig relaxed = cfg;
    relaxed.advpsi_allow_challenge_verifier = true;
    FixedGuess relaxed_choice(0, AdvChallengeChoice{0, 1, 1});
    Rng trial(derive_seed(4, 0));
    GameOutcome o = run_advpsi(relaxed, *scheme, relaxed_choice, trial);
    CHECK(o.guess == 0);  // the game completed instead of short-circuiting
}

TEST_CASE("adaptive trailer reader wins advpsi on leaky") {
    GameConfig cfg = base_cfg(GameKind::advpsi, SchemeId::leaky, "trailer", 3);
    CHECK(win_rate(cfg, 1000, 23) == 1.0);
}

TEST_CASE("nt: transferable trailer wins always, dhmac is independent of b") {
    GameConfig transferable = base_cfg(GameKind::nt, SchemeId::transferable, "trailer");
    CHECK(win_rate(transferable, 1000, 7) == 1.0);

    // dhmac: the challenge is identical under b=0 and b=1, so the guess is
    // exactly the same in both branches; the win rate over a uniform b is
    // exactly 1/2.
    GameConfig dhmac = base_cfg(GameKind::nt, SchemeId::dhmac, "trailer");
    int paired_wins = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        GameConfig b0 = dhmac;
        b0.challenge = 0;
        GameConfig b1 = dhmac;
        b1.challenge = 1;
        GameOutcome o0 = run_trial(b0, 13, i);
        GameOutcome o1 = run_trial(b1, 13, i);
        CHECK(o0.guess == o1.guess);
        paired_wins += (o0.won ? 1 : 0) + (o1.won ? 1 : 0);
    }
    CHECK(paired_wins == 200);  // exactly one of each pair wins
}

TEST_CASE("nt constant-guess adversary wins half the trials") {
    GameConfig cfg = base_cfg(GameKind::nt, SchemeId::transferable, "random");
    double rate = win_rate(cfg, 2000, 3);
    CHECK(rate > 0.45);
    CHECK(rate < 0.55);
}

TEST_CASE("uf: zero forger separates forgeable from dhmac") {
    GameConfig forgeable = base_cfg(GameKind::uf, SchemeId::forgeable, "zero-forger");
    AdvantageEstimate est = estimate(forgeable, 1000, 3);
    CHECK(est.p_hat == 1.0);
    CHECK(est.baseline == 0.0);
    CHECK(est.advantage == 1.0);

    GameConfig dhmac = base_cfg(GameKind::uf, SchemeId::dhmac, "zero-forger");
    CHECK(win_rate(dhmac, 1000, 3) == 0.0);
}

TEST_CASE("uf freshness clause: replaying an oracle signature loses") {
    GameConfig cfg = base_cfg(GameKind::uf, SchemeId::dhmac, "zero-forger");
    auto scheme = make_scheme(cfg.scheme);
    ReplayForger replayer;
    for (std::uint64_t i = 0; i < 20; ++i) {
        Rng trial(derive_seed(8, i));
        GameOutcome o = run_uf(cfg, *scheme, replayer, trial);
        CHECK_FALSE(o.won);
        CHECK(o.oracle_counts.sign == 1);
    }

    // Out-of-range forgery indices lose too (even on forgeable, where the
    // zero tag itself would verify).
    GameConfig forgeable_cfg = base_cfg(GameKind::uf, SchemeId::forgeable, "zero-forger");
    auto forgeable_scheme = make_scheme(forgeable_cfg.scheme);
    BadIndexForger out_of_range;
    Rng trial(derive_seed(8, 0));
    CHECK_FALSE(run_uf(forgeable_cfg, *forgeable_scheme, out_of_range, trial).won);
}

TEST_CASE("uf transcript records zero oracle calls for the zero forger") {
    GameConfig cfg = base_cfg(GameKind::uf, SchemeId::forgeable, "zero-forger");
    GameOutcome o = run_trial(cfg, 5, 0);
    CHECK(o.oracle_counts.total() == 0);
}

TEST_CASE("verify probe against stripped oracles hits only the empty slot") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::forgeable, "verify-probe");
    cfg.oracle_set = OracleSetName::no_verify;
    for (std::uint64_t i = 0; i < 50; ++i) {
        GameOutcome o = run_trial(cfg, 77, i);
        CHECK(o.oracle_counts.veri == 0);  // empty oracle answers are not logged
        CHECK(o.oracle_counts.sign == 1);
    }
    // Against standard oracles the same query is answered and logged.
    cfg.oracle_set = OracleSetName::standard;
    GameOutcome o = run_trial(cfg, 77, 0);
    CHECK(o.oracle_counts.veri == 1);
}

TEST_CASE("hybrid j=0 equals psi with no-verify oracles trial-for-trial") {
    for (SchemeId scheme : {SchemeId::dhmac, SchemeId::transferable}) {
        GameConfig psi_cfg = base_cfg(GameKind::psi, scheme, "hybrid-probe", 5);
        psi_cfg.oracle_set = OracleSetName::no_verify;
        GameConfig hybrid_cfg = base_cfg(GameKind::hybrid, scheme, "hybrid-probe", 5);
        hybrid_cfg.hybrid_j = 0;
        for (std::uint64_t i = 0; i < 200; ++i) {
            GameOutcome a = run_trial(psi_cfg, 31, i);
            GameOutcome b = run_trial(hybrid_cfg, 31, i);
            CHECK(a.challenge == b.challenge);
            CHECK(a.guess == b.guess);
            CHECK(a.won == b.won);
        }
    }
}

TEST_CASE("hybrid outcomes are j-invariant for dhmac") {
    GameConfig cfg = base_cfg(GameKind::hybrid, SchemeId::dhmac, "hybrid-probe", 5);
    std::vector<GameOutcome> reference;
    cfg.hybrid_j = 0;
    for (std::uint64_t i = 0; i < 100; ++i) reference.push_back(run_trial(cfg, 41, i));
    for (std::size_t j = 1; j <= 5; ++j) {
        cfg.hybrid_j = j;
        for (std::uint64_t i = 0; i < 100; ++i) {
            GameOutcome o = run_trial(cfg, 41, i);
            CHECK(o.won == reference[i].won);
            CHECK(o.guess == reference[i].guess);
        }
    }
}

TEST_CASE("hybrid probe flips between j=0 and j=1 on transferable") {
    GameConfig cfg = base_cfg(GameKind::hybrid, SchemeId::transferable,
                              "hybrid-probe", 5);
    cfg.hybrid_j = 0;
    CHECK(win_rate(cfg, 500, 23) == 1.0);
    cfg.hybrid_j = 1;
    CHECK(win_rate(cfg, 500, 23) == 0.0);
}

TEST_CASE("crossover oracle set behaves as the fully swapped hybrid") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::transferable,
                              "hybrid-probe", 5);
    cfg.oracle_set = OracleSetName::crossover;
    // Every crossover call is swapped, so the probe reads a simulate trailer
    // and flips its (otherwise winning) guess.
    CHECK(win_rate(cfg, 500, 23) == 0.0);
}

TEST_CASE("games are reproducible per (config, seed)") {
    GameConfig cfg = base_cfg(GameKind::psi, SchemeId::leaky, "random", 3);
    for (std::uint64_t i = 0; i < 50; ++i) {
        GameOutcome a = run_trial(cfg, 57, i);
        GameOutcome b = run_trial(cfg, 57, i);
        CHECK(a.won == b.won);
        CHECK(a.guess == b.guess);
        CHECK(a.challenge == b.challenge);
    }
}

TEST_CASE("game and oracle name maps round trip") {
    for (GameKind k : {GameKind::psi, GameKind::nrpsi, GameKind::advpsi,
                       GameKind::nt, GameKind::uf, GameKind::hybrid})
        CHECK(parse_game(game_name(k)) == k);
    CHECK_FALSE(parse_game("nosuch").has_value());
    for (OracleSetName o : {OracleSetName::standard, OracleSetName::huang,
                            OracleSetName::no_verify, OracleSetName::crossover})
        CHECK(parse_oracle_set(oracle_set_name(o)) == o);
    CHECK_FALSE(parse_oracle_set("nosuch").has_value());
}
