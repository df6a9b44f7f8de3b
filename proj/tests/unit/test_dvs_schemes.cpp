#include <doctest.h>

#include "dvslab/schemes.hpp"

using namespace dvslab;

namespace {

struct Fixture {
    std::shared_ptr<const Scheme> scheme;
    Params params;
    KeyPair sender;
    KeyPair verifier;
    Rng rng{0};

    explicit Fixture(SchemeId id, GroupProfile profile = GroupProfile::toy,
                     unsigned kappa = 8, std::uint64_t seed = 1)
        : scheme(make_scheme(id)), rng(seed) {
        Rng setup = rng.child(0);
        params = scheme->setup(kappa, profile, setup);
        Rng ks = rng.child(1);
        Rng kv = rng.child(2);
        sender = scheme->keygen(params, ks);
        verifier = scheme->keygen(params, kv);
    }

    SigResult sign(const Message& m) {
        Rng r = rng.child(3);
        return scheme->sign(sender.sk, sender.pk, verifier.pk, m, params, r);
    }
    SigResult simulate(const Message& m) {
        Rng r = rng.child(4);
        return scheme->simulate(verifier.sk, verifier.pk, sender.pk, m, params, r);
    }
    VerifyResult verify(const Message& m, const Signature& sig) {
        return scheme->verify(verifier.sk, verifier.pk, sender.pk, m, sig, params);
    }
};

KeyPair keypair_from_sk(const Params& params, std::uint64_t sk) {
    GroupElement g{params.group.g};
    return KeyPair{exp(g, Scalar{sk}, params.group), Scalar{sk}};
}

}  // namespace

TEST_CASE("scheme names round trip") {
    for (SchemeId id : {SchemeId::dhmac, SchemeId::leaky, SchemeId::forgeable,
                        SchemeId::transferable}) {
        CHECK(parse_scheme(scheme_name(id)) == id);
        CHECK(make_scheme(id)->name() == scheme_name(id));
    }
    CHECK_FALSE(parse_scheme("nosuch").has_value());
}

TEST_CASE("setup delegates to the group and rejects small kappa") {
    Fixture f(SchemeId::dhmac);
    CHECK(f.params.group.p == 23);
    CHECK(f.params.kappa == 8);
    CHECK(f.params.scheme_label == "dhmac");

    Rng r(1);
    CHECK_THROWS_AS(f.scheme->setup(4, GroupProfile::toy, r), std::invalid_argument);

    Rng r1(9), r2(9);
    CHECK(f.scheme->setup(16, GroupProfile::standard, r1) ==
          f.scheme->setup(16, GroupProfile::standard, r2));
}

TEST_CASE("keygen gives pk = g^sk") {
    Fixture f(SchemeId::dhmac);
    for (std::uint64_t i = 0; i < 25; ++i) {
        Rng stream(i);
        KeyPair kp = f.scheme->keygen(f.params, stream);
        CHECK(kp.sk.value < f.params.group.q);
        CHECK(exp(GroupElement{f.params.group.g}, kp.sk, f.params.group) == kp.pk);
    }
    // identity case
    KeyPair zero = keypair_from_sk(f.params, 0);
    CHECK(zero.pk.value == 1);
    KeyPair three = keypair_from_sk(f.params, 3);
    CHECK(three.pk.value == 8);
}

TEST_CASE("distinct seeds collide in sk at roughly rate 1/q") {
    Fixture f(SchemeId::dhmac);
    int collisions = 0;
    const int pairs = 2000;
    for (int i = 0; i < pairs; ++i) {
        Rng a(static_cast<std::uint64_t>(2 * i) + 1000);
        Rng b(static_cast<std::uint64_t>(2 * i + 1) + 1000);
        if (f.scheme->keygen(f.params, a).sk == f.scheme->keygen(f.params, b).sk)
            ++collisions;
    }
    // Expected pairs/11 = 182; allow generous sampling error.
    double rate = static_cast<double>(collisions) / pairs;
    CHECK(rate > 1.0 / 11 - 0.03);
    CHECK(rate < 1.0 / 11 + 0.03);
}

TEST_CASE("correctness: verify accepts sign and simulate outputs") {
    for (SchemeId id : {SchemeId::dhmac, SchemeId::leaky, SchemeId::forgeable,
                        SchemeId::transferable}) {
        CAPTURE(scheme_name(id));
        Fixture f(id);
        Message m = msg("hello");
        SigResult signed_sig = f.sign(m);
        REQUIRE_FALSE(is_bottom(signed_sig));
        CHECK(accepted(f.verify(m, std::get<Signature>(signed_sig))));

        SigResult simulated = f.simulate(m);
        REQUIRE_FALSE(is_bottom(simulated));
        CHECK(accepted(f.verify(m, std::get<Signature>(simulated))));
    }
}

TEST_CASE("bottom propagation on invalid keys") {
    Fixture f(SchemeId::dhmac);
    Message m = msg("x");
    Rng r(0);

    // pk_S does not match sk_S.
    GroupElement wrong_pk = exp(GroupElement{f.params.group.g},
                                Scalar{(f.sender.sk.value + 1) % 11}, f.params.group);
    SigResult bad_sign = f.scheme->sign(f.sender.sk, wrong_pk, f.verifier.pk, m,
                                        f.params, r);
    REQUIRE(is_bottom(bad_sign));
    CHECK(std::get<Bottom>(bad_sign).reason == BottomReason::invalid_key);

    // pk_V outside the subgroup.
    SigResult bad_pkv = f.scheme->sign(f.sender.sk, f.sender.pk, GroupElement{5},
                                       m, f.params, r);
    REQUIRE(is_bottom(bad_pkv));

    // pk_V does not match sk_V in verify and simulate.
    Signature sig = std::get<Signature>(f.sign(m));
    VerifyResult bad_verify = f.scheme->verify(
        Scalar{(f.verifier.sk.value + 1) % 11}, f.verifier.pk, f.sender.pk, m,
        sig, f.params);
    REQUIRE(is_bottom(bad_verify));
    CHECK(std::get<Bottom>(bad_verify).reason == BottomReason::invalid_key);

    SigResult bad_sim = f.scheme->simulate(Scalar{(f.verifier.sk.value + 1) % 11},
                                           f.verifier.pk, f.sender.pk, m, f.params, r);
    REQUIRE(is_bottom(bad_sim));
}

TEST_CASE("dhmac verify rejects a flipped tag bit") {
    Fixture f(SchemeId::dhmac);
    Message m = msg("bitflip");
    Signature sig = std::get<Signature>(f.sign(m));
    for (std::size_t byte = 0; byte < sig.tag.bytes.size(); ++byte) {
        Signature mangled = sig;
        mangled.tag.bytes[byte] ^= 1;
        CHECK_FALSE(accepted(f.verify(m, mangled)));
    }
}

TEST_CASE("dhmac verify rejects a tag from the wrong sender") {
    Fixture f(SchemeId::dhmac);
    Message m = msg("who-signed");
    KeyPair other = keypair_from_sk(f.params, (f.sender.sk.value + 5) % 11);
    Rng r(0);
    Signature from_other = std::get<Signature>(f.scheme->sign(
        other.sk, other.pk, f.verifier.pk, m, f.params, r));
    // Verified against the original sender's pk, the tag no longer matches.
    if (other.pk != f.sender.pk) CHECK_FALSE(accepted(f.verify(m, from_other)));
}

TEST_CASE("dhmac sign and simulate agree byte for byte") {
    Fixture f(SchemeId::dhmac);
    for (const char* text : {"a", "b", "longer message"}) {
        Message m = msg(text);
        CHECK(std::get<Signature>(f.sign(m)) == std::get<Signature>(f.simulate(m)));
    }
    Signature sig = std::get<Signature>(f.sign(msg("a")));
    CHECK(sig.extra.empty());
    CHECK(sig.tag.bytes.size() == tag_length(8));
}

TEST_CASE("leaky signatures carry the sender pk and stripping them gives dhmac") {
    Fixture leaky(SchemeId::leaky);
    Fixture dhmac(SchemeId::dhmac);
    Message m = msg("leak");

    Signature sig = std::get<Signature>(leaky.sign(m));
    CHECK(sig.extra == encode_element(leaky.sender.pk));
    Signature sim = std::get<Signature>(leaky.simulate(m));
    CHECK(sim.extra == encode_element(leaky.sender.pk));

    // Same keys (same seed construction), so the tag equals dhmac's.
    CHECK(sig.tag == std::get<Signature>(dhmac.sign(m)).tag);

    // verify ignores the trailer.
    Signature mangled = sig;
    mangled.extra = to_bytes("garbage");
    CHECK(accepted(leaky.verify(m, mangled)));
}

TEST_CASE("forgeable accepts exactly dhmac plus the all-zero tag") {
    Fixture forgeable(SchemeId::forgeable);
    Fixture dhmac(SchemeId::dhmac);
    Message m = msg("forge-me");

    Signature zero;
    zero.tag.bytes.assign(tag_length(8), 0);
    CHECK(accepted(forgeable.verify(m, zero)));
    CHECK_FALSE(accepted(dhmac.verify(m, zero)));

    // Wrong-length zero tag is not the magic tag.
    Signature short_zero;
    short_zero.tag.bytes.assign(1, 0);
    CHECK_FALSE(accepted(forgeable.verify(m, short_zero)));

    // On every other tag the two verdicts coincide.
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        Signature random_sig;
        random_sig.tag.bytes = {static_cast<std::uint8_t>(rng.below(256)),
                                static_cast<std::uint8_t>(rng.below(256))};
        if (random_sig.tag.bytes == zero.tag.bytes) continue;
        CHECK(accepted(forgeable.verify(m, random_sig)) ==
              accepted(dhmac.verify(m, random_sig)));
    }
}

TEST_CASE("dhmac rejects uniformly random tags") {
    Fixture f(SchemeId::dhmac, GroupProfile::standard, 16, 5);
    Message m = msg("random-tag");
    Rng rng(91);
    int accepts = 0;
    for (int i = 0; i < 500; ++i) {
        Signature sig;
        for (std::size_t b = 0; b < tag_length(16); ++b)
            sig.tag.bytes.push_back(static_cast<std::uint8_t>(rng.below(256)));
        if (accepted(f.verify(m, sig))) ++accepts;
    }
    // True acceptance rate is 2^-32; zero hits expected at this sample size.
    CHECK(accepts == 0);
}

TEST_CASE("transferable trailer says which algorithm produced the signature") {
    Fixture f(SchemeId::transferable);
    Message m = msg("origin");
    Signature signed_sig = std::get<Signature>(f.sign(m));
    Signature simulated = std::get<Signature>(f.simulate(m));
    CHECK(signed_sig.extra == Bytes{0});
    CHECK(simulated.extra == Bytes{1});
    CHECK(signed_sig.tag == simulated.tag);
    CHECK(accepted(f.verify(m, signed_sig)));
    CHECK(accepted(f.verify(m, simulated)));
}

TEST_CASE("identical inputs and streams give identical outputs") {
    for (SchemeId id : {SchemeId::dhmac, SchemeId::transferable}) {
        Fixture a(id, GroupProfile::standard, 16, 42);
        Fixture b(id, GroupProfile::standard, 16, 42);
        CHECK(a.sender == b.sender);
        CHECK(a.verifier == b.verifier);
        Message m = msg("repeat");
        CHECK(std::get<Signature>(a.sign(m)) == std::get<Signature>(b.sign(m)));
    }
}
