#include "dvslab/schemes.hpp"

#include <algorithm>
#include <array>

namespace dvslab {

namespace {

constexpr std::string_view kSignDomain = "dvs-sign";

// Behavioral deltas relative to dhmac. Each variant flips exactly one field.
struct SchemeTraits {
    SchemeId id;
    bool leak_sender_pk = false;   // trailer = encode(pk_s) on sign and simulate
    bool mark_origin = false;      // trailer = 0x00 from sign, 0x01 from simulate
    bool accept_zero_tag = false;  // verify additionally accepts the all-zero tag
};

bool own_key_valid(Scalar sk, GroupElement pk, const Params& params) {
    return exp(GroupElement{params.group.g}, sk, params.group) == pk;
}

// The MAC key: counterparty pk raised to the own secret. Sign and verify/
// simulate land on the same value by Diffie-Hellman symmetry.
GroupElement shared_key(GroupElement their_pk, Scalar own_sk, const Params& params) {
    return exp(their_pk, own_sk, params.group);
}

Tag mac_tag(GroupElement key, GroupElement pk_s, GroupElement pk_v,
            const Message& m, const Params& params) {
    std::array<Bytes, 4> parts = {encode_element(key), encode_element(pk_s),
                                  encode_element(pk_v), m};
    return hash_to_tag(kSignDomain, parts, params.kappa);
}

class DhMacFamily final : public Scheme {
public:
    explicit DhMacFamily(SchemeTraits traits) : traits_(traits) {}

    std::string_view name() const override { return scheme_name(traits_.id); }

    Params setup(unsigned kappa, GroupProfile profile, Rng&) const override {
        Params params;
        params.group = setup_group(kappa, profile);
        params.scheme_label = name();
        params.kappa = kappa;
        return params;
    }

    KeyPair keygen(const Params& params, Rng& rng) const override {
        Scalar sk = random_scalar(rng, params.group);
        return KeyPair{exp(GroupElement{params.group.g}, sk, params.group), sk};
    }

    SigResult sign(Scalar sk_s, GroupElement pk_s, GroupElement pk_v,
                   const Message& m, const Params& params, Rng&) const override {
        if (!own_key_valid(sk_s, pk_s, params) || !is_member(pk_v, params.group))
            return Bottom{BottomReason::invalid_key};
        Signature sig;
        sig.tag = mac_tag(shared_key(pk_v, sk_s, params), pk_s, pk_v, m, params);
        sig.extra = trailer(pk_s, /*from_simulate=*/false);
        return sig;
    }

    VerifyResult verify(Scalar sk_v, GroupElement pk_v, GroupElement pk_s,
                        const Message& m, const Signature& sigma,
                        const Params& params) const override {
        if (!own_key_valid(sk_v, pk_v, params) || !is_member(pk_s, params.group))
            return Bottom{BottomReason::invalid_key};
        Tag honest = mac_tag(shared_key(pk_s, sk_v, params), pk_s, pk_v, m, params);
        if (sigma.tag == honest) return true;
        if (traits_.accept_zero_tag && is_zero_tag(sigma.tag, params)) return true;
        return false;
    }

    SigResult simulate(Scalar sk_v, GroupElement pk_v, GroupElement pk_s,
                       const Message& m, const Params& params, Rng&) const override {
        if (!own_key_valid(sk_v, pk_v, params) || !is_member(pk_s, params.group))
            return Bottom{BottomReason::invalid_key};
        Signature sig;
        sig.tag = mac_tag(shared_key(pk_s, sk_v, params), pk_s, pk_v, m, params);
        sig.extra = trailer(pk_s, /*from_simulate=*/true);
        return sig;
    }

private:
    Bytes trailer(GroupElement pk_s, bool from_simulate) const {
        if (traits_.leak_sender_pk) return encode_element(pk_s);
        if (traits_.mark_origin) return Bytes{from_simulate ? std::uint8_t{1} : std::uint8_t{0}};
        return {};
    }

    static bool is_zero_tag(const Tag& tag, const Params& params) {
        return tag.bytes.size() == tag_length(params.kappa) &&
               std::all_of(tag.bytes.begin(), tag.bytes.end(),
                           [](std::uint8_t b) { return b == 0; });
    }

    SchemeTraits traits_;
};

}  // namespace

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::dhmac: return "dhmac";
        case SchemeId::leaky: return "leaky";
        case SchemeId::forgeable: return "forgeable";
        case SchemeId::transferable: return "transferable";
    }
    return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
    for (SchemeId id : {SchemeId::dhmac, SchemeId::leaky, SchemeId::forgeable,
                        SchemeId::transferable}) {
        if (name == scheme_name(id)) return id;
    }
    return std::nullopt;
}

std::shared_ptr<const Scheme> make_scheme(SchemeId id) {
    SchemeTraits traits{id};
    switch (id) {
        case SchemeId::dhmac: break;
        case SchemeId::leaky: traits.leak_sender_pk = true; break;
        case SchemeId::forgeable: traits.accept_zero_tag = true; break;
        case SchemeId::transferable: traits.mark_origin = true; break;
    }
    return std::make_shared<DhMacFamily>(traits);
}

}  // namespace dvslab
