#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "dvslab/bytes.hpp"
#include "dvslab/group.hpp"
#include "dvslab/rng.hpp"

namespace dvslab {

struct Params {
    GroupParams group;
    std::string scheme_label;
    unsigned kappa = 0;

    bool operator==(const Params&) const = default;

    void serialize(ByteWriter& w) const;
    static Params deserialize(ByteReader& r);
};

struct KeyPair {
    GroupElement pk;
    Scalar sk;
    bool operator==(const KeyPair&) const = default;
};

using Message = Bytes;

inline Message msg(std::string_view s) { return to_bytes(s); }

// tag carries the authenticator; extra is a fixed-length scheme-specific
// trailer (empty for the reference scheme, used by the broken variants to
// leak bytes without touching the tag).
struct Signature {
    Tag tag;
    Bytes extra;
    bool operator==(const Signature&) const = default;

    Bytes encode() const;  // tag || extra
    void serialize(ByteWriter& w) const;
    static Signature deserialize(ByteReader& r);
};

// The error symbol. Reasons are distinguishable so callers can tell an
// oracle exclusion from an invalid input.
enum class BottomReason { invalid_key, invalid_party, restricted_query };

struct Bottom {
    BottomReason reason;
    bool operator==(const Bottom&) const = default;
};

std::string_view bottom_reason_name(BottomReason r);

using SigResult = std::variant<Signature, Bottom>;
using VerifyResult = std::variant<bool, Bottom>;

inline bool is_bottom(const SigResult& r) {
    return std::holds_alternative<Bottom>(r);
}
inline bool is_bottom(const VerifyResult& r) {
    return std::holds_alternative<Bottom>(r);
}
inline bool accepted(const VerifyResult& r) {
    return std::holds_alternative<bool>(r) && std::get<bool>(r);
}

// Five-algorithm designated-verifier signature scheme. All algorithms are
// deterministic functions of their inputs and the supplied rng stream, which
// is what makes whole game runs replayable from a seed.
class Scheme {
public:
    virtual ~Scheme() = default;

    virtual std::string_view name() const = 0;

    // kappa < 8 is rejected.
    virtual Params setup(unsigned kappa, GroupProfile profile, Rng& rng) const = 0;

    // pk = g^sk with sk uniform over [0, q-1].
    virtual KeyPair keygen(const Params& params, Rng& rng) const = 0;

    // Signature when pk_s matches sk_s and pk_v is a subgroup member;
    // Bottom(invalid_key) otherwise.
    virtual SigResult sign(Scalar sk_s, GroupElement pk_s, GroupElement pk_v,
                           const Message& m, const Params& params, Rng& rng) const = 0;

    // Boolean verdict under valid keys (pk_v matches sk_v, pk_s a member);
    // Bottom(invalid_key) otherwise. Deterministic.
    virtual VerifyResult verify(Scalar sk_v, GroupElement pk_v, GroupElement pk_s,
                                const Message& m, const Signature& sigma,
                                const Params& params) const = 0;

    // Verifier-side simulation; same validity rule as verify.
    virtual SigResult simulate(Scalar sk_v, GroupElement pk_v, GroupElement pk_s,
                               const Message& m, const Params& params, Rng& rng) const = 0;
};

}  // namespace dvslab
