#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dvslab/bytes.hpp"
#include "dvslab/rng.hpp"

namespace dvslab {

// Schnorr-style subgroup of Z_p^*: prime modulus p, prime order q | p-1,
// generator g of order q. Everything fits in 64 bits; this is a laboratory
// group, not a production one.
struct GroupParams {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::uint64_t g = 0;
    unsigned kappa = 0;
    std::string hash_name;  // digest used by hash_to_tag, recorded in params

    bool operator==(const GroupParams&) const = default;
};

struct GroupElement {
    std::uint64_t value = 0;
    bool operator==(const GroupElement&) const = default;
};

struct Scalar {
    std::uint64_t value = 0;
    bool operator==(const Scalar&) const = default;
};

// Fixed-length digest tag; length is 2*ceil(kappa/8) bytes.
struct Tag {
    Bytes bytes;
    bool operator==(const Tag&) const = default;
};

enum class GroupProfile { toy, standard };

constexpr unsigned kMinKappa = 8;
// Standard profile searches a safe prime p = 2q+1 with q of kappa bits; the
// 64-bit arithmetic caps usable kappa.
constexpr unsigned kMaxStandardKappa = 61;

// Toy profile is the fixed group p=23, q=11, g=2 (exhaustively testable);
// standard picks the smallest safe-prime group with q of exactly kappa bits.
// Deterministic: equal arguments give equal params. Throws
// std::invalid_argument for kappa < 8 or kappa beyond the 64-bit cap.
GroupParams setup_group(unsigned kappa, GroupProfile profile);

std::size_t tag_length(unsigned kappa);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

GroupElement exp(GroupElement base, Scalar e, const GroupParams& params);
GroupElement group_mul(GroupElement a, GroupElement b, const GroupParams& params);

// Membership in the order-q subgroup: value in [1, p-1] and value^q = 1.
bool is_member(GroupElement v, const GroupParams& params);

// Uniform scalar in [0, q-1] via rejection sampling.
Scalar random_scalar(Rng& rng, const GroupParams& params);

// Minimal big-endian integer bytes with a one-byte length prefix; injective
// over group elements and usable as a hash preimage part.
Bytes encode_element(GroupElement v);

// Domain-separated digest truncated to 2*ceil(kappa/8) bytes. The preimage is
// a length-prefixed encoding of (label, kappa, parts), so distinct part lists
// never collide as byte strings.
Tag hash_to_tag(std::string_view domain_label, std::span<const Bytes> parts,
                unsigned kappa);

}  // namespace dvslab
