#include "dvslab/group.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "dvslab/sha256.hpp"

namespace dvslab {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Miller-Rabin; this witness set is deterministic for all 64-bit inputs.
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

constexpr const char* kHashName = "sha256/trunc";

GroupParams search_standard_group(unsigned kappa) {
    // Smallest q of exactly kappa bits with q and p = 2q+1 both prime.
    std::uint64_t q = (std::uint64_t{1} << (kappa - 1)) + 1;
    for (;; q += 2) {
        if (!is_prime_u64(q)) continue;
        std::uint64_t p = 2 * q + 1;
        if (!is_prime_u64(p)) continue;
        // In a safe-prime group the squares are exactly the order-q subgroup.
        std::uint64_t h = 2;
        std::uint64_t g = mul_mod(h, h, p);
        while (g == 1) {
            ++h;
            g = mul_mod(h, h, p);
        }
        return GroupParams{p, q, g, kappa, kHashName};
    }
}

}  // namespace

GroupParams setup_group(unsigned kappa, GroupProfile profile) {
    if (kappa < kMinKappa)
        throw std::invalid_argument("setup_group: kappa below 8 is unusable");
    if (profile == GroupProfile::toy)
        return GroupParams{23, 11, 2, kappa, kHashName};
    if (kappa > kMaxStandardKappa)
        throw std::invalid_argument("setup_group: kappa exceeds 64-bit profile cap");

    // The search is deterministic, so cache per kappa.
    static std::mutex mu;
    static std::map<unsigned, GroupParams> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(kappa);
    if (it == cache.end())
        it = cache.emplace(kappa, search_standard_group(kappa)).first;
    return it->second;
}

std::size_t tag_length(unsigned kappa) {
    return 2 * ((kappa + 7) / 8);
}

GroupElement exp(GroupElement base, Scalar e, const GroupParams& params) {
    return GroupElement{pow_mod(base.value, e.value, params.p)};
}

GroupElement group_mul(GroupElement a, GroupElement b, const GroupParams& params) {
    return GroupElement{mul_mod(a.value, b.value, params.p)};
}

bool is_member(GroupElement v, const GroupParams& params) {
    if (v.value == 0 || v.value >= params.p) return false;
    return pow_mod(v.value, params.q, params.p) == 1;
}

Scalar random_scalar(Rng& rng, const GroupParams& params) {
    return Scalar{rng.below(params.q)};
}

Bytes encode_element(GroupElement v) {
    Bytes be;
    std::uint64_t x = v.value;
    do {
        be.insert(be.begin(), static_cast<std::uint8_t>(x & 0xff));
        x >>= 8;
    } while (x > 0);
    Bytes out;
    out.reserve(be.size() + 1);
    out.push_back(static_cast<std::uint8_t>(be.size()));
    out.insert(out.end(), be.begin(), be.end());
    return out;
}

Tag hash_to_tag(std::string_view domain_label, std::span<const Bytes> parts,
                unsigned kappa) {
    ByteWriter preimage;
    preimage.put_str(domain_label);
    preimage.put_u32(kappa);
    preimage.put_u32(static_cast<std::uint32_t>(parts.size()));
    for (const Bytes& part : parts) preimage.put_bytes(part);

    auto digest = Sha256::digest(preimage.data());
    std::size_t len = tag_length(kappa);
    Tag tag;
    tag.bytes.reserve(len);
    // 2*kappa bits never exceed one digest at the 64-bit kappa cap.
    for (std::size_t i = 0; i < len; ++i) tag.bytes.push_back(digest[i]);
    return tag;
}

}  // namespace dvslab
