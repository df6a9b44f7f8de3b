#pragma once

#include <cstdint>

namespace dvslab {

// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

// Keyed stream derivation. derive_seed(seed, i) is the (i+1)-th output of a
// splitmix64 sequence started at `seed`, so distinct indices give distinct
// seeds and the result is independent of the order streams are requested in.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic seeded generator (splitmix64 core). One Rng owns one stream;
// child(i) derives an independent stream keyed by (base seed, i) without
// consuming any state, which is what makes trial- and purpose-level splitting
// order-independent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next();

    // Uniform in [0, bound) by rejection sampling; exact, no modulo bias.
    std::uint64_t below(std::uint64_t bound);

    // Uniform bit.
    int coin() { return static_cast<int>(below(2)); }

    Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace dvslab
