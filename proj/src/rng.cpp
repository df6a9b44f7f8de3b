#include "dvslab/rng.hpp"

#include <stdexcept>

namespace dvslab {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * kGolden);
}

std::uint64_t Rng::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    // Largest multiple of bound that fits in 64 bits; reject above it.
    std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    for (;;) {
        std::uint64_t v = next();
        if (v < limit) return v % bound;
    }
}

}  // namespace dvslab
