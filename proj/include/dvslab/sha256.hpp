#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace dvslab {

// Plain FIPS 180-4 SHA-256, kept in-tree so the shared library has no
// external crypto dependency.
class Sha256 {
public:
    static constexpr std::size_t kDigestSize = 32;

    Sha256();
    void update(std::span<const std::uint8_t> data);
    std::array<std::uint8_t, kDigestSize> finish();

    static std::array<std::uint8_t, kDigestSize> digest(
        std::span<const std::uint8_t> data);

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::uint64_t total_len_ = 0;
    std::size_t buffer_len_ = 0;
};

}  // namespace dvslab
