#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dvslab {

using Bytes = std::vector<std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);

// Length-prefixed binary encoder. Used for hash preimages and for the opaque
// adversary-state envelopes, so every multi-field value has one injective
// byte form.
class ByteWriter {
public:
    void put_u8(std::uint8_t v) { out_.push_back(v); }
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_raw(std::span<const std::uint8_t> data);
    void put_bytes(std::span<const std::uint8_t> data);  // u32 length prefix
    void put_str(std::string_view s);

    const Bytes& data() const { return out_; }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t get_u8();
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    Bytes get_bytes();  // u32 length prefix
    std::string get_str();
    bool empty() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const;
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace dvslab
