#include "dvslab/bytes.hpp"

namespace dvslab {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}
}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
    std::string s;
    s.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        s.push_back(kHexDigits[b >> 4]);
        s.push_back(kHexDigits[b & 0xf]);
    }
    return s;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(hex_nibble(hex[2 * i]) << 4 |
                                           hex_nibble(hex[2 * i + 1]));
    }
    return out;
}

void ByteWriter::put_u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_raw(std::span<const std::uint8_t> data) {
    out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::put_bytes(std::span<const std::uint8_t> data) {
    put_u32(static_cast<std::uint32_t>(data.size()));
    put_raw(data);
}

void ByteWriter::put_str(std::string_view s) {
    put_u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
}

void ByteReader::need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw std::out_of_range("byte reader underrun");
}

std::uint8_t ByteReader::get_u8() {
    need(1);
    return data_[pos_++];
}

std::uint32_t ByteReader::get_u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = v << 8 | data_[pos_++];
    return v;
}

std::uint64_t ByteReader::get_u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = v << 8 | data_[pos_++];
    return v;
}

Bytes ByteReader::get_bytes() {
    std::uint32_t len = get_u32();
    need(len);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
    pos_ += len;
    return out;
}

std::string ByteReader::get_str() {
    Bytes b = get_bytes();
    return std::string(b.begin(), b.end());
}

}  // namespace dvslab
