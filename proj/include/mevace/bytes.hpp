#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mevace {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Fixed-width byte string. Ordered lexicographically, which is the order
/// used when canonicalizing admissible sets.
template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t size() { return N; }
    const std::uint8_t* data() const { return bytes.data(); }
    std::uint8_t* data() { return bytes.data(); }
    auto begin() const { return bytes.begin(); }
    auto end() const { return bytes.end(); }
    auto begin() { return bytes.begin(); }
    auto end() { return bytes.end(); }
    std::uint8_t& operator[](std::size_t i) { return bytes[i]; }
    std::uint8_t operator[](std::size_t i) const { return bytes[i]; }
    ByteView view() const { return {bytes.data(), N}; }

    auto operator<=>(const FixedBytes&) const = default;
};

using Digest = FixedBytes<32>;
using Nonce = FixedBytes<32>;

std::string to_hex(ByteView data);

template <std::size_t N>
std::string to_hex(const FixedBytes<N>& b) {
    return to_hex(b.view());
}

/// Throws std::invalid_argument on odd length or non-hex characters.
Bytes from_hex(std::string_view hex);

template <std::size_t N>
FixedBytes<N> fixed_from_hex(std::string_view hex) {
    Bytes raw = from_hex(hex);
    if (raw.size() != N) {
        throw std::invalid_argument("expected " + std::to_string(N) + " bytes, got " +
                                    std::to_string(raw.size()));
    }
    FixedBytes<N> out;
    std::copy(raw.begin(), raw.end(), out.bytes.begin());
    return out;
}

inline Digest digest_from_hex(std::string_view hex) { return fixed_from_hex<32>(hex); }

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

/// Big-endian append-only writer for canonical encodings.
class ByteWriter {
public:
    ByteWriter& u8(std::uint8_t v) {
        buf_.push_back(v);
        return *this;
    }
    ByteWriter& u16be(std::uint16_t v) { return be(v, 2); }
    ByteWriter& u32be(std::uint32_t v) { return be(v, 4); }
    ByteWriter& u64be(std::uint64_t v) { return be(v, 8); }
    ByteWriter& raw(ByteView data) {
        buf_.insert(buf_.end(), data.begin(), data.end());
        return *this;
    }
    template <std::size_t N>
    ByteWriter& raw(const FixedBytes<N>& b) {
        return raw(b.view());
    }

    const Bytes& bytes() const& { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    ByteWriter& be(std::uint64_t v, int width) {
        for (int i = width - 1; i >= 0; --i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
        return *this;
    }

    Bytes buf_;
};

/// Bounds-checked reader; every accessor throws DecodeError past the end.
class ByteReader {
public:
    struct DecodeError : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
    std::uint16_t u16be() { return static_cast<std::uint16_t>(be(2)); }
    std::uint32_t u32be() { return static_cast<std::uint32_t>(be(4)); }
    std::uint64_t u64be() { return be(8); }

    Bytes raw(std::size_t n) {
        need(n);
        Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
        pos_ += n;
        return out;
    }

    template <std::size_t N>
    FixedBytes<N> fixed() {
        need(N);
        FixedBytes<N> out;
        std::copy_n(data_.begin() + pos_, N, out.bytes.begin());
        pos_ += N;
        return out;
    }

    bool at_end() const { return pos_ == data_.size(); }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw DecodeError("truncated input");
    }
    std::uint64_t be(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace mevace
