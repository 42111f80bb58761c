#include "mevace/codec.hpp"

#include <sodium.h>

#include <stdexcept>

namespace mevace {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]);
        int lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

Digest hash(ByteView data) {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium initialization failed");
    Digest out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Bytes encode_message(const CanonicalMessage& msg) {
    return ByteWriter{}
        .u8(static_cast<std::uint8_t>(msg.tag))
        .raw(msg.idcom)
        .raw(msg.commitment)
        .u64be(msg.slot.value)
        .take();
}

Digest commitment_hash(ByteView tx, const Nonce& r, const Digest& idcom, SlotNumber slot) {
    ByteWriter w;
    w.u64be(tx.size()).raw(tx).raw(r).raw(idcom).u64be(slot.value);
    return hash(w.bytes());
}

Digest merkle_root(const std::vector<Bytes>& leaves) {
    if (leaves.empty()) {
        const std::uint8_t sentinel = 0x00;
        return hash(ByteView{&sentinel, 1});
    }

    std::vector<Digest> level;
    level.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        level.push_back(hash(ByteWriter{}.u8(0x00).raw(leaf).bytes()));
    }

    while (level.size() > 1) {
        std::vector<Digest> up;
        up.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            up.push_back(hash(ByteWriter{}.u8(0x01).raw(level[i]).raw(level[i + 1]).bytes()));
        }
        if (level.size() % 2 == 1) up.push_back(level.back());
        level = std::move(up);
    }
    return level.front();
}

}  // namespace mevace
