#pragma once

// Canonical byte layouts and hashing for every signed or hashed message.
//
// Layouts (all integers big-endian):
//   message          tag(1) | idcom(32) | commitment(32) | slot(8)        = 73 bytes
//   commitment hash  H( len(tx)(8) | tx | r(32) | idcom(32) | slot(8) )
//   merkle leaf      H( 0x00 | leaf )
//   merkle node      H( 0x01 | left(32) | right(32) )
//
// Tag 0x01 corresponds to the "commit" label and 0x02 to "open".

#include <compare>
#include <cstdint>
#include <vector>

#include "mevace/bytes.hpp"

namespace mevace {

struct SlotNumber {
    std::uint64_t value = 0;

    auto operator<=>(const SlotNumber&) const = default;
    SlotNumber next() const { return SlotNumber{value + 1}; }
};

enum class DomainTag : std::uint8_t {
    Commit = 0x01,
    Open = 0x02,
};

struct CanonicalMessage {
    DomainTag tag = DomainTag::Commit;
    Digest idcom;
    Digest commitment;
    SlotNumber slot;

    bool operator==(const CanonicalMessage&) const = default;
};

inline constexpr std::size_t kMessageSize = 73;

/// SHA-256.
Digest hash(ByteView data);

inline Digest hash(const Bytes& data) { return hash(ByteView{data}); }

Bytes encode_message(const CanonicalMessage& msg);

Digest commitment_hash(ByteView tx, const Nonce& r, const Digest& idcom, SlotNumber slot);

/// Binary Merkle root. Leaves must already be in canonical order. An odd node
/// at any level is promoted unchanged; the empty tree hashes to H(0x00).
Digest merkle_root(const std::vector<Bytes>& leaves);

}  // namespace mevace
