#pragma once

// EUF-CMA signature interface shared by user authentication keys and
// validator receipt keys.
//
// Two instantiations are registered:
//   MockDeterministic  NOT SECURE. The verification key equals the signing
//                      seed and a signature is H(0x6d | seed | message). Used
//                      for fast, reproducible simulation only.
//   Ed25519            libsodium Ed25519 (32-byte keys, 64-byte signatures).
//
// Any other scheme (for example a lattice scheme) can be added behind
// SignatureScheme without touching the protocol code.

#include <cstdint>
#include <string_view>

#include "mevace/bytes.hpp"

namespace mevace {

enum class SchemeId : std::uint8_t {
    MockDeterministic = 0x01,
    Ed25519 = 0x02,
};

std::string_view scheme_name(SchemeId id);
/// Accepts "mock" and "ed25519"; throws std::invalid_argument otherwise.
SchemeId scheme_from_name(std::string_view name);

struct SigningKey {
    SchemeId scheme = SchemeId::MockDeterministic;
    Bytes secret;
};

struct VerificationKey {
    SchemeId scheme = SchemeId::MockDeterministic;
    Bytes bytes;

    bool operator==(const VerificationKey&) const = default;
};

struct Signature {
    SchemeId scheme = SchemeId::MockDeterministic;
    Bytes bytes;

    bool operator==(const Signature&) const = default;
    auto operator<=>(const Signature&) const = default;
};

struct KeyPair {
    SigningKey signing_key;
    VerificationKey verification_key;
};

class SignatureScheme {
public:
    virtual ~SignatureScheme() = default;

    virtual SchemeId id() const = 0;
    virtual KeyPair keypair_from_seed(const Digest& seed) const = 0;
    virtual Signature sign(const SigningKey& key, ByteView message) const = 0;
    /// Never throws; malformed keys or signatures verify as false.
    virtual bool verify(const VerificationKey& key, ByteView message,
                        const Signature& sig) const = 0;
};

const SignatureScheme& scheme(SchemeId id);

KeyPair keypair_from_seed(SchemeId id, const Digest& seed);
Signature sign(const SigningKey& key, ByteView message);
bool verify(const VerificationKey& key, ByteView message, const Signature& sig);

}  // namespace mevace
