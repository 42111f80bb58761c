#include "mevace/signatures.hpp"

#include <sodium.h>

#include <stdexcept>
#include <string>

#include "mevace/codec.hpp"

namespace mevace {

namespace {

void ensure_sodium() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium initialization failed");
}

class MockScheme final : public SignatureScheme {
public:
    SchemeId id() const override { return SchemeId::MockDeterministic; }

    KeyPair keypair_from_seed(const Digest& seed) const override {
        Bytes s(seed.begin(), seed.end());
        return {SigningKey{id(), s}, VerificationKey{id(), s}};
    }

    Signature sign(const SigningKey& key, ByteView message) const override {
        return Signature{id(), mac(key.secret, message)};
    }

    bool verify(const VerificationKey& key, ByteView message,
                const Signature& sig) const override {
        if (key.scheme != id() || sig.scheme != id()) return false;
        if (key.bytes.size() != 32 || sig.bytes.size() != 32) return false;
        return mac(key.bytes, message) == sig.bytes;
    }

private:
    static Bytes mac(ByteView key, ByteView message) {
        Digest d = hash(ByteWriter{}.u8(0x6d).raw(key).raw(message).bytes());
        return Bytes(d.begin(), d.end());
    }
};

class Ed25519Scheme final : public SignatureScheme {
public:
    SchemeId id() const override { return SchemeId::Ed25519; }

    KeyPair keypair_from_seed(const Digest& seed) const override {
        ensure_sodium();
        Bytes pk(crypto_sign_PUBLICKEYBYTES);
        Bytes sk(crypto_sign_SECRETKEYBYTES);
        crypto_sign_seed_keypair(pk.data(), sk.data(), seed.data());
        return {SigningKey{id(), std::move(sk)}, VerificationKey{id(), std::move(pk)}};
    }

    Signature sign(const SigningKey& key, ByteView message) const override {
        ensure_sodium();
        if (key.scheme != id() || key.secret.size() != crypto_sign_SECRETKEYBYTES) {
            throw std::invalid_argument("malformed Ed25519 signing key");
        }
        Bytes sig(crypto_sign_BYTES);
        crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                             key.secret.data());
        return Signature{id(), std::move(sig)};
    }

    bool verify(const VerificationKey& key, ByteView message,
                const Signature& sig) const override {
        ensure_sodium();
        if (key.scheme != id() || sig.scheme != id()) return false;
        if (key.bytes.size() != crypto_sign_PUBLICKEYBYTES) return false;
        if (sig.bytes.size() != crypto_sign_BYTES) return false;
        return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                           key.bytes.data()) == 0;
    }
};

}  // namespace

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::MockDeterministic: return "mock";
        case SchemeId::Ed25519: return "ed25519";
    }
    return "unknown";
}

SchemeId scheme_from_name(std::string_view name) {
    if (name == "mock") return SchemeId::MockDeterministic;
    if (name == "ed25519") return SchemeId::Ed25519;
    throw std::invalid_argument("unknown signature scheme: " + std::string(name));
}

const SignatureScheme& scheme(SchemeId id) {
    static const MockScheme mock;
    static const Ed25519Scheme ed25519;
    switch (id) {
        case SchemeId::MockDeterministic: return mock;
        case SchemeId::Ed25519: return ed25519;
    }
    throw std::invalid_argument("unregistered signature scheme");
}

KeyPair keypair_from_seed(SchemeId id, const Digest& seed) {
    return scheme(id).keypair_from_seed(seed);
}

Signature sign(const SigningKey& key, ByteView message) {
    return scheme(key.scheme).sign(key, message);
}

bool verify(const VerificationKey& key, ByteView message, const Signature& sig) {
    if (key.scheme != sig.scheme) return false;
    switch (key.scheme) {
        case SchemeId::MockDeterministic:
        case SchemeId::Ed25519:
            return scheme(key.scheme).verify(key, message, sig);
    }
    return false;
}

}  // namespace mevace
