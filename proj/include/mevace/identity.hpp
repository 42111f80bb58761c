#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "mevace/codec.hpp"
#include "mevace/expected.hpp"
#include "mevace/params.hpp"
#include "mevace/signatures.hpp"

namespace mevace {

inline constexpr std::string_view kAuthContext = "mev-ace/auth/v1";

/// Root entropy of an identity. Never serialized into any public message.
struct RootEntropy {
    std::array<std::uint8_t, 32> rev{};
};

struct AuthKeyPair {
    SigningKey signing_key;
    VerificationKey verification_key;
};

/// seed = H(rev | len(context)(8) | context); the key pair is generated from
/// seed under `scheme`. Throws std::invalid_argument if context is empty.
AuthKeyPair derive_auth_keypair(const RootEntropy& rev, std::string_view context,
                                SchemeId scheme = SchemeId::Ed25519);

/// H(verification key bytes).
Digest compute_idcom(const VerificationKey& vk);

enum class IdentityRole : std::uint8_t { User, Producer };

enum class SlashReason : std::uint8_t { NonOpening, InvalidBehavior, ProducerInvalidBlock };

std::string_view to_string(SlashReason r);

struct SlashEvent {
    Digest idcom;
    SlotNumber slot;
    Rational fraction;
    TokenAmount amount = 0;
    SlashReason reason = SlashReason::NonOpening;

    bool operator==(const SlashEvent&) const = default;
};

struct IdentityRecord {
    Digest idcom;
    VerificationKey verification_key;
    IdentityRole role = IdentityRole::User;
    TokenAmount bond = 0;
    bool active = false;
    std::map<SlotNumber, std::uint32_t> per_slot_commit_count;
    std::vector<SlashEvent> slash_history;
};

enum class RegistryError {
    NotRegistered,
    AlreadyRegistered,
    InsufficientBond,
    QuotaExceeded,
    InvalidFraction,
};

std::string_view to_string(RegistryError e);

/// Bonded identity registry with per-slot quota tracking and a slashing
/// ledger. Slashed funds are burned. Invariant:
///   total_deposits() == total_locked() + total_slashed().
class Registry {
public:
    /// Users need bond >= d_stake, producers bond >= b_prod.
    Expected<IdentityRecord, RegistryError> register_identity(
        const VerificationKey& vk, TokenAmount bond, const ProtocolParams& params,
        IdentityRole role = IdentityRole::User);

    const IdentityRecord* find(const Digest& idcom) const;
    bool is_active(const Digest& idcom) const;

    std::uint32_t quota_used(const Digest& idcom, SlotNumber slot) const;
    /// Checks without consuming.
    bool has_quota(const Digest& idcom, SlotNumber slot, const ProtocolParams& params) const;
    Expected<std::uint32_t, RegistryError> consume_quota(const Digest& idcom, SlotNumber slot,
                                                         const ProtocolParams& params);

    /// Charges floor(fraction * current bond). A bond that reaches zero
    /// deactivates the identity.
    Expected<SlashEvent, RegistryError> slash(const Digest& idcom, const Rational& fraction,
                                              SlashReason reason, SlotNumber slot);

    TokenAmount total_deposits() const { return deposits_; }
    TokenAmount total_slashed() const { return slashed_; }
    TokenAmount total_locked() const;
    bool conserves() const { return total_deposits() == total_locked() + total_slashed(); }

    const std::map<Digest, IdentityRecord>& records() const { return records_; }

    /// Restores a record verbatim (used by import). Recomputes totals.
    void restore(std::vector<IdentityRecord> records, TokenAmount deposits);

private:
    std::map<Digest, IdentityRecord> records_;
    TokenAmount deposits_ = 0;
    TokenAmount slashed_ = 0;
};

}  // namespace mevace
