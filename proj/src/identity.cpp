#include "mevace/identity.hpp"

#include <stdexcept>

namespace mevace {

AuthKeyPair derive_auth_keypair(const RootEntropy& rev, std::string_view context,
                                SchemeId scheme_id) {
    if (context.empty()) throw std::invalid_argument("derivation context must be non-empty");
    ByteWriter w;
    w.raw(ByteView{rev.rev.data(), rev.rev.size()})
        .u64be(context.size())
        .raw(ByteView{reinterpret_cast<const std::uint8_t*>(context.data()), context.size()});
    KeyPair kp = keypair_from_seed(scheme_id, hash(w.bytes()));
    return {std::move(kp.signing_key), std::move(kp.verification_key)};
}

Digest compute_idcom(const VerificationKey& vk) { return hash(vk.bytes); }

std::string_view to_string(SlashReason r) {
    switch (r) {
        case SlashReason::NonOpening: return "non_opening";
        case SlashReason::InvalidBehavior: return "invalid_behavior";
        case SlashReason::ProducerInvalidBlock: return "producer_invalid_block";
    }
    return "unknown";
}

std::string_view to_string(RegistryError e) {
    switch (e) {
        case RegistryError::NotRegistered: return "NotRegistered";
        case RegistryError::AlreadyRegistered: return "AlreadyRegistered";
        case RegistryError::InsufficientBond: return "InsufficientBond";
        case RegistryError::QuotaExceeded: return "QuotaExceeded";
        case RegistryError::InvalidFraction: return "InvalidFraction";
    }
    return "unknown";
}

Expected<IdentityRecord, RegistryError> Registry::register_identity(
    const VerificationKey& vk, TokenAmount bond, const ProtocolParams& params,
    IdentityRole role) {
    Digest idcom = compute_idcom(vk);
    if (records_.contains(idcom)) return unexpected(RegistryError::AlreadyRegistered);
    TokenAmount required = role == IdentityRole::Producer ? params.b_prod : params.d_stake;
    if (bond < required || bond == 0) return unexpected(RegistryError::InsufficientBond);

    IdentityRecord rec;
    rec.idcom = idcom;
    rec.verification_key = vk;
    rec.role = role;
    rec.bond = bond;
    rec.active = true;
    deposits_ += bond;
    records_.emplace(idcom, rec);
    return rec;
}

const IdentityRecord* Registry::find(const Digest& idcom) const {
    auto it = records_.find(idcom);
    return it == records_.end() ? nullptr : &it->second;
}

bool Registry::is_active(const Digest& idcom) const {
    const IdentityRecord* rec = find(idcom);
    return rec != nullptr && rec->active;
}

std::uint32_t Registry::quota_used(const Digest& idcom, SlotNumber slot) const {
    const IdentityRecord* rec = find(idcom);
    if (rec == nullptr) return 0;
    auto it = rec->per_slot_commit_count.find(slot);
    return it == rec->per_slot_commit_count.end() ? 0 : it->second;
}

bool Registry::has_quota(const Digest& idcom, SlotNumber slot,
                         const ProtocolParams& params) const {
    return is_active(idcom) && quota_used(idcom, slot) < params.quota_l;
}

Expected<std::uint32_t, RegistryError> Registry::consume_quota(const Digest& idcom,
                                                               SlotNumber slot,
                                                               const ProtocolParams& params) {
    auto it = records_.find(idcom);
    if (it == records_.end() || !it->second.active) return unexpected(RegistryError::NotRegistered);
    std::uint32_t& count = it->second.per_slot_commit_count[slot];
    if (count >= params.quota_l) return unexpected(RegistryError::QuotaExceeded);
    return ++count;
}

Expected<SlashEvent, RegistryError> Registry::slash(const Digest& idcom, const Rational& fraction,
                                                    SlashReason reason, SlotNumber slot) {
    auto it = records_.find(idcom);
    if (it == records_.end()) return unexpected(RegistryError::NotRegistered);
    if (!fraction.in_unit_interval()) return unexpected(RegistryError::InvalidFraction);

    IdentityRecord& rec = it->second;
    TokenAmount amount = floor_mul(fraction, rec.bond);
    rec.bond -= amount;
    slashed_ += amount;
    if (rec.bond == 0) rec.active = false;

    SlashEvent ev{idcom, slot, fraction, amount, reason};
    rec.slash_history.push_back(ev);
    return ev;
}

TokenAmount Registry::total_locked() const {
    TokenAmount sum = 0;
    for (const auto& [_, rec] : records_) sum += rec.bond;
    return sum;
}

void Registry::restore(std::vector<IdentityRecord> records, TokenAmount deposits) {
    records_.clear();
    slashed_ = 0;
    for (auto& rec : records) {
        for (const auto& ev : rec.slash_history) slashed_ += ev.amount;
        Digest id = rec.idcom;
        records_.emplace(id, std::move(rec));
    }
    deposits_ = deposits;
}

}  // namespace mevace
