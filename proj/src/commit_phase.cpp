#include "mevace/commit_phase.hpp"

#include "receipts_internal.hpp"

#include <sodium.h>

#include <algorithm>
#include <stdexcept>

namespace mevace {

Nonce random_nonce() {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialization failed");
    Nonce n;
    randombytes_buf(n.data(), n.size());
    return n;
}

Nonce DeterministicNonces::operator()() {
    return hash(ByteWriter{}.raw(seed_).u64be(counter_++).bytes());
}

CanonicalMessage commit_message(const Digest& idcom, const Digest& c, SlotNumber slot) {
    return CanonicalMessage{DomainTag::Commit, idcom, c, slot};
}

std::pair<Commitment, OpeningSecret> make_commitment(const SigningKey& key, const Digest& idcom,
                                                     Bytes tx, SlotNumber slot,
                                                     const NonceSource& nonces) {
    Nonce r = nonces();
    Digest c = commitment_hash(tx, r, idcom, slot);
    Signature sig = sign(key, encode_message(commit_message(idcom, c, slot)));
    return {Commitment{idcom, c, slot, std::move(sig)},
            OpeningSecret{std::move(tx), r, idcom, slot}};
}

std::string_view to_string(CommitError e) {
    switch (e) {
        case CommitError::NotRegistered: return "NotRegistered";
        case CommitError::BadSignature: return "BadSignature";
        case CommitError::QuotaExceeded: return "QuotaExceeded";
        case CommitError::PastCutoff: return "PastCutoff";
        case CommitError::WrongSlot: return "WrongSlot";
    }
    return "unknown";
}

Expected<CommitReceipt, CommitError> validator_check_commitment(const ValidatorKey& validator,
                                                                Registry& view,
                                                                const Commitment& commitment,
                                                                const SlotClock& clock,
                                                                const ProtocolParams& params) {
    if (commitment.slot != clock.slot) return unexpected(CommitError::WrongSlot);

    const IdentityRecord* rec = view.find(commitment.idcom);
    if (rec == nullptr || !rec->active) return unexpected(CommitError::NotRegistered);

    Bytes msg = encode_message(commit_message(commitment.idcom, commitment.c, commitment.slot));
    if (!verify(rec->verification_key, msg, commitment.user_sig)) {
        return unexpected(CommitError::BadSignature);
    }
    if (!view.has_quota(commitment.idcom, commitment.slot, params)) {
        return unexpected(CommitError::QuotaExceeded);
    }
    if (clock.now >= params.budget.commit_cutoff()) return unexpected(CommitError::PastCutoff);

    view.consume_quota(commitment.idcom, commitment.slot, params).value();
    return CommitReceipt{validator.id, sign(validator.signing_key, msg)};
}

Expected<CommitCertificate, CertificateError> aggregate_commit_certificate(
    const Commitment& commitment, const std::vector<CommitReceipt>& receipts,
    const ProtocolParams& params, const ValidatorSet& validators) {
    Bytes msg = encode_message(commit_message(commitment.idcom, commitment.c, commitment.slot));
    auto kept = detail::valid_distinct_receipts(receipts, msg, validators);
    if (kept.size() < params.q_c) return unexpected(CertificateError::InsufficientReceipts);
    return CommitCertificate{commitment, std::move(kept)};
}

bool verify_commit_certificate(const CommitCertificate& cert, const ProtocolParams& params,
                               const ValidatorSet& validators) {
    const Commitment& cm = cert.commitment;
    Bytes msg = encode_message(commit_message(cm.idcom, cm.c, cm.slot));
    return detail::receipts_meet_threshold(cert.receipts, msg, params.q_c, validators);
}

void encode_signature(ByteWriter& w, const Signature& sig) {
    if (sig.bytes.size() > 0xffff) throw std::length_error("signature too long");
    w.u8(static_cast<std::uint8_t>(sig.scheme))
        .u16be(static_cast<std::uint16_t>(sig.bytes.size()))
        .raw(sig.bytes);
}

Signature decode_signature(ByteReader& r) {
    Signature sig;
    std::uint8_t scheme_byte = r.u8();
    if (scheme_byte != static_cast<std::uint8_t>(SchemeId::MockDeterministic) &&
        scheme_byte != static_cast<std::uint8_t>(SchemeId::Ed25519)) {
        throw ByteReader::DecodeError("unknown signature scheme");
    }
    sig.scheme = static_cast<SchemeId>(scheme_byte);
    sig.bytes = r.raw(r.u16be());
    return sig;
}

void encode_certificate(ByteWriter& w, const CommitCertificate& cert) {
    const Commitment& cm = cert.commitment;
    w.raw(cm.idcom).raw(cm.c).u64be(cm.slot.value);
    encode_signature(w, cm.user_sig);
    w.u16be(static_cast<std::uint16_t>(cert.receipts.size()));
    for (const auto& rc : cert.receipts) {
        w.u32be(rc.validator_id);
        encode_signature(w, rc.sig);
    }
}

Bytes encode_certificate(const CommitCertificate& cert) {
    ByteWriter w;
    encode_certificate(w, cert);
    return std::move(w).take();
}

CommitCertificate decode_certificate(ByteReader& r) {
    CommitCertificate cert;
    cert.commitment.idcom = r.fixed<32>();
    cert.commitment.c = r.fixed<32>();
    cert.commitment.slot = SlotNumber{r.u64be()};
    cert.commitment.user_sig = decode_signature(r);
    std::uint16_t count = r.u16be();
    for (std::uint16_t i = 0; i < count; ++i) {
        CommitReceipt rc;
        rc.validator_id = r.u32be();
        rc.sig = decode_signature(r);
        cert.receipts.push_back(std::move(rc));
    }
    return cert;
}

}  // namespace mevace
