#include "mevace/open_phase.hpp"

#include <algorithm>
#include <map>

#include "receipts_internal.hpp"

namespace mevace {

CanonicalMessage open_message(const Digest& idcom, const Digest& c, SlotNumber slot) {
    return CanonicalMessage{DomainTag::Open, idcom, c, slot};
}

std::string_view to_string(OpenError e) {
    switch (e) {
        case OpenError::NoMatchingCommitment: return "NoMatchingCommitment";
        case OpenError::HashMismatch: return "HashMismatch";
        case OpenError::PastCutoff: return "PastCutoff";
        case OpenError::WindowNotOpen: return "WindowNotOpen";
        case OpenError::IdentityInactive: return "IdentityInactive";
    }
    return "unknown";
}

std::string_view to_string(ExecutionError e) {
    switch (e) {
        case ExecutionError::UnknownEntry: return "UnknownEntry";
        case ExecutionError::PermutationSizeMismatch: return "PermutationSizeMismatch";
    }
    return "unknown";
}

Expected<OpenReceipt, OpenError> validator_check_opening(const ValidatorKey& validator,
                                                         const Registry& view,
                                                         const AdmissibleSet& admissible,
                                                         const OpeningSecret& secret,
                                                         const SlotClock& clock,
                                                         const ProtocolParams& params) {
    if (clock.now >= params.budget.open_cutoff()) return unexpected(OpenError::PastCutoff);
    if (clock.now < params.budget.open_start()) return unexpected(OpenError::WindowNotOpen);

    if (admissible.slot != secret.slot) return unexpected(OpenError::NoMatchingCommitment);
    bool any = std::any_of(admissible.entries.begin(), admissible.entries.end(),
                           [&](const CommitCertificate& e) {
                               return e.commitment.idcom == secret.idcom;
                           });
    if (!any) return unexpected(OpenError::NoMatchingCommitment);

    Digest c = commitment_hash(secret.tx, secret.r, secret.idcom, secret.slot);
    if (!admissible.find(secret.idcom, c)) return unexpected(OpenError::HashMismatch);

    if (!view.is_active(secret.idcom)) return unexpected(OpenError::IdentityInactive);

    Bytes msg = encode_message(open_message(secret.idcom, c, secret.slot));
    return OpenReceipt{validator.id, sign(validator.signing_key, msg)};
}

Expected<OpenCertificate, CertificateError> aggregate_open_certificate(
    const OpeningSecret& secret, const std::vector<OpenReceipt>& receipts,
    const ProtocolParams& params, const ValidatorSet& validators) {
    Digest c = commitment_hash(secret.tx, secret.r, secret.idcom, secret.slot);
    Bytes msg = encode_message(open_message(secret.idcom, c, secret.slot));
    auto kept = detail::valid_distinct_receipts(receipts, msg, validators);
    if (kept.size() < params.q_o) return unexpected(CertificateError::InsufficientReceipts);
    return OpenCertificate{secret, CommitRef{secret.idcom, c, secret.slot}, std::move(kept)};
}

bool verify_open_certificate(const OpenCertificate& cert, const ProtocolParams& params,
                             const ValidatorSet& validators) {
    const auto& s = cert.secret;
    const auto& ref = cert.commit_ref;
    if (ref.idcom != s.idcom || ref.slot != s.slot) return false;
    if (commitment_hash(s.tx, s.r, s.idcom, s.slot) != ref.c) return false;
    Bytes msg = encode_message(open_message(ref.idcom, ref.c, ref.slot));
    return detail::receipts_meet_threshold(cert.receipts, msg, params.q_o, validators);
}

void encode_open_certificate(ByteWriter& w, const OpenCertificate& cert) {
    const auto& s = cert.secret;
    w.u64be(s.tx.size()).raw(s.tx).raw(s.r).raw(s.idcom).u64be(s.slot.value);
    w.raw(cert.commit_ref.c);
    w.u16be(static_cast<std::uint16_t>(cert.receipts.size()));
    for (const auto& rc : cert.receipts) {
        w.u32be(rc.validator_id);
        encode_signature(w, rc.sig);
    }
}

OpenCertificate decode_open_certificate(ByteReader& r) {
    OpenCertificate cert;
    std::uint64_t len = r.u64be();
    if (len > r.remaining()) throw ByteReader::DecodeError("transaction length exceeds input");
    cert.secret.tx = r.raw(static_cast<std::size_t>(len));
    cert.secret.r = r.fixed<32>();
    cert.secret.idcom = r.fixed<32>();
    cert.secret.slot = SlotNumber{r.u64be()};
    cert.commit_ref = CommitRef{cert.secret.idcom, r.fixed<32>(), cert.secret.slot};
    std::uint16_t count = r.u16be();
    for (std::uint16_t i = 0; i < count; ++i) {
        OpenReceipt rc;
        rc.validator_id = r.u32be();
        rc.sig = decode_signature(r);
        cert.receipts.push_back(std::move(rc));
    }
    return cert;
}

Expected<ExecutionList, ExecutionError> build_execution_list(
    const OrderingBundle& bundle, const AdmissibleSet& admissible,
    std::span<const OpenCertificate> open_certs, const ProtocolParams& params,
    const ValidatorSet& validators) {
    if (bundle.permutation.size() != admissible.size() || !bundle.permutation.is_bijection()) {
        return unexpected(ExecutionError::PermutationSizeMismatch);
    }

    std::map<std::size_t, const OpenCertificate*> opened;
    for (const auto& oc : open_certs) {
        if (oc.commit_ref.slot != admissible.slot) return unexpected(ExecutionError::UnknownEntry);
        auto idx = admissible.find(oc.commit_ref.idcom, oc.commit_ref.c);
        if (!idx) return unexpected(ExecutionError::UnknownEntry);
        if (opened.contains(*idx)) continue;
        if (verify_open_certificate(oc, params, validators)) opened.emplace(*idx, &oc);
    }

    ExecutionList list{admissible.slot, {}, {}};
    const auto& mapping = bundle.permutation.mapping;
    for (std::uint32_t pos = 0; pos < mapping.size(); ++pos) {
        std::uint32_t entry = mapping[pos];
        const Commitment& cm = admissible.entries[entry].commitment;
        if (auto it = opened.find(entry); it != opened.end()) {
            list.ordered_txs.push_back(ExecutedTx{pos, entry, it->second->secret.tx, cm.idcom});
        } else {
            list.skipped.push_back(SkippedEntry{pos, entry, cm.idcom, cm.c});
        }
    }
    return list;
}

std::vector<SlashEvent> apply_non_opening_penalties(Registry& registry,
                                                    const ExecutionList& execution,
                                                    const ProtocolParams& params) {
    std::vector<SkippedEntry> skipped = execution.skipped;
    std::sort(skipped.begin(), skipped.end(),
              [](const auto& a, const auto& b) { return a.entry < b.entry; });

    std::vector<SlashEvent> events;
    for (const auto& s : skipped) {
        auto ev = registry.slash(s.idcom, params.delta_user, SlashReason::NonOpening,
                                 execution.slot);
        if (ev) events.push_back(*ev);
    }
    return events;
}

}  // namespace mevace
