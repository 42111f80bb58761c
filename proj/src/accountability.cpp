#include "mevace/accountability.hpp"

#include <algorithm>
#include <set>

namespace mevace {

Digest block_hash(const Block& block) {
    ByteWriter ex;
    ex.u32be(static_cast<std::uint32_t>(block.execution_list.ordered_txs.size()));
    for (const auto& t : block.execution_list.ordered_txs) {
        ex.u32be(t.position).u32be(t.entry).u64be(t.tx.size()).raw(t.tx);
    }
    return hash(ByteWriter{}
                    .u8(0x03)
                    .u64be(block.slot.value)
                    .raw(block.prev_block_hash)
                    .raw(block.bundle.set_root)
                    .raw(block.bundle.seed)
                    .raw(hash(ex.bytes()))
                    .bytes());
}

std::string_view to_string(OmissionKind k) {
    switch (k) {
        case OmissionKind::CommitOmission: return "commit_omission";
        case OmissionKind::ExecutionOmission: return "execution_omission";
    }
    return "unknown";
}

std::string_view to_string(ProofError e) {
    switch (e) {
        case ProofError::MalformedCombination: return "MalformedCombination";
        case ProofError::InvalidCommitCertificate: return "InvalidCommitCertificate";
        case ProofError::InvalidOpenCertificate: return "InvalidOpenCertificate";
        case ProofError::OpeningMismatch: return "OpeningMismatch";
    }
    return "unknown";
}

std::string_view to_string(Violation v) {
    switch (v) {
        case Violation::BadOrdering: return "BadOrdering";
        case Violation::CommitOmitted: return "CommitOmitted";
        case Violation::ExecutionOmitted: return "ExecutionOmitted";
        case Violation::ExtraEntry: return "ExtraEntry";
        case Violation::BadCertificate: return "BadCertificate";
        case Violation::WrongPenalties: return "WrongPenalties";
    }
    return "unknown";
}

namespace {

bool opening_matches(const OpenCertificate& oc, const CommitCertificate& cc) {
    const Commitment& cm = cc.commitment;
    return oc.commit_ref == CommitRef{cm.idcom, cm.c, cm.slot};
}

}  // namespace

Expected<OmissionProof, ProofError> make_omission_proof(OmissionKind kind,
                                                        const CommitCertificate& commit_cert,
                                                        const std::optional<OpenCertificate>& opening,
                                                        const ProtocolParams& params,
                                                        const ValidatorSet& validators) {
    if ((kind == OmissionKind::CommitOmission) == opening.has_value()) {
        return unexpected(ProofError::MalformedCombination);
    }
    if (!verify_commit_certificate(commit_cert, params, validators)) {
        return unexpected(ProofError::InvalidCommitCertificate);
    }
    if (opening) {
        if (!verify_open_certificate(*opening, params, validators)) {
            return unexpected(ProofError::InvalidOpenCertificate);
        }
        if (!opening_matches(*opening, commit_cert)) return unexpected(ProofError::OpeningMismatch);
    }
    return OmissionProof{kind, commit_cert, opening};
}

bool verify_omission_proof(const OmissionProof& proof, const Block& block,
                           const ProtocolParams& params, const ValidatorSet& validators) {
    const Commitment& cm = proof.commit_cert.commitment;
    if (cm.slot != block.slot) return false;
    if (!verify_commit_certificate(proof.commit_cert, params, validators)) return false;
    auto entry = block.admissible.find(cm.idcom, cm.c);

    switch (proof.kind) {
        case OmissionKind::CommitOmission:
            return !proof.opening && !entry;
        case OmissionKind::ExecutionOmission: {
            if (!proof.opening || !entry) return false;
            const OpenCertificate& oc = *proof.opening;
            if (!opening_matches(oc, proof.commit_cert)) return false;
            if (!verify_open_certificate(oc, params, validators)) return false;
            const auto& txs = block.execution_list.ordered_txs;
            return std::none_of(txs.begin(), txs.end(), [&](const ExecutedTx& t) {
                return t.entry == *entry && t.idcom == cm.idcom && t.tx == oc.secret.tx;
            });
        }
    }
    return false;
}

Bytes encode_omission_proof(const OmissionProof& proof) {
    ByteWriter w;
    w.u8(0x01).u8(static_cast<std::uint8_t>(proof.kind));
    encode_certificate(w, proof.commit_cert);
    w.u8(proof.opening ? 1 : 0);
    if (proof.opening) encode_open_certificate(w, *proof.opening);
    return std::move(w).take();
}

OmissionProof decode_omission_proof(ByteView data) {
    ByteReader r(data);
    if (r.u8() != 0x01) throw ByteReader::DecodeError("unsupported omission proof version");
    OmissionProof proof;
    std::uint8_t kind = r.u8();
    if (kind != 0x01 && kind != 0x02) throw ByteReader::DecodeError("unknown omission kind");
    proof.kind = static_cast<OmissionKind>(kind);
    proof.commit_cert = decode_certificate(r);
    std::uint8_t has_opening = r.u8();
    if (has_opening > 1) throw ByteReader::DecodeError("bad opening flag");
    if (has_opening) proof.opening = decode_open_certificate(r);
    if (!r.at_end()) throw ByteReader::DecodeError("trailing bytes after omission proof");
    return proof;
}

BlockVerdict verify_block(const Block& block, const Digest& prev_block_hash,
                          const ProtocolParams& params, const ValidatorSet& validators,
                          std::span<const OmissionProof> pending_proofs,
                          const VerifiableDelayFunction& vdf) {
    std::set<Violation> found;
    const AdmissibleSet& adm = block.admissible;

    // 1. certificates
    if (block.slot != adm.slot || block.execution_list.slot != block.slot) {
        found.insert(Violation::BadCertificate);
    }
    for (const auto& cert : adm.entries) {
        if (!verify_commit_certificate(cert, params, validators)) {
            found.insert(Violation::BadCertificate);
        }
    }
    for (const auto& oc : block.open_certs) {
        if (!verify_open_certificate(oc, params, validators)) found.insert(Violation::BadCertificate);
    }

    // 2-3. canonical set and ordering material
    if (!is_canonical(adm) || block.prev_block_hash != prev_block_hash) {
        found.insert(Violation::BadOrdering);
    }
    if (verify_ordering(block.bundle, adm, prev_block_hash, vdf) != OrderingCheck::Ok) {
        found.insert(Violation::BadOrdering);
    }

    // 4. execution list against bundle and presented openings
    auto expected = build_execution_list(block.bundle, adm, block.open_certs, params, validators);
    const ExecutionList& got = block.execution_list;
    if (!expected) {
        found.insert(expected.error() == ExecutionError::UnknownEntry ? Violation::ExtraEntry
                                                                      : Violation::BadOrdering);
    } else if (*expected != got) {
        using Key = std::pair<std::uint32_t, Bytes>;
        std::set<Key> want, have;
        for (const auto& t : expected->ordered_txs) want.emplace(t.entry, t.tx);
        for (const auto& t : got.ordered_txs) have.emplace(t.entry, t.tx);
        bool missing = std::any_of(want.begin(), want.end(),
                                   [&](const Key& k) { return !have.contains(k); });
        bool extra = std::any_of(have.begin(), have.end(),
                                 [&](const Key& k) { return !want.contains(k); });
        if (missing) found.insert(Violation::ExecutionOmitted);
        if (extra) found.insert(Violation::ExtraEntry);
        if (!missing && !extra) found.insert(Violation::BadOrdering);
    }

    // 5. pending omission proofs
    for (const auto& proof : pending_proofs) {
        if (!verify_omission_proof(proof, block, params, validators)) continue;
        found.insert(proof.kind == OmissionKind::CommitOmission ? Violation::CommitOmitted
                                                                : Violation::ExecutionOmitted);
    }

    // 6. penalties must cover exactly the skipped entries
    std::vector<CommitRef> charged = block.penalized;
    std::vector<CommitRef> owed;
    for (const auto& s : got.skipped) owed.push_back(CommitRef{s.idcom, s.c, got.slot});
    std::sort(charged.begin(), charged.end());
    std::sort(owed.begin(), owed.end());
    if (charged != owed) found.insert(Violation::WrongPenalties);

    BlockVerdict verdict;
    verdict.violations.assign(found.begin(), found.end());
    verdict.valid = verdict.violations.empty();
    return verdict;
}

std::optional<SlashEvent> slash_producer(Registry& registry, const Digest& producer_id,
                                         const ProtocolParams& params, const BlockVerdict& verdict,
                                         SlotNumber slot) {
    if (verdict.valid) return std::nullopt;
    auto ev = registry.slash(producer_id, params.delta_prod, SlashReason::ProducerInvalidBlock, slot);
    if (!ev) return std::nullopt;
    return *ev;
}

}  // namespace mevace
