#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mevace/commit_phase.hpp"
#include "mevace/identity.hpp"
#include "mevace/open_phase.hpp"
#include "mevace/ordering.hpp"
#include "mevace/vdf.hpp"

namespace mevace {

/// A block proposal carries the full certified sets, not Merkle openings.
struct Block {
    SlotNumber slot;
    Digest prev_block_hash;
    OrderingBundle bundle;
    AdmissibleSet admissible;
    std::vector<OpenCertificate> open_certs;
    ExecutionList execution_list;
    /// Entries charged with a non-opening penalty by this block.
    std::vector<CommitRef> penalized;
    Digest producer_id;

    bool operator==(const Block&) const = default;
};

/// H(0x03 | slot(8) | prev(32) | set_root(32) | seed(32) | H(execution list)).
Digest block_hash(const Block& block);

enum class OmissionKind : std::uint8_t {
    CommitOmission = 0x01,
    ExecutionOmission = 0x02,
};

std::string_view to_string(OmissionKind k);

struct OmissionProof {
    OmissionKind kind = OmissionKind::CommitOmission;
    CommitCertificate commit_cert;
    std::optional<OpenCertificate> opening;

    bool operator==(const OmissionProof&) const = default;
};

enum class ProofError {
    MalformedCombination,
    InvalidCommitCertificate,
    InvalidOpenCertificate,
    OpeningMismatch,
};

std::string_view to_string(ProofError e);

Expected<OmissionProof, ProofError> make_omission_proof(OmissionKind kind,
                                                        const CommitCertificate& commit_cert,
                                                        const std::optional<OpenCertificate>& opening,
                                                        const ProtocolParams& params,
                                                        const ValidatorSet& validators);

/// Commit omission holds iff the certificate verifies and (idcom, c) is not
/// in the block's admissible set. Execution omission holds iff both
/// certificates verify and agree, the entry is admissible, and the block does
/// not execute its transaction.
bool verify_omission_proof(const OmissionProof& proof, const Block& block,
                           const ProtocolParams& params, const ValidatorSet& validators);

/// version(1) = 0x01 | kind(1) | commit certificate | has_opening(1) | [open certificate]
Bytes encode_omission_proof(const OmissionProof& proof);
/// Throws ByteReader::DecodeError on malformed or trailing input.
OmissionProof decode_omission_proof(ByteView data);

enum class Violation : std::uint8_t {
    BadOrdering,
    CommitOmitted,
    ExecutionOmitted,
    ExtraEntry,
    BadCertificate,
    WrongPenalties,
};

std::string_view to_string(Violation v);

struct BlockVerdict {
    bool valid = true;
    std::vector<Violation> violations;  // sorted, distinct

    bool operator==(const BlockVerdict&) const = default;
};

BlockVerdict verify_block(const Block& block, const Digest& prev_block_hash,
                          const ProtocolParams& params, const ValidatorSet& validators,
                          std::span<const OmissionProof> pending_proofs,
                          const VerifiableDelayFunction& vdf);

/// Slashes delta_prod of the producer's current bond when the verdict is
/// invalid; nothing otherwise.
std::optional<SlashEvent> slash_producer(Registry& registry, const Digest& producer_id,
                                         const ProtocolParams& params, const BlockVerdict& verdict,
                                         SlotNumber slot);

}  // namespace mevace
