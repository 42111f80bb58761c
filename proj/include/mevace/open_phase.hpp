#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mevace/commit_phase.hpp"
#include "mevace/identity.hpp"
#include "mevace/ordering.hpp"

namespace mevace {

struct CommitRef {
    Digest idcom;
    Digest c;
    SlotNumber slot;

    bool operator==(const CommitRef&) const = default;
    auto operator<=>(const CommitRef&) const = default;
};

/// Receipts sorted by validator id with no duplicates.
struct OpenCertificate {
    OpeningSecret secret;
    CommitRef commit_ref;
    std::vector<OpenReceipt> receipts;

    bool operator==(const OpenCertificate&) const = default;
};

CanonicalMessage open_message(const Digest& idcom, const Digest& c, SlotNumber slot);

enum class OpenError {
    NoMatchingCommitment,
    HashMismatch,
    PastCutoff,
    WindowNotOpen,
    IdentityInactive,
};

std::string_view to_string(OpenError e);

/// Checks, in order: opening window [open_start, open_cutoff), an admissible
/// entry for (idcom, slot) exists, the recomputed commitment hash matches one
/// of them, the identity is still active. Signs an opening receipt on success.
Expected<OpenReceipt, OpenError> validator_check_opening(const ValidatorKey& validator,
                                                         const Registry& view,
                                                         const AdmissibleSet& admissible,
                                                         const OpeningSecret& secret,
                                                         const SlotClock& clock,
                                                         const ProtocolParams& params);

Expected<OpenCertificate, CertificateError> aggregate_open_certificate(
    const OpeningSecret& secret, const std::vector<OpenReceipt>& receipts,
    const ProtocolParams& params, const ValidatorSet& validators);

/// Receipts sorted, distinct, verifying, count >= q_o, and the secret hashes
/// to commit_ref.c.
bool verify_open_certificate(const OpenCertificate& cert, const ProtocolParams& params,
                             const ValidatorSet& validators);

/// txlen(8) | tx | r(32) | idcom(32) | slot(8) | c(32) | count(2) | { id(4) | sig }*
void encode_open_certificate(ByteWriter& w, const OpenCertificate& cert);
OpenCertificate decode_open_certificate(ByteReader& r);

struct ExecutedTx {
    std::uint32_t position = 0;  // index into the permutation
    std::uint32_t entry = 0;     // admissible-set index
    Bytes tx;
    Digest idcom;

    bool operator==(const ExecutedTx&) const = default;
};

struct SkippedEntry {
    std::uint32_t position = 0;
    std::uint32_t entry = 0;
    Digest idcom;
    Digest c;

    bool operator==(const SkippedEntry&) const = default;
};

struct ExecutionList {
    SlotNumber slot;
    std::vector<ExecutedTx> ordered_txs;
    std::vector<SkippedEntry> skipped;

    bool operator==(const ExecutionList&) const = default;
};

enum class ExecutionError {
    UnknownEntry,
    PermutationSizeMismatch,
};

std::string_view to_string(ExecutionError e);

/// Walks the permutation; entries with a valid opening certificate are
/// executed, the rest are skipped. Certificates that fail verification count
/// as absent; a certificate naming an entry outside `admissible` is an error.
Expected<ExecutionList, ExecutionError> build_execution_list(
    const OrderingBundle& bundle, const AdmissibleSet& admissible,
    std::span<const OpenCertificate> open_certs, const ProtocolParams& params,
    const ValidatorSet& validators);

/// One delta_user slash per skipped entry, applied in admissible-set order.
std::vector<SlashEvent> apply_non_opening_penalties(Registry& registry,
                                                    const ExecutionList& execution,
                                                    const ProtocolParams& params);

}  // namespace mevace
