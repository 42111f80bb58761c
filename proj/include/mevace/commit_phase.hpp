#pragma once

#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "mevace/codec.hpp"
#include "mevace/expected.hpp"
#include "mevace/identity.hpp"
#include "mevace/params.hpp"
#include "mevace/signatures.hpp"

namespace mevace {

struct Commitment {
    Digest idcom;
    Digest c;
    SlotNumber slot;
    Signature user_sig;

    bool operator==(const Commitment&) const = default;
};

/// Kept locally by the committing user until the open phase.
struct OpeningSecret {
    Bytes tx;
    Nonce r;
    Digest idcom;
    SlotNumber slot;

    bool operator==(const OpeningSecret&) const = default;
};

/// Validator receipt over a canonical message with domain `Tag`.
template <DomainTag Tag>
struct Receipt {
    ValidatorId validator_id = 0;
    Signature sig;

    bool operator==(const Receipt&) const = default;
};

using CommitReceipt = Receipt<DomainTag::Commit>;
using OpenReceipt = Receipt<DomainTag::Open>;

/// Receipts are sorted by validator id with no duplicates.
struct CommitCertificate {
    Commitment commitment;
    std::vector<CommitReceipt> receipts;

    bool operator==(const CommitCertificate&) const = default;
};

using NonceSource = std::function<Nonce()>;

/// Fresh nonces from the OS CSPRNG.
Nonce random_nonce();

/// Reproducible nonce stream: nonce_k = H(seed | k(8)).
class DeterministicNonces {
public:
    explicit DeterministicNonces(const Digest& seed) : seed_(seed) {}
    Nonce operator()();

private:
    Digest seed_;
    std::uint64_t counter_ = 0;
};

CanonicalMessage commit_message(const Digest& idcom, const Digest& c, SlotNumber slot);

std::pair<Commitment, OpeningSecret> make_commitment(const SigningKey& key, const Digest& idcom,
                                                     Bytes tx, SlotNumber slot,
                                                     const NonceSource& nonces);

/// Reading of the validator's local slot clock.
struct SlotClock {
    SlotNumber slot;
    Tick now = 0;
};

enum class CommitError {
    NotRegistered,
    BadSignature,
    QuotaExceeded,
    PastCutoff,
    WrongSlot,
};

std::string_view to_string(CommitError e);

/// Checks, in order: registered and active, user signature, quota, strictly
/// before the commit cutoff. WrongSlot precedes them all. On success the
/// quota is consumed in `view` and a receipt is signed.
Expected<CommitReceipt, CommitError> validator_check_commitment(const ValidatorKey& validator,
                                                                Registry& view,
                                                                const Commitment& commitment,
                                                                const SlotClock& clock,
                                                                const ProtocolParams& params);

enum class CertificateError {
    InsufficientReceipts,
};

/// Drops receipts that do not verify or repeat a validator id, then requires
/// at least q_c survivors.
Expected<CommitCertificate, CertificateError> aggregate_commit_certificate(
    const Commitment& commitment, const std::vector<CommitReceipt>& receipts,
    const ProtocolParams& params, const ValidatorSet& validators);

/// Strict check: receipts sorted, distinct, all verifying, count >= q_c.
bool verify_commit_certificate(const CommitCertificate& cert, const ProtocolParams& params,
                               const ValidatorSet& validators);

// Signature encoding: scheme(1) | len(2) | bytes.
void encode_signature(ByteWriter& w, const Signature& sig);
Signature decode_signature(ByteReader& r);

/// idcom(32) | c(32) | slot(8) | user_sig | count(2) | { validator_id(4) | sig }*
Bytes encode_certificate(const CommitCertificate& cert);
void encode_certificate(ByteWriter& w, const CommitCertificate& cert);
CommitCertificate decode_certificate(ByteReader& r);

}  // namespace mevace
