#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mevace/commit_phase.hpp"
#include "mevace/expected.hpp"
#include "mevace/vdf.hpp"

namespace mevace {

/// Certified commitments for one slot, sorted by (idcom, c) bytes, unique.
struct AdmissibleSet {
    SlotNumber slot;
    std::vector<CommitCertificate> entries;

    std::size_t size() const { return entries.size(); }
    std::optional<std::size_t> find(const Digest& idcom, const Digest& c) const;

    bool operator==(const AdmissibleSet&) const = default;
};

/// mapping[p] is the admissible-set index executed at position p.
struct Permutation {
    std::vector<std::uint32_t> mapping;

    std::size_t size() const { return mapping.size(); }
    bool is_bijection() const;

    bool operator==(const Permutation&) const = default;
};

struct OrderingBundle {
    Digest set_root;
    Digest vdf_input;
    Digest seed;
    std::vector<Digest> vdf_proof;
    Permutation permutation;

    bool operator==(const OrderingBundle&) const = default;
};

enum class OrderingError {
    WrongSlot,
};

/// Sorts by (idcom, c) and removes duplicates. Among duplicates the entry
/// with the smallest canonical encoding (receipts sorted) is kept.
Expected<AdmissibleSet, OrderingError> canonicalize(std::vector<CommitCertificate> certificates,
                                                    SlotNumber slot);

bool is_canonical(const AdmissibleSet& set);

/// Merkle root over the canonical certificate encodings.
Digest admissible_root(const AdmissibleSet& set);

/// H(prev(32) | root(32) | slot(8)).
Digest derive_vdf_input(const Digest& prev_block_hash, const Digest& set_root, SlotNumber slot);

/// Seeded Fisher-Yates. For i = m-1 down to 1, j is drawn uniformly from
/// [0, i] and positions i and j are swapped. Draws come from 8-byte big-endian
/// words of block_k = H(seed | k(8)), k = 0, 1, ..., four words per block.
/// A word w is rejected when w >= floor(2^64 / (i+1)) * (i+1); otherwise
/// j = w mod (i+1).
Permutation derive_permutation(const Digest& seed, std::size_t m);

OrderingBundle produce_ordering(const AdmissibleSet& admissible, const Digest& prev_block_hash,
                                const VerifiableDelayFunction& vdf);

enum class OrderingCheck {
    Ok,
    RootMismatch,
    InputMismatch,
    VdfRejected,
    PermutationMismatch,
};

std::string_view to_string(OrderingCheck c);

OrderingCheck verify_ordering(const OrderingBundle& bundle, const AdmissibleSet& admissible,
                              const Digest& prev_block_hash, const VerifiableDelayFunction& vdf);

}  // namespace mevace
