#include "mevace/ordering.hpp"

#include <algorithm>
#include <numeric>

namespace mevace {

namespace {

bool key_less(const CommitCertificate& a, const CommitCertificate& b) {
    const auto& ca = a.commitment;
    const auto& cb = b.commitment;
    if (ca.idcom != cb.idcom) return ca.idcom < cb.idcom;
    return ca.c < cb.c;
}

bool same_key(const CommitCertificate& a, const CommitCertificate& b) {
    return a.commitment.idcom == b.commitment.idcom && a.commitment.c == b.commitment.c;
}

/// Word stream over H(seed | k) blocks.
class SeedStream {
public:
    explicit SeedStream(const Digest& seed) : seed_(seed) {}

    std::uint64_t next() {
        if (word_ == 4) {
            block_ = hash(ByteWriter{}.raw(seed_).u64be(counter_++).bytes());
            word_ = 0;
        }
        std::uint64_t w = 0;
        for (int b = 0; b < 8; ++b) w = (w << 8) | block_[word_ * 8 + b];
        ++word_;
        return w;
    }

private:
    Digest seed_;
    Digest block_;
    std::uint64_t counter_ = 0;
    int word_ = 4;
};

std::uint64_t uniform_below(SeedStream& stream, std::uint64_t bound) {
    // 2^64 mod bound, computed in 64-bit arithmetic.
    const std::uint64_t excess = (0 - bound) % bound;
    for (;;) {
        std::uint64_t w = stream.next();
        if (excess == 0 || w < 0 - excess) return w % bound;
    }
}

}  // namespace

std::optional<std::size_t> AdmissibleSet::find(const Digest& idcom, const Digest& c) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{idcom, c},
                               [](const CommitCertificate& e, const std::pair<Digest, Digest>& k) {
                                   const auto& cm = e.commitment;
                                   if (cm.idcom != k.first) return cm.idcom < k.first;
                                   return cm.c < k.second;
                               });
    if (it == entries.end() || it->commitment.idcom != idcom || it->commitment.c != c) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - entries.begin());
}

bool Permutation::is_bijection() const {
    std::vector<bool> seen(mapping.size(), false);
    for (auto v : mapping) {
        if (v >= mapping.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Expected<AdmissibleSet, OrderingError> canonicalize(std::vector<CommitCertificate> certificates,
                                                    SlotNumber slot) {
    for (auto& cert : certificates) {
        if (cert.commitment.slot != slot) return unexpected(OrderingError::WrongSlot);
        std::sort(cert.receipts.begin(), cert.receipts.end(),
                  [](const auto& a, const auto& b) { return a.validator_id < b.validator_id; });
    }

    std::vector<std::pair<Bytes, CommitCertificate>> keyed;
    keyed.reserve(certificates.size());
    for (auto& cert : certificates) keyed.emplace_back(encode_certificate(cert), std::move(cert));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (!same_key(a.second, b.second)) return key_less(a.second, b.second);
        return a.first < b.first;
    });

    AdmissibleSet out{slot, {}};
    for (auto& [_, cert] : keyed) {
        if (!out.entries.empty() && same_key(out.entries.back(), cert)) continue;
        out.entries.push_back(std::move(cert));
    }
    return out;
}

bool is_canonical(const AdmissibleSet& set) {
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        if (set.entries[i].commitment.slot != set.slot) return false;
        if (i > 0 && !key_less(set.entries[i - 1], set.entries[i])) return false;
    }
    return true;
}

Digest admissible_root(const AdmissibleSet& set) {
    std::vector<Bytes> leaves;
    leaves.reserve(set.entries.size());
    for (const auto& cert : set.entries) leaves.push_back(encode_certificate(cert));
    return merkle_root(leaves);
}

Digest derive_vdf_input(const Digest& prev_block_hash, const Digest& set_root, SlotNumber slot) {
    return hash(ByteWriter{}.raw(prev_block_hash).raw(set_root).u64be(slot.value).bytes());
}

Permutation derive_permutation(const Digest& seed, std::size_t m) {
    Permutation p;
    p.mapping.resize(m);
    std::iota(p.mapping.begin(), p.mapping.end(), 0u);
    SeedStream stream(seed);
    for (std::size_t i = m; i-- > 1;) {
        std::size_t j = uniform_below(stream, i + 1);
        std::swap(p.mapping[i], p.mapping[j]);
    }
    return p;
}

OrderingBundle produce_ordering(const AdmissibleSet& admissible, const Digest& prev_block_hash,
                                const VerifiableDelayFunction& vdf) {
    OrderingBundle b;
    b.set_root = admissible_root(admissible);
    b.vdf_input = derive_vdf_input(prev_block_hash, b.set_root, admissible.slot);
    VdfOutput out = vdf.eval(b.vdf_input);
    b.seed = out.y;
    b.vdf_proof = std::move(out.proof);
    b.permutation = derive_permutation(b.seed, admissible.size());
    return b;
}

std::string_view to_string(OrderingCheck c) {
    switch (c) {
        case OrderingCheck::Ok: return "ok";
        case OrderingCheck::RootMismatch: return "root_mismatch";
        case OrderingCheck::InputMismatch: return "input_mismatch";
        case OrderingCheck::VdfRejected: return "vdf_rejected";
        case OrderingCheck::PermutationMismatch: return "permutation_mismatch";
    }
    return "unknown";
}

OrderingCheck verify_ordering(const OrderingBundle& bundle, const AdmissibleSet& admissible,
                              const Digest& prev_block_hash, const VerifiableDelayFunction& vdf) {
    if (bundle.set_root != admissible_root(admissible)) return OrderingCheck::RootMismatch;
    if (bundle.vdf_input != derive_vdf_input(prev_block_hash, bundle.set_root, admissible.slot)) {
        return OrderingCheck::InputMismatch;
    }
    if (!vdf.verify(bundle.vdf_input, VdfOutput{bundle.seed, bundle.vdf_proof})) {
        return OrderingCheck::VdfRejected;
    }
    if (bundle.permutation != derive_permutation(bundle.seed, admissible.size())) {
        return OrderingCheck::PermutationMismatch;
    }
    return OrderingCheck::Ok;
}

}  // namespace mevace
