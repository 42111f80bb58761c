#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "mevace/commit_phase.hpp"

namespace mevace::detail {

/// Keeps receipts whose validator is known, not yet seen, and whose signature
/// verifies over `msg`. Result is sorted by validator id.
template <DomainTag Tag>
std::vector<Receipt<Tag>> valid_distinct_receipts(const std::vector<Receipt<Tag>>& receipts,
                                                  const Bytes& msg,
                                                  const ValidatorSet& validators) {
    std::vector<Receipt<Tag>> kept;
    std::set<ValidatorId> seen;
    for (const auto& rc : receipts) {
        const VerificationKey* vk = validators.key(rc.validator_id);
        if (vk == nullptr || seen.contains(rc.validator_id)) continue;
        if (!verify(*vk, msg, rc.sig)) continue;
        seen.insert(rc.validator_id);
        kept.push_back(rc);
    }
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.validator_id < b.validator_id; });
    return kept;
}

template <DomainTag Tag>
bool receipts_meet_threshold(const std::vector<Receipt<Tag>>& receipts, const Bytes& msg,
                             std::uint32_t threshold, const ValidatorSet& validators) {
    if (receipts.size() < threshold) return false;
    for (std::size_t i = 0; i < receipts.size(); ++i) {
        const auto& rc = receipts[i];
        if (i > 0 && receipts[i - 1].validator_id >= rc.validator_id) return false;
        const VerificationKey* vk = validators.key(rc.validator_id);
        if (vk == nullptr || !verify(*vk, msg, rc.sig)) return false;
    }
    return true;
}

}  // namespace mevace::detail
