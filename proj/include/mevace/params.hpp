#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mevace/signatures.hpp"

namespace mevace {

/// Token amounts are exact integers.
using TokenAmount = std::uint64_t;
/// Abstract slot-relative time in integer ticks.
using Tick = std::int64_t;
using ValidatorId = std::uint32_t;

/// Exact non-negative rational used for slashing fractions.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    bool in_unit_interval() const { return den != 0 && num > 0 && num <= den; }
    bool operator==(const Rational&) const = default;
};

/// floor(r * amount), computed without overflow. Throws on den == 0.
TokenAmount floor_mul(const Rational& r, TokenAmount amount);

std::string to_string(const Rational& r);
/// Parses "p/q" or a bare integer.
Rational parse_rational(const std::string& text);

/// Slot timing: commit [0, commit), delay [commit, commit + vdf),
/// open [commit + vdf, total).
struct SlotBudget {
    Tick commit = 0;
    Tick vdf = 0;
    Tick open = 0;
    Tick margin = 0;
    Tick total = 0;

    Tick commit_cutoff() const { return commit; }
    Tick open_start() const { return commit + vdf; }
    Tick open_cutoff() const { return total; }
};

struct ProtocolParams {
    std::uint32_t f = 1;
    std::uint32_t n = 4;
    std::uint32_t q_c = 3;
    std::uint32_t q_o = 3;
    std::uint32_t quota_l = 1;
    TokenAmount d_stake = 100;
    TokenAmount b_prod = 1000;
    Rational delta_user{1, 10};
    Rational delta_prod{1, 2};
    std::uint64_t vdf_delay_T = 64;
    /// 0 selects the default interval max(1, T / 16).
    std::uint64_t vdf_checkpoint_interval = 0;
    SlotBudget budget{10, 5, 10, 2, 27};
    std::uint32_t security_lambda = 128;
};

/// Structural checks: n = 3f + 1, 2f + 1 <= q_c, q_o <= n, quota_l >= 1,
/// both slashing fractions in (0, 1]. Empty result means valid.
std::vector<std::string> structural_errors(const ProtocolParams& p);

/// Public validator keys indexed by ValidatorId.
struct ValidatorSet {
    std::vector<VerificationKey> keys;

    std::size_t size() const { return keys.size(); }
    const VerificationKey* key(ValidatorId id) const {
        return id < keys.size() ? &keys[id] : nullptr;
    }
};

/// A validator's own receipt-signing identity.
struct ValidatorKey {
    ValidatorId id = 0;
    SigningKey signing_key;
};

}  // namespace mevace
