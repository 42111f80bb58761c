#pragma once

// Exact-integer stuffing and non-opening costs, and the incentive bounds
// that keep deviations unprofitable.
//
// All bounds are evaluated against the slashing the registry actually
// performs: slash amounts are floor(delta * current bond) and compound when
// the same identity is slashed repeatedly. The idealized u * delta * D figure
// is reported alongside for comparison.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mevace/params.hpp"

namespace mevace {

struct GainModel {
    /// Largest one-slot gain from reordering or omitting mandatory transactions.
    TokenAmount g_invalid = 0;
    /// Largest gain from withholding one producer-controlled opening.
    TokenAmount g_open = 0;
    /// Incremental gain from k extra admissible commitments; g_stuff(0) == 0,
    /// nondecreasing.
    std::function<TokenAmount(std::uint64_t)> g_stuff = [](std::uint64_t) -> TokenAmount {
        return 0;
    };
};

/// ceil(k / quota_l) * d_stake.
TokenAmount stuffing_cost(std::uint64_t k, std::uint32_t quota_l, TokenAmount d_stake);

/// Idealized lower bound u * delta * d_stake, rounded down.
TokenAmount non_opening_cost(std::uint64_t u, const Rational& delta, TokenAmount d_stake);

/// What the registry charges one identity with bond d_stake for u unopened
/// commitments in a slot: u compounding floor slashes.
TokenAmount realized_non_opening_cost(std::uint64_t u, const Rational& delta, TokenAmount d_stake);

struct IncentiveReport {
    bool invalid_bound_holds = false;
    bool non_opening_bound_holds = false;
    bool stuffing_bound_holds = false;
    std::uint64_t stuffing_checked_up_to = 0;
    /// Smallest k at which the stuffing bound fails.
    std::optional<std::uint64_t> stuffing_failure_k;

    // Slack (cost - gain); negative means the bound fails.
    std::int64_t invalid_margin = 0;
    std::int64_t non_opening_margin = 0;   // tightest over 1..quota_l withheld openings
    std::int64_t stuffing_min_margin = 0;  // tightest over k = 1..k_max

    bool all_hold() const {
        return invalid_bound_holds && non_opening_bound_holds && stuffing_bound_holds;
    }
};

/// Strict inequalities:
///   floor(delta_prod * b_prod)                          > g_invalid
///   realized_non_opening_cost(j, delta_user, d_stake)   > j * g_open   for j = 1..quota_l
///   stuffing_cost(k, quota_l, d_stake)                  > g_stuff(k)   for k = 1..k_max
/// Throws std::invalid_argument if k_max == 0.
IncentiveReport check_incentives(const ProtocolParams& params, const GainModel& gains,
                                 std::uint64_t k_max);

struct ParameterSuggestion {
    bool feasible = false;
    std::string reason;
    ProtocolParams params;
};

/// Smallest d_stake and b_prod (keeping the fractions and quota of `fixed`)
/// for which check_incentives passes.
ParameterSuggestion minimal_parameters(const GainModel& gains, const ProtocolParams& fixed,
                                       std::uint64_t k_max);

}  // namespace mevace
