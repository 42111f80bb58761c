#include "mevace/economics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mevace {

namespace {

std::int64_t clamp_margin(__int128 v) {
    constexpr __int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(std::clamp(v, lo, hi));
}

struct BoundEval {
    bool holds = true;
    std::int64_t margin = std::numeric_limits<std::int64_t>::max();
    std::optional<std::uint64_t> first_failure;
};

BoundEval eval_non_opening(const ProtocolParams& p, const GainModel& g) {
    BoundEval ev;
    for (std::uint64_t j = 1; j <= p.quota_l; ++j) {
        __int128 slack = static_cast<__int128>(realized_non_opening_cost(j, p.delta_user, p.d_stake)) -
                         static_cast<__int128>(j) * g.g_open;
        ev.margin = std::min(ev.margin, clamp_margin(slack));
        if (slack <= 0 && ev.holds) {
            ev.holds = false;
            ev.first_failure = j;
        }
    }
    return ev;
}

BoundEval eval_stuffing(const ProtocolParams& p, const GainModel& g, std::uint64_t k_max) {
    BoundEval ev;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        __int128 slack = static_cast<__int128>(stuffing_cost(k, p.quota_l, p.d_stake)) -
                         static_cast<__int128>(g.g_stuff(k));
        ev.margin = std::min(ev.margin, clamp_margin(slack));
        if (slack <= 0 && ev.holds) {
            ev.holds = false;
            ev.first_failure = k;
        }
    }
    return ev;
}

bool user_bond_sufficient(const ProtocolParams& p, const GainModel& g, std::uint64_t k_max) {
    return eval_non_opening(p, g).holds && eval_stuffing(p, g, k_max).holds;
}

}  // namespace

TokenAmount stuffing_cost(std::uint64_t k, std::uint32_t quota_l, TokenAmount d_stake) {
    if (quota_l == 0) throw std::invalid_argument("quota must be at least 1");
    std::uint64_t identities = k / quota_l + (k % quota_l != 0 ? 1 : 0);
    return identities * d_stake;
}

TokenAmount non_opening_cost(std::uint64_t u, const Rational& delta, TokenAmount d_stake) {
    if (delta.den == 0) throw std::invalid_argument("rational with zero denominator");
    unsigned __int128 prod = static_cast<unsigned __int128>(u) * delta.num * d_stake;
    return static_cast<TokenAmount>(prod / delta.den);
}

TokenAmount realized_non_opening_cost(std::uint64_t u, const Rational& delta, TokenAmount d_stake) {
    TokenAmount bond = d_stake;
    TokenAmount total = 0;
    for (std::uint64_t i = 0; i < u && bond > 0; ++i) {
        TokenAmount amount = floor_mul(delta, bond);
        bond -= amount;
        total += amount;
    }
    return total;
}

IncentiveReport check_incentives(const ProtocolParams& params, const GainModel& gains,
                                 std::uint64_t k_max) {
    if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");
    IncentiveReport rep;

    __int128 invalid_slack = static_cast<__int128>(floor_mul(params.delta_prod, params.b_prod)) -
                             static_cast<__int128>(gains.g_invalid);
    rep.invalid_margin = clamp_margin(invalid_slack);
    rep.invalid_bound_holds = invalid_slack > 0;

    BoundEval open = eval_non_opening(params, gains);
    rep.non_opening_bound_holds = open.holds;
    rep.non_opening_margin = open.margin;

    BoundEval stuff = eval_stuffing(params, gains, k_max);
    rep.stuffing_bound_holds = stuff.holds;
    rep.stuffing_min_margin = stuff.margin;
    rep.stuffing_failure_k = stuff.first_failure;
    rep.stuffing_checked_up_to = stuff.first_failure.value_or(k_max);
    return rep;
}

ParameterSuggestion minimal_parameters(const GainModel& gains, const ProtocolParams& fixed,
                                       std::uint64_t k_max) {
    ParameterSuggestion out;
    out.params = fixed;
    if (k_max == 0) {
        out.reason = "k_max must be at least 1";
        return out;
    }
    if (fixed.quota_l == 0) {
        out.reason = "quota_l must be at least 1";
        return out;
    }
    if (fixed.delta_prod.num == 0 || fixed.delta_prod.den == 0) {
        out.reason = "delta_prod is zero: no producer bond deters invalid blocks";
        return out;
    }
    if (fixed.delta_user.num == 0 || fixed.delta_user.den == 0) {
        out.reason = "delta_user is zero: no user bond deters selective non-opening";
        return out;
    }

    // floor(num * b / den) > g  <=>  b >= ceil((g + 1) * den / num)
    unsigned __int128 need = (static_cast<unsigned __int128>(gains.g_invalid) + 1) * fixed.delta_prod.den;
    unsigned __int128 b = (need + fixed.delta_prod.num - 1) / fixed.delta_prod.num;
    if (b > std::numeric_limits<TokenAmount>::max()) {
        out.reason = "required producer bond exceeds token range";
        return out;
    }
    out.params.b_prod = static_cast<TokenAmount>(b);

    // Both user-bond bounds are monotone in d_stake: bracket by doubling, then bisect.
    constexpr TokenAmount kCeiling = TokenAmount{1} << 62;
    auto ok = [&](TokenAmount d) {
        ProtocolParams p = fixed;
        p.d_stake = d;
        return user_bond_sufficient(p, gains, k_max);
    };
    TokenAmount hi = 1;
    while (!ok(hi)) {
        if (hi >= kCeiling) {
            out.reason = "no user bond below 2^62 satisfies the non-opening and stuffing bounds";
            return out;
        }
        hi *= 2;
    }
    TokenAmount lo = hi / 2;  // ok(lo) is false unless hi == 1
    if (hi == 1) lo = 0;
    while (hi - lo > 1) {
        TokenAmount mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    out.params.d_stake = hi;
    out.feasible = true;
    return out;
}

}  // namespace mevace
